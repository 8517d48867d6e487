#include "duc/linalg.h"

#include <algorithm>
#include <limits>
#include <stdexcept>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace duc {

namespace {

EigenResult run_zgeev(const Matrix &a, bool want_vectors) {
    if (a.rows() != a.cols()) {
        throw std::invalid_argument("eigen: matrix must be square");
    }
    const lapack_int n = static_cast<lapack_int>(a.rows());
    EigenResult out;
    if (n == 0) {
        return out;
    }
    Matrix work = a;
    std::vector<cplx> w(n);
    Matrix vr = want_vectors ? Matrix(n, n) : Matrix(1, 1);
    cplx dummy;
    const lapack_int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', want_vectors ? 'V' : 'N', n, work.data(), n,
                                          w.data(), &dummy, 1, vr.data(), want_vectors ? n : 1);
    if (info != 0) {
        throw std::runtime_error("zgeev failed with info=" + std::to_string(info));
    }
    out.values = std::move(w);
    if (want_vectors) {
        out.vectors = std::move(vr);
    }
    return out;
}

}  // namespace

std::vector<cplx> eigenvalues(const Matrix &a) { return run_zgeev(a, false).values; }

EigenResult eigen_decomposition(const Matrix &a) { return run_zgeev(a, true); }

double multiset_distance(std::vector<cplx> a, std::vector<cplx> b) {
    if (a.size() != b.size()) {
        return std::numeric_limits<double>::infinity();
    }
    double worst = 0;
    std::vector<char> used(b.size(), 0);
    auto by_modulus = [](cplx x, cplx y) { return std::abs(x) > std::abs(y); };
    std::sort(a.begin(), a.end(), by_modulus);
    for (const cplx &x : a) {
        size_t best = b.size();
        double best_d = std::numeric_limits<double>::infinity();
        for (size_t k = 0; k < b.size(); k++) {
            if (!used[k] && std::abs(x - b[k]) < best_d) {
                best_d = std::abs(x - b[k]);
                best = k;
            }
        }
        used[best] = 1;
        worst = std::max(worst, best_d);
    }
    return worst;
}

}  // namespace duc
