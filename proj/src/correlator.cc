#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

#include "duc/ergodicity.h"
#include "tensor_ops.h"

namespace duc {

using detail::apply_local;
using detail::ipow;
using detail::layer_pairs;

namespace {

void check_args(const Gate &g, int L, int t, int x, int y, const CorrelatorOptions &opts) {
    if (!g.homogeneous() || !is_unitary(g)) {
        throw std::invalid_argument("correlator: requires a homogeneous unitary gate");
    }
    if (L < 2 || L % 2 != 0 || t < 0 || x < 0 || x >= L || y < 0 || y >= L) {
        throw std::invalid_argument("correlator: bad volume, time or position");
    }
    const double states = std::pow(static_cast<double>(g.n()), L);
    if (states > static_cast<double>(opts.max_states)) {
        throw std::invalid_argument("correlator: N^L exceeds the state cap");
    }
}

/// Operator on an ordered list of sites, normalized so that the full-chain
/// average of the operator (Tr/N^L) equals Tr(op)/N^{|sites|}.
struct LocalOp {
    std::vector<int> sites;
    Matrix op;

    int position(int site) const {
        auto it = std::find(sites.begin(), sites.end(), site);
        return it == sites.end() ? -1 : static_cast<int>(it - sites.begin());
    }

    void extend(int site, int n) {
        sites.push_back(site);
        op = Eigen::kroneckerProduct(op, Matrix::Identity(n, n)).eval();
    }

    /// Normalized partial trace of one site.
    void trace_out(int site, int n) {
        const int pos = position(site);
        const int k = static_cast<int>(sites.size());
        const int64_t dim = ipow(n, k - 1);
        const int64_t lo = ipow(n, k - 1 - pos);
        Matrix out = Matrix::Zero(dim, dim);
        for (int64_t a = 0; a < dim; a++) {
            for (int64_t b = 0; b < dim; b++) {
                cplx acc = 0;
                for (int z = 0; z < n; z++) {
                    const int64_t ra = (a / lo) * lo * n + z * lo + a % lo;
                    const int64_t rb = (b / lo) * lo * n + z * lo + b % lo;
                    acc += op(ra, rb);
                }
                out(a, b) = acc / static_cast<double>(n);
            }
        }
        sites.erase(sites.begin() + pos);
        op = std::move(out);
    }

    void apply_gate(const Gate &g, int p, int q) {
        const int n = g.n();
        const int k = static_cast<int>(sites.size());
        const std::vector<int> at{position(p), position(q)};
        apply_local(op, n, k, at, g.matrix());
        Matrix adj = op.adjoint();
        apply_local(adj, n, k, at, g.matrix());
        op = adj.adjoint();
    }
};

/// Backward light cones of (x, t): cones[l] is the set of sites that can reach x
/// through layers l+1 … t.
std::vector<std::set<int>> backward_cones(int L, int t, int x) {
    std::vector<std::set<int>> cones(t + 1);
    cones[t] = {x};
    for (int l = t; l >= 1; l--) {
        cones[l - 1] = cones[l];
        for (auto [p, q] : layer_pairs(L, l)) {
            if (cones[l].count(p) || cones[l].count(q)) {
                cones[l - 1].insert(p);
                cones[l - 1].insert(q);
            }
        }
    }
    return cones;
}

/// Schrödinger-evolved o2(y) restricted to the causal region of (x, t), reduced
/// to at most the site x.
LocalOp evolve_reduced(const Gate &g, int L, int t, const Matrix &o2, int x, int y) {
    const int n = g.n();
    const auto cones = backward_cones(L, t, x);
    LocalOp b{{y}, o2};
    if (!cones[0].count(y)) b.trace_out(y, n);
    for (int l = 1; l <= t; l++) {
        for (auto [p, q] : layer_pairs(L, l)) {
            const bool live = cones[l].count(p) || cones[l].count(q);
            const bool touched = b.position(p) >= 0 || b.position(q) >= 0;
            if (!live || !touched) continue;
            if (b.position(p) < 0) b.extend(p, n);
            if (b.position(q) < 0) b.extend(q, n);
            b.apply_gate(g, p, q);
        }
        for (int s : std::vector<int>(b.sites)) {
            if (!cones[l].count(s)) b.trace_out(s, n);
        }
    }
    return b;
}

cplx contract(const LocalOp &b, const Matrix &o1, int n) {
    if (b.sites.empty()) {
        return o1.trace() / static_cast<double>(n) * b.op(0, 0);
    }
    return (o1 * b.op).trace() / static_cast<double>(n);
}

}  // namespace

cplx correlator(const Gate &g, int L, int t, const Matrix &o1, const Matrix &o2, int x, int y,
                const CorrelatorOptions &opts) {
    check_args(g, L, t, x, y, opts);
    return contract(evolve_reduced(g, L, t, o2, x, y), o1, g.n());
}

std::vector<std::vector<cplx>> correlator_row(const Gate &g, int L, int t, const std::vector<Matrix> &ops,
                                              const Matrix &o2, int y, const CorrelatorOptions &opts) {
    check_args(g, L, t, 0, y, opts);
    std::vector<std::vector<cplx>> out(L, std::vector<cplx>(ops.size()));
#pragma omp parallel for schedule(dynamic) if (opts.exec == Exec::parallel)
    for (int x = 0; x < L; x++) {
        const LocalOp b = evolve_reduced(g, L, t, o2, x, y);
        for (size_t k = 0; k < ops.size(); k++) out[x][k] = contract(b, ops[k], g.n());
    }
    return out;
}

cplx correlator_dense(const Gate &g, int L, int t, const Matrix &o1, const Matrix &o2, int x, int y) {
    const int n = g.n();
    const int64_t dim = ipow(n, L);
    auto evolve = [&](Matrix &m) {
        for (int l = 1; l <= t; l++)
            for (auto [p, q] : layer_pairs(L, l)) apply_local(m, n, L, {p, q}, g.matrix());
    };
    Matrix b = Matrix::Identity(dim, dim);
    apply_local(b, n, L, {y}, o2);
    evolve(b);  // W·B
    Matrix bt = b.adjoint();
    evolve(bt);  // W·B†·W†
    Matrix evolved = bt.adjoint();
    Matrix a = Matrix::Identity(dim, dim);
    apply_local(a, n, L, {x}, o1);
    return (a * evolved).trace() / static_cast<double>(dim);
}

}  // namespace duc
