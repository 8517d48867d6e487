#include "duc/gate.h"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>
#include <unsupported/Eigen/KroneckerProduct>

namespace duc {

Gate::Gate(int n, int m) : n_(n), m_(m), u_(Matrix::Zero(n * m, n * m)) {
    if (n < 1 || m < 1) {
        throw std::invalid_argument("gate dimensions must be positive");
    }
}

Gate::Gate(int n, int m, Matrix entries) : n_(n), m_(m), u_(std::move(entries)) {
    if (n < 1 || m < 1) {
        throw std::invalid_argument("gate dimensions must be positive");
    }
    if (u_.rows() != n * m || u_.cols() != n * m) {
        throw std::invalid_argument("gate matrix must be (N*M)x(N*M)");
    }
}

Gate Gate::swap(int n, int m) {
    Gate g(n, m);
    for (int a = 0; a < n; a++) {
        for (int b = 0; b < m; b++) {
            g.set(a, b, b, a, 1.0);
        }
    }
    return g;
}

bool Gate::operator==(const Gate &other) const {
    return n_ == other.n_ && m_ == other.m_ && u_ == other.u_;
}

Gate permute_legs(const Gate &g, const LegPermutation &legs) {
    const std::array<int, 4> dims{g.n(), g.m(), g.m(), g.n()};
    std::array<int, 4> nd{};
    for (int i = 0; i < 4; i++) {
        nd[i] = dims[legs[i]];
    }
    if (nd[2] != nd[1] || nd[3] != nd[0]) {
        throw std::invalid_argument("leg permutation incompatible with gate type");
    }
    Gate out(nd[0], nd[1]);
    std::array<int, 4> q{};
    for (q[0] = 0; q[0] < g.n(); q[0]++) {
        for (q[1] = 0; q[1] < g.m(); q[1]++) {
            for (q[2] = 0; q[2] < g.m(); q[2]++) {
                for (q[3] = 0; q[3] < g.n(); q[3]++) {
                    out.set(q[legs[0]], q[legs[1]], q[legs[2]], q[legs[3]], g.at(q[0], q[1], q[2], q[3]));
                }
            }
        }
    }
    return out;
}

namespace {

LegPermutation inverse(const LegPermutation &p) {
    LegPermutation inv{};
    for (int i = 0; i < 4; i++) {
        inv[p[i]] = i;
    }
    return inv;
}

constexpr LegPermutation kReshuffleR{2, 0, 3, 1};
constexpr LegPermutation kReshuffleD{0, 3, 1, 2};

}  // namespace

Gate reshuffle_r(const Gate &g) { return permute_legs(g, kReshuffleR); }
Gate reshuffle_r_inverse(const Gate &g) { return permute_legs(g, inverse(kReshuffleR)); }

Gate reshuffle_d(const Gate &g) {
    if (!g.homogeneous()) {
        throw std::invalid_argument("reshuffle_d requires a homogeneous gate");
    }
    return permute_legs(g, kReshuffleD);
}

Gate reshuffle_d_inverse(const Gate &g) {
    if (!g.homogeneous()) {
        throw std::invalid_argument("reshuffle_d requires a homogeneous gate");
    }
    return permute_legs(g, inverse(kReshuffleD));
}

bool is_unitary(const Matrix &u, const Tolerance &tol) {
    if (u.rows() != u.cols()) {
        return false;
    }
    Matrix prod = u.adjoint() * u;
    prod -= Matrix::Identity(u.rows(), u.cols());
    return prod.cwiseAbs().maxCoeff() <= tol.unitary;
}

bool is_unitary(const Gate &g, const Tolerance &tol) { return is_unitary(g.matrix(), tol); }

bool is_dual_unitary(const Gate &g, const Tolerance &tol) {
    return is_unitary(g, tol) && is_unitary(reshuffle_r(g), tol);
}

bool is_perfect(const Gate &g, const Tolerance &tol) {
    return g.homogeneous() && is_dual_unitary(g, tol) && is_unitary(reshuffle_d(g), tol);
}

Gate dress(const Gate &g, const Matrix &a, const Matrix &b, const Matrix &c, const Matrix &d) {
    const int n = g.n();
    const int m = g.m();
    if (a.rows() != m || a.cols() != m || b.rows() != n || b.cols() != n || c.rows() != n || c.cols() != n ||
        d.rows() != m || d.cols() != m) {
        throw std::invalid_argument("dressing dimensions do not match the gate type");
    }
    Matrix left = Eigen::kroneckerProduct(a, b);
    Matrix right = Eigen::kroneckerProduct(c, d);
    return Gate(n, m, left * g.matrix() * right);
}

D4Element D4Element::after(const D4Element &other) const {
    D4Element out;
    for (int i = 0; i < 4; i++) {
        out.legs[i] = other.legs[legs[i]];
    }
    return out;
}

std::array<D4Element, 8> d4_group() {
    std::array<D4Element, 8> group{};
    int count = 0;
    group[count++] = D4Element::identity();
    const std::array<D4Element, 2> gens{D4Element::space_reflect(), D4Element::reshuffle()};
    for (int i = 0; i < count; i++) {
        for (const auto &gen : gens) {
            D4Element e = gen.after(group[i]);
            bool seen = false;
            for (int k = 0; k < count; k++) {
                seen = seen || group[k] == e;
            }
            if (!seen) {
                if (count == 8) {
                    throw std::logic_error("D4 closure exceeded 8 elements");
                }
                group[count++] = e;
            }
        }
    }
    if (count != 8) {
        throw std::logic_error("D4 closure did not reach 8 elements");
    }
    return group;
}

Gate d4_transform(const Gate &g, const D4Element &e) {
    if (!g.homogeneous()) {
        throw std::invalid_argument("D4 transforms require a homogeneous gate");
    }
    return permute_legs(g, e.legs);
}

Matrix reduced_density(const Gate &g, PartyPair pair) {
    if (!g.homogeneous()) {
        throw std::invalid_argument("reduced densities require a homogeneous gate");
    }
    const int n = g.n();
    int keep0 = 0;
    int keep1 = 1;
    switch (pair) {
        case PartyPair::p12: keep0 = 0, keep1 = 1; break;
        case PartyPair::p34: keep0 = 2, keep1 = 3; break;
        case PartyPair::p13: keep0 = 0, keep1 = 2; break;
        case PartyPair::p24: keep0 = 1, keep1 = 3; break;
        case PartyPair::p14: keep0 = 0, keep1 = 3; break;
        case PartyPair::p23: keep0 = 1, keep1 = 2; break;
    }
    int traced0 = -1;
    int traced1 = -1;
    for (int k = 0; k < 4; k++) {
        if (k != keep0 && k != keep1) {
            (traced0 < 0 ? traced0 : traced1) = k;
        }
    }
    const double norm = 1.0 / n;
    Matrix rho = Matrix::Zero(n * n, n * n);
    std::array<int, 4> q{};
    std::array<int, 4> r{};
    for (int x0 = 0; x0 < n; x0++) {
        for (int x1 = 0; x1 < n; x1++) {
            for (int y0 = 0; y0 < n; y0++) {
                for (int y1 = 0; y1 < n; y1++) {
                    cplx acc = 0;
                    for (int t0 = 0; t0 < n; t0++) {
                        for (int t1 = 0; t1 < n; t1++) {
                            q[keep0] = x0, q[keep1] = x1, q[traced0] = t0, q[traced1] = t1;
                            r[keep0] = y0, r[keep1] = y1, r[traced0] = t0, r[traced1] = t1;
                            acc += g.at(q[0], q[1], q[2], q[3]) * std::conj(g.at(r[0], r[1], r[2], r[3]));
                        }
                    }
                    rho(x0 * n + x1, y0 * n + y1) = acc * norm * norm;
                }
            }
        }
    }
    return rho;
}

DiagonalEntanglement diagonal_entanglement(const Gate &g) {
    Matrix rho = reduced_density(g, PartyPair::p14);
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
    double s = 0;
    for (double p : es.eigenvalues()) {
        if (p > 1e-14) {
            s -= p * std::log(p);
        }
    }
    return {std::max(s, 0.0), 2 * std::log(static_cast<double>(g.n()))};
}

bool is_permutation_matrix(const Matrix &u) {
    if (u.rows() != u.cols()) {
        return false;
    }
    for (Eigen::Index col = 0; col < u.cols(); col++) {
        int ones = 0;
        for (Eigen::Index row = 0; row < u.rows(); row++) {
            const cplx v = u(row, col);
            if (v == cplx(1, 0)) {
                ones++;
            } else if (v != cplx(0, 0)) {
                return false;
            }
        }
        if (ones != 1) {
            return false;
        }
    }
    return is_unitary(u, Tolerance{});
}

void to_json(nlohmann::json &j, const Gate &g) {
    const auto &u = g.matrix();
    nlohmann::json re = nlohmann::json::array();
    nlohmann::json im = nlohmann::json::array();
    for (Eigen::Index r = 0; r < u.rows(); r++) {
        nlohmann::json rr = nlohmann::json::array();
        nlohmann::json ri = nlohmann::json::array();
        for (Eigen::Index c = 0; c < u.cols(); c++) {
            rr.push_back(u(r, c).real());
            ri.push_back(u(r, c).imag());
        }
        re.push_back(std::move(rr));
        im.push_back(std::move(ri));
    }
    j = nlohmann::json{{"n", g.n()}, {"m", g.m()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

Gate gate_from_json(const nlohmann::json &j) {
    const int n = j.at("n").get<int>();
    const int m = j.value("m", n);
    const auto &re = j.at("re");
    const auto &im = j.contains("im") ? j.at("im") : nlohmann::json();
    const int dim = n * m;
    if (!re.is_array() || static_cast<int>(re.size()) != dim) {
        throw std::invalid_argument("gate json: 're' must have N*M rows");
    }
    Matrix u(dim, dim);
    for (int r = 0; r < dim; r++) {
        if (static_cast<int>(re[r].size()) != dim || (!im.is_null() && static_cast<int>(im[r].size()) != dim)) {
            throw std::invalid_argument("gate json: rows must have N*M entries");
        }
        for (int c = 0; c < dim; c++) {
            const double x = re[r][c].get<double>();
            const double y = im.is_null() ? 0.0 : im[r][c].get<double>();
            u(r, c) = cplx(x, y);
        }
    }
    return Gate(n, m, std::move(u));
}

}  // namespace duc
