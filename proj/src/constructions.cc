#include "duc/constructions.h"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

namespace duc {

namespace {

int mod(int64_t x, int n) {
    const int64_t r = x % n;
    return static_cast<int>(r < 0 ? r + n : r);
}

bool unit_mod(int64_t x, int n) { return std::gcd(static_cast<int64_t>(mod(x, n)), static_cast<int64_t>(n)) == 1; }

void require_n(int n) {
    if (n < 1) {
        throw std::invalid_argument("ring size must be positive");
    }
}

/// Embeds an operator on qubits (q, q+1) of four into a 16×16 matrix.
Matrix on_qubits(const Matrix &g, int q) {
    Matrix out = Matrix::Zero(16, 16);
    const int shift = 2 - q;  // bit position of the pair's low qubit
    const int mask = 3 << shift;
    for (int col = 0; col < 16; col++) {
        const int in_pair = (col & mask) >> shift;
        const int rest = col & ~mask;
        for (int out_pair = 0; out_pair < 4; out_pair++) {
            out(rest | (out_pair << shift), col) = g(out_pair, in_pair);
        }
    }
    return out;
}

}  // namespace

GraphStateParams GraphStateParams::reduced() const {
    require_n(n);
    return {n, mod(alpha1, n), mod(alpha2, n), mod(beta1, n), mod(beta2, n), mod(gamma1, n), mod(gamma2, n)};
}

RingLinearParams RingLinearParams::reduced() const {
    require_n(n);
    return {n, mod(alpha, n), mod(beta, n), mod(gamma, n), mod(delta, n)};
}

cplx root_of_unity(int n, int64_t k) {
    const double angle = 2 * std::numbers::pi * mod(k, n) / n;
    return {std::cos(angle), std::sin(angle)};
}

Gate n2_family(double j) {
    const cplx i(0, 1);
    Matrix u = Matrix::Zero(4, 4);
    u(0, 0) = u(3, 3) = std::exp(-i * j);
    u(1, 2) = u(2, 1) = -i * std::exp(i * j);
    return Gate(2, 2, u);
}

Gate dressed_swap(const Matrix &d) {
    const int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(d.rows()))));
    if (d.rows() != d.cols() || n * n != d.rows()) {
        throw std::invalid_argument("dressed_swap: D must be N²×N²");
    }
    for (Eigen::Index r = 0; r < d.rows(); r++) {
        for (Eigen::Index c = 0; c < d.cols(); c++) {
            if (r != c && d(r, c) != cplx(0)) {
                throw std::invalid_argument("dressed_swap: D is not diagonal");
            }
        }
        if (std::abs(std::abs(d(r, r)) - 1) > Tolerance{}.unitary) {
            throw std::invalid_argument("dressed_swap: D has a non-unimodular entry");
        }
    }
    return Gate(n, n, d * Gate::swap(n).matrix());
}

Gate direct_sum(const Gate &u1, const Gate &u2) {
    if (u1.m() != u2.m()) {
        throw std::invalid_argument("direct_sum: second-space dimensions differ");
    }
    const int n1 = u1.n();
    const int n2 = u2.n();
    const int m = u1.m();
    Gate out(n1 + n2, m);
    for (int b = 0; b < m; b++) {
        for (int c = 0; c < m; c++) {
            for (int a = 0; a < n1; a++) {
                for (int d = 0; d < n1; d++) {
                    out.set(a, b, c, d, u1.at(a, b, c, d));
                }
            }
            for (int a = 0; a < n2; a++) {
                for (int d = 0; d < n2; d++) {
                    out.set(n1 + a, b, c, n1 + d, u2.at(a, b, c, d));
                }
            }
        }
    }
    return out;
}

Gate controlled_unitary(const std::vector<Matrix> &us) {
    const int n = static_cast<int>(us.size());
    if (n == 0) {
        throw std::invalid_argument("controlled_unitary: need N unitaries");
    }
    Gate out(n, n);
    for (int a = 0; a < n; a++) {
        if (us[a].rows() != n || us[a].cols() != n || !is_unitary(us[a])) {
            throw std::invalid_argument("controlled_unitary: each U^(j) must be an N×N unitary");
        }
        for (int b = 0; b < n; b++) {
            for (int c = 0; c < n; c++) {
                out.set(a, b, c, a, us[a](c, b));
            }
        }
    }
    return out;
}

Gate diagonal_compose(const Gate &u, const Gate &v) {
    if (u.m() != v.m()) {
        throw std::invalid_argument("diagonal_compose: contracted dimension mismatch");
    }
    const int n1 = u.n();
    const int n2 = v.n();
    const int m = u.m();
    Gate z(n1 * n2, m);
    for (int a = 0; a < n1; a++)
        for (int b = 0; b < n2; b++)
            for (int alpha = 0; alpha < m; alpha++)
                for (int beta = 0; beta < m; beta++)
                    for (int c = 0; c < n1; c++)
                        for (int d = 0; d < n2; d++) {
                            cplx acc = 0;
                            for (int gamma = 0; gamma < m; gamma++) {
                                acc += u.at(a, gamma, beta, c) * v.at(b, alpha, gamma, d);
                            }
                            z.set(a * n2 + b, alpha, beta, c * n2 + d, acc);
                        }
    return z;
}

Gate compose_n4(const Gate &x, const Gate &y, const Gate &v, const Gate &z, const Gate &c) {
    for (const Gate *g : {&x, &y, &v, &z}) {
        if (g->n() != 2 || g->m() != 2 || !is_dual_unitary(*g)) {
            throw std::invalid_argument("compose_n4: X, Y, V, Z must be qubit DU gates");
        }
    }
    if (c.n() != 2 || c.m() != 2 || !is_unitary(c)) {
        throw std::invalid_argument("compose_n4: C must be a qubit unitary");
    }
    Matrix u = on_qubits(z.matrix(), 1) * on_qubits(y.matrix(), 2) * on_qubits(c.matrix(), 1) *
               on_qubits(v.matrix(), 0) * on_qubits(x.matrix(), 1);
    return Gate(4, 4, u);
}

PredicateFlags ring_linear_flags(const RingLinearParams &p) {
    const auto r = p.reduced();
    const int n = r.n;
    PredicateFlags f;
    f.invertible = unit_mod(static_cast<int64_t>(r.alpha) * r.delta - static_cast<int64_t>(r.beta) * r.gamma, n);
    f.dual_unitary = f.invertible && unit_mod(r.beta, n) && unit_mod(r.gamma, n);
    f.perfect = f.dual_unitary && unit_mod(r.alpha, n) && unit_mod(r.delta, n);
    return f;
}

PermMap ring_linear(const RingLinearParams &p) {
    const auto r = p.reduced();
    if (!ring_linear_flags(r).invertible) {
        throw std::invalid_argument("ring_linear: determinant not invertible, not a permutation");
    }
    return PermMap::from_function(r.n, [&](int a, int b) {
        return std::pair{mod(static_cast<int64_t>(r.alpha) * a + static_cast<int64_t>(r.beta) * b, r.n),
                         mod(static_cast<int64_t>(r.gamma) * a + static_cast<int64_t>(r.delta) * b, r.n)};
    });
}

PredicateFlags graph_state_flags(const GraphStateParams &p) {
    const auto r = p.reduced();
    const int n = r.n;
    const int64_t gg = static_cast<int64_t>(r.gamma1) * r.gamma2;
    PredicateFlags f;
    f.invertible = unit_mod(static_cast<int64_t>(r.beta1) * r.beta2 - gg, n);
    f.dual_unitary = f.invertible && unit_mod(static_cast<int64_t>(r.alpha1) * r.alpha2 - gg, n);
    f.perfect = f.dual_unitary &&
                unit_mod(static_cast<int64_t>(r.alpha1) * r.alpha2 - static_cast<int64_t>(r.beta1) * r.beta2, n);
    return f;
}

Gate graph_state_gate(const GraphStateParams &p) {
    const auto r = p.reduced();
    const int n = r.n;
    Gate g(n, n);
    for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++)
            for (int k = 0; k < n; k++)
                for (int l = 0; l < n; l++) {
                    const int64_t f = static_cast<int64_t>(r.alpha1) * i * j + static_cast<int64_t>(r.alpha2) * k * l +
                                      static_cast<int64_t>(r.beta1) * i * k + static_cast<int64_t>(r.beta2) * j * l +
                                      static_cast<int64_t>(r.gamma1) * i * l + static_cast<int64_t>(r.gamma2) * j * k;
                    g.set(k, l, i, j, root_of_unity(n, f) / static_cast<double>(n));
                }
    return g;
}

Matrix dft(int n) {
    Matrix f(n, n);
    const double s = 1 / std::sqrt(static_cast<double>(n));
    for (int j = 0; j < n; j++) {
        for (int k = 0; k < n; k++) {
            f(j, k) = root_of_unity(n, -static_cast<int64_t>(j) * k) * s;
        }
    }
    return f;
}

PermMap fourier_reduce(const GraphStateParams &p, const Tolerance &tol) {
    const auto r = p.reduced();
    if (r.alpha1 != 0 || r.alpha2 != 0) {
        throw std::invalid_argument("fourier_reduce: requires alpha1 = alpha2 = 0");
    }
    const int n = r.n;
    std::vector<int> c(n * n);
    std::vector<int> d(n * n);
    for (int k = 0; k < n; k++) {
        for (int l = 0; l < n; l++) {
            c[k * n + l] = mod(static_cast<int64_t>(r.beta1) * k + static_cast<int64_t>(r.gamma1) * l, n);
            d[k * n + l] = mod(static_cast<int64_t>(r.gamma2) * k + static_cast<int64_t>(r.beta2) * l, n);
        }
    }
    // Not necessarily bijective; the squares are well defined either way.
    PermMap m(n, std::move(c), std::move(d));
    const Matrix f = dft(n);
    const Matrix tilde = Eigen::kroneckerProduct(f, f).eval() * graph_state_gate(r).matrix();
    Matrix target = Matrix::Zero(n * n, n * n);
    for (int ab = 0; ab < n * n; ab++) {
        target(m.apply_packed(ab), ab) = 1;
    }
    Eigen::Index row = 0;
    tilde.col(0).cwiseAbs().maxCoeff(&row);
    const cplx phase = tilde(row, 0) / std::abs(tilde(row, 0));
    if ((tilde - phase * target).cwiseAbs().maxCoeff() > tol.unitary) {
        throw std::logic_error("fourier_reduce: (F⊗F)U is not the expected permutation gate");
    }
    return m;
}

Gate phase_dress_perm(const PermMap &m, const std::vector<double> &phases) {
    const int n = m.n();
    if (static_cast<int>(phases.size()) != n * n) {
        throw std::invalid_argument("phase_dress_perm: need N² phases");
    }
    Gate g(n, n);
    for (int a = 0; a < n; a++) {
        for (int b = 0; b < n; b++) {
            const int c = m.c(a, b);
            const int d = m.d(a, b);
            g.set(a, b, c, d, std::polar(1.0, phases[c * n + d]));
        }
    }
    return g;
}

}  // namespace duc
