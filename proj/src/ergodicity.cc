#include "duc/ergodicity.h"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "duc/kernels.h"
#include "duc/linalg.h"

namespace duc {

namespace {

int64_t ipow(int64_t b, int e) {
    int64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

Gate oriented(const Gate &g, Direction dir) {
    return dir == Direction::right ? g : d4_transform(g, D4Element::space_reflect());
}

PermMap oriented(const PermMap &m, Direction dir) { return dir == Direction::right ? m : space_reflect(m); }

}  // namespace

Matrix channel_m(const Gate &g, ChannelSign sign) {
    if (!g.homogeneous() || !is_unitary(g)) {
        throw std::invalid_argument("channel_m: requires a homogeneous unitary gate");
    }
    const int n = g.n();
    Matrix s = Matrix::Zero(n * n, n * n);
    for (int a = 0; a < n; a++)
        for (int b = 0; b < n; b++)
            for (int c = 0; c < n; c++)
                for (int d = 0; d < n; d++) {
                    const cplx u = std::conj(g.at(a, b, c, d));
                    if (u == cplx(0)) continue;
                    if (sign == ChannelSign::plus) {
                        // M_+(o)[b,b'] = Σ conj U^{cd}_{ab} o[c,c'] U^{c'd}_{ab'} / N
                        for (int b2 = 0; b2 < n; b2++)
                            for (int c2 = 0; c2 < n; c2++) s(b * n + b2, c * n + c2) += u * g.at(a, b2, c2, d);
                    } else {
                        for (int a2 = 0; a2 < n; a2++)
                            for (int d2 = 0; d2 < n; d2++) s(a * n + a2, d * n + d2) += u * g.at(a2, b, c, d2);
                    }
                }
    return s / static_cast<double>(n);
}

TransferMatrix transfer_matrix(const Gate &g, int alpha, Direction dir, const TransferOptions &opts) {
    if (!g.homogeneous()) {
        throw std::invalid_argument("transfer_matrix: requires a homogeneous gate");
    }
    if (alpha < 1) {
        throw std::invalid_argument("transfer_matrix: alpha must be at least 1");
    }
    const int n = g.n();
    const int64_t dim = ipow(n, 2 * alpha);
    if (dim > opts.max_dim) {
        throw std::invalid_argument("transfer_matrix: dimension " + std::to_string(dim) + " exceeds cap " +
                                    std::to_string(opts.max_dim));
    }
    const Gate u = oriented(g, dir);
    const Matrix p = Gate::swap(n).matrix();
    const Matrix v = p * u.matrix().adjoint();
    const Matrix vp = p * reshuffle_r(u).matrix();
    TransferMatrix out;
    out.alpha = alpha;
    out.direction = dir;
    out.matrix = opts.exec == Exec::parallel ? kernels::transfer_dense_omp(v, vp, n, alpha)
                                             : kernels::transfer_dense_serial(v, vp, n, alpha);
    return out;
}

RationalPhase rational_phase(cplx lambda, int64_t max_q) {
    double theta = std::arg(lambda) / (2 * std::numbers::pi);
    if (theta < 0) theta += 1;
    RationalPhase best{0, 1};
    double best_err = std::min(theta, 1 - theta);
    for (int64_t q = 2; q <= max_q; q++) {
        const int64_t p = std::llround(theta * q);
        const double err = std::abs(theta - static_cast<double>(p) / q);
        if (err < best_err - 1e-15) {
            best_err = err;
            best = {p % q, q};
        }
    }
    if (best.p == 0) best.q = 1;
    const int64_t g = std::gcd(best.p, best.q);
    if (g > 1) best = {best.p / g, best.q / g};
    return best;
}

SpectrumReport spectrum(const Matrix &m, const Tolerance &tol) {
    SpectrumReport rep;
    rep.method = "dense_zgeev";
    rep.eigenvalues = eigenvalues(m);
    for (const cplx &l : rep.eigenvalues) {
        if (std::abs(std::abs(l) - 1) <= tol.eigen) {
            rep.unimodular_count++;
            rep.unimodular_phases.push_back(rational_phase(l, 2 * m.rows()));
        }
    }
    return rep;
}

namespace {

constexpr int64_t kMaxCertifiedBlock = 256;

// Rows of A^k coincide for k >= block size exactly when every eigenvalue other
// than the Perron one vanishes.
bool block_is_rank_one_eventually(const kernels::TransferGraph &g, const std::vector<int64_t> &comp, int64_t c,
                                  int64_t size) {
    using boost::multiprecision::cpp_int;
    if (size > kMaxCertifiedBlock) return false;
    std::vector<int64_t> index(g.nodes, -1), members;
    for (int64_t s = 0; s < g.nodes; s++) {
        if (comp[s] == c) {
            index[s] = static_cast<int64_t>(members.size());
            members.push_back(s);
        }
    }
    const size_t k = members.size();
    std::vector<cpp_int> a(k * k, 0);
    for (size_t i = 0; i < k; i++) {
        const int64_t s = members[i];
        for (int64_t e = g.offsets[s]; e < g.offsets[s + 1]; e++) a[i * k + index[g.targets[e]]] += 1;
    }
    for (size_t power = 1; power < k; power *= 2) {
        std::vector<cpp_int> sq(k * k, 0);
        for (size_t i = 0; i < k; i++)
            for (size_t l = 0; l < k; l++) {
                if (a[i * k + l] == 0) continue;
                for (size_t j = 0; j < k; j++) sq[i * k + j] += a[i * k + l] * a[l * k + j];
            }
        a.swap(sq);
    }
    for (size_t i = 1; i < k; i++)
        for (size_t j = 0; j < k; j++)
            if (a[i * k + j] != a[j]) return false;
    return true;
}

}  // namespace

ExactSpectrumSummary exact_spectrum_summary(const PermMap &m, int alpha, Direction dir) {
    const auto flags = check_flags(m);
    if (!flags.dual_unitary) {
        throw std::invalid_argument("unimodular_count_exact: map must be dual unitary");
    }
    const PermMap u = oriented(m, dir);
    const int n = u.n();
    // V = P U†: (c,d) ↦ (b,a); V' = P U^R: (c,a) ↦ (b,d).
    std::vector<int> v(n * n), vp(n * n);
    for (int a = 0; a < n; a++) {
        for (int b = 0; b < n; b++) {
            const int c = u.c(a, b);
            const int d = u.d(a, b);
            v[c * n + d] = b * n + a;
            vp[c * n + a] = b * n + d;
        }
    }
    const auto graph = kernels::transfer_graph_omp(v, vp, n, alpha);
    int64_t ncomp = 0;
    const auto comp = kernels::strongly_connected_components(graph, ncomp);
    // A component contributes its period when no weight leaks out of it.
    std::vector<int64_t> size(ncomp, 0), inner_edges(ncomp, 0);
    std::vector<char> closed(ncomp, 1);
    for (int64_t s = 0; s < graph.nodes; s++) {
        size[comp[s]]++;
        int64_t inside = 0;
        for (int64_t e = graph.offsets[s]; e < graph.offsets[s + 1]; e++) {
            inside += comp[graph.targets[e]] == comp[s];
        }
        inner_edges[comp[s]] += inside;
        if (inside != n) closed[comp[s]] = 0;
    }
    std::vector<int64_t> level(graph.nodes, -1), period(ncomp, 0);
    std::vector<int64_t> queue;
    for (int64_t s = 0; s < graph.nodes; s++) {
        const int64_t c = comp[s];
        if (!closed[c] || inner_edges[c] == 0 || level[s] >= 0) continue;
        queue.assign(1, s);
        level[s] = 0;
        for (size_t qi = 0; qi < queue.size(); qi++) {
            const int64_t x = queue[qi];
            for (int64_t e = graph.offsets[x]; e < graph.offsets[x + 1]; e++) {
                const int64_t y = graph.targets[e];
                if (comp[y] != c) continue;
                if (level[y] < 0) {
                    level[y] = level[x] + 1;
                    queue.push_back(y);
                }
                period[c] = std::gcd(period[c], std::abs(level[x] + 1 - level[y]));
            }
        }
    }
    ExactSpectrumSummary out;
    for (int64_t c = 0; c < ncomp; c++) {
        if (inner_edges[c] == 0) continue;
        out.cyclic_components++;
        if (closed[c]) {
            out.unimodular_count += period[c];
        }
    }
    if (out.cyclic_components == 1 && out.unimodular_count == 1) {
        for (int64_t c = 0; c < ncomp; c++) {
            if (inner_edges[c] > 0) out.trivial = closed[c] && block_is_rank_one_eventually(graph, comp, c, size[c]);
        }
    }
    return out;
}

int64_t unimodular_count_exact(const PermMap &m, int alpha, Direction dir) {
    return exact_spectrum_summary(m, alpha, dir).unimodular_count;
}

GliderCount glider_count(const Gate &g, int alpha, const GliderOptions &opts) {
    GliderCount out;
    out.alpha = alpha;
    if (opts.allow_exact && g.homogeneous() && is_permutation_matrix(g.matrix())) {
        const PermMap m = PermMap::from_gate(g);
        if (check_flags(m).dual_unitary) {
            out.right = unimodular_count_exact(m, alpha, Direction::right);
            out.left = unimodular_count_exact(m, alpha, Direction::left);
            out.total = out.right + out.left - 2;
            out.method = "exact_scc";
            return out;
        }
    }
    out.right = spectrum(transfer_matrix(g, alpha, Direction::right, opts.transfer).matrix, opts.tol).unimodular_count;
    out.left = spectrum(transfer_matrix(g, alpha, Direction::left, opts.transfer).matrix, opts.tol).unimodular_count;
    out.total = out.right + out.left - 2;
    out.method = "dense_zgeev";
    return out;
}

std::vector<Matrix> traceless_basis(int n) {
    std::vector<Matrix> out;
    for (int i = 0; i < n; i++) {
        for (int j = 0; j < n; j++) {
            if (i == j) continue;
            Matrix e = Matrix::Zero(n, n);
            e(i, j) = 1;
            out.push_back(e);
        }
    }
    for (int i = 0; i + 1 < n; i++) {
        Matrix e = Matrix::Zero(n, n);
        e(i, i) = 1;
        e(i + 1, i + 1) = -1;
        out.push_back(e);
    }
    return out;
}

}  // namespace duc
