#include <cmath>
#include <random>
#include <stdexcept>

#include "duc/ergodicity.h"
#include "duc/kernels.h"
#include "duc/linalg.h"
#include "tensor_ops.h"

namespace duc {

using detail::apply_local;
using detail::ipow;
using detail::layer_pairs;

namespace {

void require_homogeneous_unitary(const Gate &g) {
    if (!g.homogeneous() || !is_unitary(g)) {
        throw std::invalid_argument("gliders: requires a homogeneous unitary gate");
    }
}

/// Digits of i (r sites, site 0 most significant).
std::vector<int> digits_of(int64_t i, int n, int r) {
    std::vector<int> d(r);
    for (int k = r - 1; k >= 0; k--) {
        d[k] = static_cast<int>(i % n);
        i /= n;
    }
    return d;
}

Matrix normalized_operator(const Eigen::VectorXcd &v, int64_t dim) {
    Matrix op(dim, dim);
    for (int64_t p = 0; p < dim; p++)
        for (int64_t q = 0; q < dim; q++) op(p, q) = v(p * dim + q);
    Eigen::Index r = 0, c = 0;
    op.cwiseAbs().maxCoeff(&r, &c);
    const cplx pivot = op(r, c);
    op *= std::abs(pivot) / pivot;
    op /= op.norm();
    return op;
}

void apply_layer(Matrix &psi, const Gate &g, int L, int layer, bool adjoint) {
    const Matrix m = adjoint ? Matrix(g.matrix().adjoint()) : g.matrix();
    for (auto [p, q] : layer_pairs(L, layer)) apply_local(psi, g.n(), L, {p, q}, m);
}

struct SparsePhi {
    kernels::TransferGraph graph;
    int64_t dim = 0;  // N^r
};

/// Matrix-unit graph of Φ for a permutation gate: E_ij ↦ E_{u',v'} for every y
/// with G^{-1}(i,y) = (u0, u') and G^{-1}(j,y) = (v0, v'), u0 = v0.
SparsePhi sparse_phi(const PermMap &m, int alpha) {
    const int n = m.n();
    const int r = 2 * alpha - 1;
    const int64_t dim = ipow(n, r);
    const PermMap inv = m.inverse();
    std::vector<int> head(dim * n);
    std::vector<int64_t> rest(dim * n);
    for (int64_t i = 0; i < dim; i++) {
        auto d = digits_of(i, n, r);
        d.push_back(0);
        for (int y = 0; y < n; y++) {
            d[r] = y;
            std::vector<int> u(r + 1);
            for (int k = 0; k + 1 <= r; k += 2) {
                u[k] = inv.c(d[k], d[k + 1]);
                u[k + 1] = inv.d(d[k], d[k + 1]);
            }
            int64_t tail = 0;
            for (int k = 1; k <= r; k++) tail = tail * n + u[k];
            head[i * n + y] = u[0];
            rest[i * n + y] = tail;
        }
    }
    SparsePhi out;
    out.dim = dim;
    auto &g = out.graph;
    g.nodes = dim * dim;
    g.offsets.assign(g.nodes + 1, 0);
    g.targets.reserve(g.nodes * n);
    for (int64_t i = 0; i < dim; i++) {
        for (int64_t j = 0; j < dim; j++) {
            for (int y = 0; y < n; y++) {
                if (head[i * n + y] == head[j * n + y]) g.targets.push_back(rest[i * n + y] * dim + rest[j * n + y]);
            }
            g.offsets[i * dim + j + 1] = static_cast<int64_t>(g.targets.size());
        }
    }
    return out;
}

std::vector<std::pair<cplx, Eigen::VectorXcd>> unimodular_pairs_dense(const Matrix &phi, const Tolerance &tol) {
    std::vector<std::pair<cplx, Eigen::VectorXcd>> out;
    const auto eig = eigen_decomposition(phi);
    for (size_t k = 0; k < eig.values.size(); k++) {
        if (std::abs(std::abs(eig.values[k]) - 1) <= tol.eigen) out.emplace_back(eig.values[k], eig.vectors.col(k));
    }
    return out;
}

std::vector<std::pair<cplx, Eigen::VectorXcd>> unimodular_pairs_sparse(const SparsePhi &sp, int n,
                                                                       const ExtractOptions &opts) {
    const auto &g = sp.graph;
    int64_t ncomp = 0;
    const auto comp = kernels::strongly_connected_components(g, ncomp);
    std::vector<std::vector<int64_t>> members(ncomp);
    std::vector<char> closed(ncomp, 1), cyclic(ncomp, 0);
    for (int64_t s = 0; s < g.nodes; s++) {
        members[comp[s]].push_back(s);
        int64_t inside = 0;
        for (int64_t e = g.offsets[s]; e < g.offsets[s + 1]; e++) inside += comp[g.targets[e]] == comp[s];
        if (inside != n) closed[comp[s]] = 0;
        if (inside > 0) cyclic[comp[s]] = 1;
    }
    std::vector<std::pair<cplx, Eigen::VectorXcd>> out;
    std::vector<int64_t> local(g.nodes, -1);
    for (int64_t c = 0; c < ncomp; c++) {
        if (!closed[c] || !cyclic[c]) continue;
        const auto &mem = members[c];
        const int64_t size = static_cast<int64_t>(mem.size());
        if (size > opts.max_block) {
            throw std::invalid_argument("extract_gliders: closed block of size " + std::to_string(size) +
                                        " exceeds max_block");
        }
        for (int64_t k = 0; k < size; k++) local[mem[k]] = k;
        Matrix block = Matrix::Zero(size, size);
        for (int64_t k = 0; k < size; k++) {
            for (int64_t e = g.offsets[mem[k]]; e < g.offsets[mem[k] + 1]; e++) {
                block(local[g.targets[e]], k) += 1.0 / n;
            }
        }
        for (auto &[lambda, vec] : unimodular_pairs_dense(block, opts.tol)) {
            Eigen::VectorXcd full = Eigen::VectorXcd::Zero(g.nodes);
            for (int64_t k = 0; k < size; k++) full(mem[k]) = vec(k);
            out.emplace_back(lambda, std::move(full));
        }
    }
    return out;
}

}  // namespace

Matrix chain_map(const Gate &g, int alpha) {
    require_homogeneous_unitary(g);
    if (alpha < 1) {
        throw std::invalid_argument("chain_map: alpha must be at least 1");
    }
    const int n = g.n();
    const int r = 2 * alpha - 1;
    const int64_t dim = ipow(n, r);
    const Matrix udag = g.matrix().adjoint();
    // cols[i][y]: G†|i, y⟩ reshaped to N × dim (site 0 as rows).
    std::vector<std::vector<Matrix>> cols(dim, std::vector<Matrix>(n));
    for (int64_t i = 0; i < dim; i++) {
        auto d = digits_of(i, n, r);
        for (int y = 0; y < n; y++) {
            Eigen::VectorXcd v = Eigen::VectorXcd::Ones(1);
            for (int k = 0; k < alpha; k++) {
                const int p = d[2 * k];
                const int q = 2 * k + 1 < r ? d[2 * k + 1] : y;
                const Eigen::VectorXcd f = udag.col(p * n + q);
                Eigen::VectorXcd next(v.size() * f.size());
                for (Eigen::Index a = 0; a < v.size(); a++) next.segment(a * f.size(), f.size()) = v(a) * f;
                v = std::move(next);
            }
            Matrix shaped(n, dim);
            for (int z = 0; z < n; z++)
                for (int64_t rest = 0; rest < dim; rest++) shaped(z, rest) = v(z * dim + rest);
            cols[i][y] = std::move(shaped);
        }
    }
    Matrix phi = Matrix::Zero(dim * dim, dim * dim);
    for (int64_t i = 0; i < dim; i++) {
        for (int64_t j = 0; j < dim; j++) {
            Matrix acc = Matrix::Zero(dim, dim);
            for (int y = 0; y < n; y++) acc.noalias() += cols[i][y].transpose() * cols[j][y].conjugate();
            acc /= static_cast<double>(n);
            for (int64_t p = 0; p < dim; p++)
                for (int64_t q = 0; q < dim; q++) phi(p * dim + q, i * dim + j) = acc(p, q);
        }
    }
    return phi;
}

double exchange_residual(const Gate &g, const Matrix &op, int range, cplx lambda, int chain_length, uint64_t seed) {
    const int n = g.n();
    const int L = chain_length;
    if (L % 2 != 0 || L < range + 3) {
        throw std::invalid_argument("exchange_residual: chain too short or odd");
    }
    const int64_t dim = ipow(n, L);
    std::vector<int> at_x, at_x2;
    for (int k = 0; k < range; k++) {
        at_x.push_back(1 + k);
        at_x2.push_back(3 + k);
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    double worst = 0;
    for (int rep = 0; rep < 2; rep++) {
        Matrix psi(dim, 1);
        for (int64_t k = 0; k < dim; k++) psi(k, 0) = cplx(gauss(rng), gauss(rng));
        psi /= psi.norm();
        Matrix a = psi;
        apply_layer(a, g, L, 1, false);
        apply_layer(a, g, L, 2, false);
        apply_local(a, n, L, at_x, op);
        apply_layer(a, g, L, 2, true);
        apply_layer(a, g, L, 1, true);
        Matrix b = psi;
        apply_local(b, n, L, at_x2, op);
        b *= lambda * lambda;
        worst = std::max(worst, (a - b).norm() / std::max(b.norm(), 1e-300));
    }
    return worst;
}

std::vector<GliderCandidate> extract_gliders(const Gate &g, int alpha, Direction dir, const ExtractOptions &opts) {
    require_homogeneous_unitary(g);
    const Gate u = dir == Direction::right ? g : d4_transform(g, D4Element::space_reflect());
    const int n = u.n();
    const int r = 2 * alpha - 1;
    const int64_t dim = ipow(n, r);
    std::vector<std::pair<cplx, Eigen::VectorXcd>> pairs;
    if (dim * dim <= opts.max_dim) {
        pairs = unimodular_pairs_dense(chain_map(u, alpha), opts.tol);
    } else if (is_permutation_matrix(u.matrix()) && dim * dim <= opts.max_sparse_nodes) {
        pairs = unimodular_pairs_sparse(sparse_phi(PermMap::from_gate(u), alpha), n, opts);
    } else {
        throw std::invalid_argument("extract_gliders: operator space of dimension " + std::to_string(dim * dim) +
                                    " exceeds the cap");
    }
    std::vector<GliderCandidate> out;
    uint64_t seed = opts.seed;
    for (auto &[lambda, vec] : pairs) {
        GliderCandidate c;
        c.support_range = r;
        c.direction = dir;
        c.op = normalized_operator(vec, dim);
        c.lambda = lambda;
        c.phase = lambda * lambda;
        c.residual = exchange_residual(u, c.op, r, lambda, 2 * alpha + 4, seed++);
        c.verified = c.residual <= opts.residual_tol;
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace duc
