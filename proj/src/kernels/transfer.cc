#include <algorithm>
#include <stdexcept>

#include "duc/kernels.h"

namespace duc::kernels {

namespace {

int64_t ipow(int64_t b, int e) {
    int64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

void transfer_column(const Matrix &v, const Matrix &vp, int n, int alpha, int64_t s, Matrix &t) {
    const int sites = 2 * alpha;
    // Rows: (output digits so far, auxiliary); columns: initial auxiliary value.
    Matrix cur = Matrix::Identity(n, n);
    int64_t prefix = 1;
    for (int k = 0; k < sites; k++) {
        const int digit = static_cast<int>((s / ipow(n, sites - 1 - k)) % n);
        const Matrix &g = k < alpha ? v : vp;
        const auto slice = g.middleCols(digit * n, n);
        Matrix next(prefix * n * n, n);
        for (int64_t o = 0; o < prefix; o++) {
            next.middleRows(o * n * n, n * n).noalias() = slice * cur.middleRows(o * n, n);
        }
        cur = std::move(next);
        prefix *= n;
    }
    for (int64_t out = 0; out < prefix; out++) {
        cplx acc = 0;
        for (int x = 0; x < n; x++) acc += cur(out * n + x, x);
        t(out, s) = acc / static_cast<double>(n);
    }
}

void check_args(const Matrix &v, const Matrix &vp, int n, int alpha) {
    if (alpha < 1 || v.rows() != n * n || v.cols() != n * n || vp.rows() != n * n || vp.cols() != n * n) {
        throw std::invalid_argument("transfer kernel: bad arguments");
    }
}

void graph_row(const std::vector<int> &v, const std::vector<int> &vp, int n, int alpha, int64_t s,
               int64_t *out) {
    const int sites = 2 * alpha;
    std::vector<int> digits(sites);
    for (int x = 0; x < n; x++) {
        int64_t rem = s;
        for (int k = sites - 1; k >= 0; k--) {
            digits[k] = static_cast<int>(rem % n);
            rem /= n;
        }
        int aux = x;
        for (int k = 0; k < sites; k++) {
            const int img = (k < alpha ? v : vp)[digits[k] * n + aux];
            digits[k] = img / n;
            aux = img % n;
        }
        int64_t target = -1;
        if (aux == x) {
            target = 0;
            for (int k = 0; k < sites; k++) target = target * n + digits[k];
        }
        out[x] = target;
    }
}

TransferGraph compact(std::vector<int64_t> raw, int64_t nodes, int n) {
    TransferGraph g;
    g.nodes = nodes;
    g.offsets.assign(nodes + 1, 0);
    for (int64_t s = 0; s < nodes; s++) {
        int64_t cnt = 0;
        for (int x = 0; x < n; x++) cnt += raw[s * n + x] >= 0;
        g.offsets[s + 1] = g.offsets[s] + cnt;
    }
    g.targets.reserve(g.offsets[nodes]);
    for (int64_t k = 0; k < nodes * n; k++) {
        if (raw[k] >= 0) g.targets.push_back(raw[k]);
    }
    return g;
}

}  // namespace

std::vector<int64_t> strongly_connected_components(const TransferGraph &g, int64_t &count) {
    const int64_t n = g.nodes;
    std::vector<int64_t> index(n, -1), low(n, 0), comp(n, -1), stack, call;
    std::vector<int64_t> edge_pos(n, 0);
    std::vector<char> on_stack(n, 0);
    int64_t next_index = 0;
    count = 0;
    for (int64_t root = 0; root < n; root++) {
        if (index[root] >= 0) continue;
        call.push_back(root);
        index[root] = low[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = 1;
        edge_pos[root] = g.offsets[root];
        while (!call.empty()) {
            const int64_t v = call.back();
            if (edge_pos[v] < g.offsets[v + 1]) {
                const int64_t w = g.targets[edge_pos[v]++];
                if (index[w] < 0) {
                    index[w] = low[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    edge_pos[w] = g.offsets[w];
                    call.push_back(w);
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            call.pop_back();
            if (!call.empty()) {
                low[call.back()] = std::min(low[call.back()], low[v]);
            }
            if (low[v] == index[v]) {
                int64_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    comp[w] = count;
                } while (w != v);
                count++;
            }
        }
    }
    return comp;
}

Matrix transfer_dense_serial(const Matrix &v, const Matrix &vp, int n, int alpha) {
    check_args(v, vp, n, alpha);
    const int64_t dim = ipow(n, 2 * alpha);
    Matrix t(dim, dim);
    for (int64_t s = 0; s < dim; s++) transfer_column(v, vp, n, alpha, s, t);
    return t;
}

Matrix transfer_dense_omp(const Matrix &v, const Matrix &vp, int n, int alpha) {
    check_args(v, vp, n, alpha);
    const int64_t dim = ipow(n, 2 * alpha);
    Matrix t(dim, dim);
#pragma omp parallel for schedule(dynamic, 8)
    for (int64_t s = 0; s < dim; s++) transfer_column(v, vp, n, alpha, s, t);
    return t;
}

TransferGraph transfer_graph_serial(const std::vector<int> &v, const std::vector<int> &vp, int n, int alpha) {
    const int64_t dim = ipow(n, 2 * alpha);
    std::vector<int64_t> raw(dim * n);
    for (int64_t s = 0; s < dim; s++) graph_row(v, vp, n, alpha, s, &raw[s * n]);
    return compact(std::move(raw), dim, n);
}

TransferGraph transfer_graph_omp(const std::vector<int> &v, const std::vector<int> &vp, int n, int alpha) {
    const int64_t dim = ipow(n, 2 * alpha);
    std::vector<int64_t> raw(dim * n);
#pragma omp parallel for schedule(static)
    for (int64_t s = 0; s < dim; s++) graph_row(v, vp, n, alpha, s, &raw[s * n]);
    return compact(std::move(raw), dim, n);
}

}  // namespace duc::kernels
