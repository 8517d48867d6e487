#pragma once

#include <cstdint>
#include <vector>

#include "duc/gate.h"

namespace duc::detail {

inline int64_t ipow(int64_t b, int e) {
    int64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

/// Applies `m` (acting on `sites`, first entry most significant) to every column
/// of `x`, whose rows index a chain of `nsites` sites of dimension n, site 0
/// most significant.
inline void apply_local(Matrix &x, int n, int nsites, const std::vector<int> &sites, const Matrix &m) {
    const int k = static_cast<int>(sites.size());
    const int64_t block = ipow(n, k);
    std::vector<int64_t> stride(k);
    for (int j = 0; j < k; j++) stride[j] = ipow(n, nsites - 1 - sites[j]);
    std::vector<int64_t> off(block, 0);
    for (int64_t mi = 0; mi < block; mi++) {
        int64_t rem = mi;
        for (int j = k - 1; j >= 0; j--) {
            off[mi] += (rem % n) * stride[j];
            rem /= n;
        }
    }
    const int64_t dim = x.rows();
    Eigen::VectorXcd in(block), out(block);
    for (int64_t base = 0; base < dim; base++) {
        bool zero = true;
        for (int j = 0; j < k && zero; j++) zero = (base / stride[j]) % n == 0;
        if (!zero) continue;
        for (Eigen::Index c = 0; c < x.cols(); c++) {
            for (int64_t mi = 0; mi < block; mi++) in(mi) = x(base + off[mi], c);
            out.noalias() = m * in;
            for (int64_t mi = 0; mi < block; mi++) x(base + off[mi], c) = out(mi);
        }
    }
}

/// Pairs of a brickwork layer on L sites: layer 1 is V1 = (0,1),(2,3),…; layer 2
/// is V2 = (1,2),…,(L−1,0); odd layers repeat V1.
inline std::vector<std::pair<int, int>> layer_pairs(int L, int layer) {
    std::vector<std::pair<int, int>> out;
    const int first = layer % 2 == 1 ? 0 : 1;
    for (int p = first; p < L; p += 2) out.emplace_back(p, (p + 1) % L);
    return out;
}

}  // namespace duc::detail
