#pragma once

#include <cstdint>
#include <vector>

#include "duc/gate.h"

namespace duc::kernels {

/// Dense t_α from the two auxiliary gates: `v` for the first α chain sites, `vp`
/// for the rest, each acting on (chain site, auxiliary) in that factor order.
Matrix transfer_dense_serial(const Matrix &v, const Matrix &vp, int n, int alpha);
Matrix transfer_dense_omp(const Matrix &v, const Matrix &vp, int n, int alpha);

/// Integer transfer graph of a permutation gate: for every chain configuration
/// s, the targets s' reached with the auxiliary returning to its start, one
/// entry per auxiliary value (so multiplicities are explicit).
/// `v` and `vp` are packed maps (site·N + aux) ↦ (site'·N + aux').
struct TransferGraph {
    int64_t nodes = 0;
    std::vector<int64_t> offsets;
    std::vector<int64_t> targets;
};

/// Strongly connected components (iterative Tarjan); returns the component id
/// of every node and sets `count`.
std::vector<int64_t> strongly_connected_components(const TransferGraph &g, int64_t &count);

TransferGraph transfer_graph_serial(const std::vector<int> &v, const std::vector<int> &vp, int n, int alpha);
TransferGraph transfer_graph_omp(const std::vector<int> &v, const std::vector<int> &vp, int n, int alpha);

}  // namespace duc::kernels
