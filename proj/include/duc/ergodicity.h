#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "duc/exec.h"
#include "duc/gate.h"
#include "duc/perm_map.h"

namespace duc {

enum class ChannelSign { plus, minus };
enum class Direction { right, left };

/// M_± as an N²×N² matrix on row-major vectorized operators, vec(o)[c·N + c'] = o(c, c').
Matrix channel_m(const Gate &g, ChannelSign sign);

struct TransferOptions {
    int64_t max_dim = 6561;
    Exec exec = Exec::parallel;
};

struct TransferMatrix {
    int alpha = 1;
    Direction direction = Direction::right;
    Matrix matrix;
};

/// Light-cone transfer matrix t_α on the auxiliary chain of 2α sites, site 0
/// most significant. The left direction uses the space-reflected gate.
TransferMatrix transfer_matrix(const Gate &g, int alpha, Direction dir, const TransferOptions &opts = {});

/// Best rational approximation p/q (q ≤ max_q) of arg(λ)/2π.
struct RationalPhase {
    int64_t p = 0;
    int64_t q = 1;
};

struct SpectrumReport {
    std::vector<cplx> eigenvalues;
    int64_t unimodular_count = 0;
    /// How many trivial eigenvalues the reported glider count subtracts.
    int64_t trivial_subtracted = 0;
    std::vector<RationalPhase> unimodular_phases;
    std::string method;
};

SpectrumReport spectrum(const Matrix &m, const Tolerance &tol = {});

RationalPhase rational_phase(cplx lambda, int64_t max_q);

/// Exact unimodular eigenvalue count of t_α for a permutation gate, from the
/// closed strongly connected components of the integer matrix N·t_α.
int64_t unimodular_count_exact(const PermMap &m, int alpha, Direction dir);

struct ExactSpectrumSummary {
    int64_t unimodular_count = 0;
    /// Components of the transfer graph that contain a cycle; only these carry
    /// nonzero eigenvalues.
    int64_t cyclic_components = 0;
    /// Spectrum is exactly {1, 0, …, 0}. Left false when the surviving
    /// component exceeds 256 states.
    bool trivial = false;
};

ExactSpectrumSummary exact_spectrum_summary(const PermMap &m, int alpha, Direction dir);

struct GliderOptions {
    TransferOptions transfer;
    Tolerance tol;
    /// Use the integer path for permutation gates when available.
    bool allow_exact = true;
};

struct GliderCount {
    int alpha = 1;
    int64_t right = 0;
    int64_t left = 0;
    /// right + left - 2
    int64_t total = 0;
    std::string method;
};

GliderCount glider_count(const Gate &g, int alpha, const GliderOptions &opts = {});

struct GliderCandidate {
    int support_range = 1;
    Direction direction = Direction::right;
    /// Operator on support_range sites, Frobenius norm 1.
    Matrix op;
    /// Eigenvalue of the one-layer map; the Floquet phase e^{2iφ} is its square.
    cplx lambda;
    cplx phase;
    double residual = 0;
    bool verified = false;
};

struct ExtractOptions {
    Tolerance tol;
    double residual_tol = 1e-8;
    int64_t max_dim = 6561;
    /// Largest closed block diagonalized on the sparse permutation path.
    int64_t max_block = 4096;
    /// Node cap for the sparse permutation path (N^{2r} matrix units).
    int64_t max_sparse_nodes = int64_t{1} << 23;
    uint64_t seed = 1;
};

/// One-layer chain map on operators of r = 2α−1 sites:
/// Φ(O) = Tr_0[G†(O⊗1)G]/N with G = U on (0,1), (2,3), …, (r−1, r).
Matrix chain_map(const Gate &g, int alpha);

/// Unimodular eigen-operators of the chain map, each checked against the
/// exchange relation V†O(x)V = λ² O(x+2) on a chain of 2α+4 sites. Left movers
/// are the right movers of the space-reflected gate, checked in that frame.
std::vector<GliderCandidate> extract_gliders(const Gate &g, int alpha, Direction dir, const ExtractOptions &opts = {});

/// Relative residual ‖V†O(x)V − λ²O(x+2)‖/‖O‖, estimated on random states.
double exchange_residual(const Gate &g, const Matrix &op, int range, cplx lambda, int chain_length, uint64_t seed);

struct CorrelatorOptions {
    int64_t max_states = 6561;
    Exec exec = Exec::parallel;
};

/// ⟨o1(x,t) o2(y,0)⟩ = Tr(W_t† o1(x) W_t o2(y))/N^L, with W_t the first t layers
/// V1, V2, V1, … (so W_2 is the Floquet operator V = V2·V1).
cplx correlator(const Gate &g, int L, int t, const Matrix &o1, const Matrix &o2, int x, int y,
                const CorrelatorOptions &opts = {});

/// Every correlator for a fixed (t, y, o2) and all x, o1 in the given list.
/// Result indexed [x][k] for o1 = ops[k].
std::vector<std::vector<cplx>> correlator_row(const Gate &g, int L, int t, const std::vector<Matrix> &ops,
                                              const Matrix &o2, int y, const CorrelatorOptions &opts = {});

/// Full-chain dense evaluation; the reference the light-cone contraction is tested against.
cplx correlator_dense(const Gate &g, int L, int t, const Matrix &o1, const Matrix &o2, int x, int y);

/// Traceless one-site operator basis: off-diagonal units and adjacent diagonal differences.
std::vector<Matrix> traceless_basis(int n);

}  // namespace duc
