#pragma once

#include <vector>

#include "duc/gate.h"
#include "duc/perm_map.h"

namespace duc {

/// Bilinear exponent F = α1·ij + α2·kl + β1·ik + β2·jl + γ1·il + γ2·jk over Z_N,
/// with (i, j) outgoing and (k, l) incoming.
struct GraphStateParams {
    int n = 2;
    int alpha1 = 0, alpha2 = 0, beta1 = 0, beta2 = 0, gamma1 = 0, gamma2 = 0;

    /// Reduces every coefficient into [0, N).
    GraphStateParams reduced() const;

    static GraphStateParams kicked_ising(int n) { return {n, 1, 1, 1, 1, 0, 0}; }
    static GraphStateParams p_state(int n) { return {n, 1, 1, 1, n - 1, 0, 0}; }
};

/// (a, b) ↦ (αa + βb, γa + δb) over Z_N.
struct RingLinearParams {
    int n = 2;
    int alpha = 0, beta = 0, gamma = 0, delta = 0;

    RingLinearParams reduced() const;
};

/// For graph states `invertible` is plain unitarity of the gate.
struct PredicateFlags {
    bool invertible = false;
    bool dual_unitary = false;
    bool perfect = false;
};

/// exp(2πi k/N) with k reduced mod N before the angle is formed.
cplx root_of_unity(int n, int64_t k);

/// The qubit DU family diag(e^{-iJ}) on |00⟩,|11⟩ and -i e^{iJ} on the swapped pair.
Gate n2_family(double j);

/// D·SWAP for a diagonal unitary D of size N²×N².
Gate dressed_swap(const Matrix &d);

/// Block sum of gates of types (N1, M) and (N2, M) into type (N1+N2, M),
/// splitting the first incoming and the second outgoing space.
Gate direct_sum(const Gate &u1, const Gate &u2);

/// SWAP · Σ_j |j⟩⟨j| ⊗ U^{(j)}.
Gate controlled_unitary(const std::vector<Matrix> &us);

/// Z^{β,cd}_{ab,α} = Σ_γ U^{βc}_{aγ} V^{γd}_{bα}; U of type (N1, M), V of type (N2, M).
Gate diagonal_compose(const Gate &u, const Gate &v);

/// Z_23 Y_34 C_23 V_12 X_23 on four qubits (qubit 1 most significant), read as a
/// two-site gate on C^4 ⊗ C^4 with sites (1,2) and (3,4).
Gate compose_n4(const Gate &x, const Gate &y, const Gate &v, const Gate &z, const Gate &c);

PredicateFlags ring_linear_flags(const RingLinearParams &p);
/// Throws if the determinant is not invertible in Z_N.
PermMap ring_linear(const RingLinearParams &p);

PredicateFlags graph_state_flags(const GraphStateParams &p);
Gate graph_state_gate(const GraphStateParams &p);

/// For α1 = α2 = 0: the permutation map equal to (F⊗F)·U_graph, with F the DFT.
/// Throws std::logic_error if the numerical identity fails.
PermMap fourier_reduce(const GraphStateParams &p, const Tolerance &tol = {});

/// Discrete Fourier transform F_{jk} = ω^{-jk}/√N.
Matrix dft(int n);

/// U|a,b⟩ = e^{iφ_{cd}}|c,d⟩ with (c, d) = m(a, b); phases indexed by c·N + d.
Gate phase_dress_perm(const PermMap &m, const std::vector<double> &phases);

}  // namespace duc
