#pragma once

#include <array>
#include <complex>
#include <string>

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>

namespace duc {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Numerical tolerances. `unitary` bounds algebraic identities on O(1) entries,
/// `eigen` bounds | |λ| - 1 | when classifying eigenvalues as unimodular.
struct Tolerance {
    double unitary = 1e-10;
    double eigen = 1e-9;
};

/// A two-site gate of type (N, M): C^N ⊗ C^M → C^M ⊗ C^N.
///
/// Tensor notation U^{cd}_{ab}: incoming a ∈ [0,N), b ∈ [0,M); outgoing
/// c ∈ [0,M), d ∈ [0,N). All indices are zero-based. Composite indices are
/// packed row-major, (x, y) ↦ x·dim(y) + y, so the matrix element is
///
///     matrix()(c·N + d, a·M + b) == U^{cd}_{ab}.
///
/// Homogeneous gates have N == M.
class Gate {
   public:
    Gate(int n, int m);
    Gate(int n, int m, Matrix entries);

    static Gate swap(int n, int m);
    static Gate swap(int n) { return swap(n, n); }

    int n() const { return n_; }
    int m() const { return m_; }
    bool homogeneous() const { return n_ == m_; }
    int dim() const { return n_ * m_; }

    cplx at(int a, int b, int c, int d) const { return u_(c * n_ + d, a * m_ + b); }
    void set(int a, int b, int c, int d, cplx v) { u_(c * n_ + d, a * m_ + b) = v; }

    const Matrix &matrix() const { return u_; }

    bool operator==(const Gate &other) const;

   private:
    int n_;
    int m_;
    Matrix u_;
};

/// Leg permutation acting on the quartet (a, b, c, d): the image gate has
/// quartet q' with q'[i] = q[legs[i]].
using LegPermutation = std::array<int, 4>;

Gate permute_legs(const Gate &g, const LegPermutation &legs);

/// (U^R)^{db}_{ca} = U^{cd}_{ab}. Type (N, M) becomes type (M, N).
Gate reshuffle_r(const Gate &g);
Gate reshuffle_r_inverse(const Gate &g);

/// (U^D)^{bc}_{ad} = U^{cd}_{ab}. Homogeneous gates only.
Gate reshuffle_d(const Gate &g);
Gate reshuffle_d_inverse(const Gate &g);

bool is_unitary(const Matrix &u, const Tolerance &tol = {});
bool is_unitary(const Gate &g, const Tolerance &tol = {});
bool is_dual_unitary(const Gate &g, const Tolerance &tol = {});
bool is_perfect(const Gate &g, const Tolerance &tol = {});

/// (A ⊗ B) U (C ⊗ D). A acts on C^M, B on C^N, C on C^N, D on C^M.
Gate dress(const Gate &g, const Matrix &a, const Matrix &b, const Matrix &c, const Matrix &d);

/// Elements of the dihedral group acting on homogeneous gates as leg
/// permutations that keep the diagonals {a,d} and {b,c}.
struct D4Element {
    LegPermutation legs{0, 1, 2, 3};

    static D4Element identity() { return {{0, 1, 2, 3}}; }
    /// P U P
    static D4Element space_reflect() { return {{1, 0, 3, 2}}; }
    /// U^t (no complex conjugation)
    static D4Element time_reflect() { return {{2, 3, 0, 1}}; }
    static D4Element reshuffle() { return {{2, 0, 3, 1}}; }

    /// Apply `other` first, then `*this`.
    D4Element after(const D4Element &other) const;
    bool operator==(const D4Element &o) const { return legs == o.legs; }
};

/// All eight group elements, identity first.
std::array<D4Element, 8> d4_group();

Gate d4_transform(const Gate &g, const D4Element &e);

enum class PartyPair { p12, p34, p13, p24, p14, p23 };

/// Two-party reduced density matrix of |u⟩, u_{abcd} = U^{cd}_{ab}/N, with
/// parties 1..4 = a, b, c, d. Homogeneous gates only.
Matrix reduced_density(const Gate &g, PartyPair pair);

struct DiagonalEntanglement {
    double entropy;  ///< von Neumann entropy of ρ_14, natural log
    double maximum;  ///< 2 ln N
};

DiagonalEntanglement diagonal_entanglement(const Gate &g);

/// Matrix of the permutation (a,b) ↦ (c,d) lifted to a gate; used by the
/// permutation-map code and by tests.
bool is_permutation_matrix(const Matrix &u);

void to_json(nlohmann::json &j, const Gate &g);
Gate gate_from_json(const nlohmann::json &j);

}  // namespace duc
