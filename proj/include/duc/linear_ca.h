#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace duc {

using BigInt = boost::multiprecision::cpp_int;

/// Prime factorization as (prime, exponent) pairs in increasing prime order.
using Factorization = std::vector<std::pair<uint64_t, int>>;

bool is_prime(uint64_t n);
/// Pollard–Brent with Miller–Rabin; exact for every 64-bit input.
Factorization factorize(uint64_t n);
Factorization merge(const Factorization &a, const Factorization &b);
BigInt evaluate(const Factorization &f);

/// Multiplicative order of a mod m (gcd(a, m) = 1, m ≥ 1).
uint64_t multiplicative_order(uint64_t a, uint64_t m);

/// Dense matrix over F_p.
class GFMatrix {
   public:
    GFMatrix() = default;
    GFMatrix(int rows, int cols, int64_t p);
    static GFMatrix identity(int size, int64_t p);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int64_t p() const { return p_; }
    int64_t &at(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
    int64_t at(int r, int c) const { return data_[static_cast<size_t>(r) * cols_ + c]; }

    GFMatrix operator*(const GFMatrix &o) const;
    bool operator==(const GFMatrix &o) const = default;
    std::vector<int64_t> apply(const std::vector<int64_t> &x) const;
    GFMatrix pow(const BigInt &k) const;
    bool is_identity() const;
    int rank() const;
    int64_t determinant() const;

   private:
    int rows_ = 0, cols_ = 0;
    int64_t p_ = 2;
    std::vector<int64_t> data_;
};

/// F_{p^n} with elements as coefficient vectors modulo a fixed monic irreducible.
class FiniteField {
   public:
    using Elem = std::vector<int64_t>;

    /// Uses the lexicographically smallest monic irreducible of degree n, where
    /// coefficient vectors (constant term first) are compared as base-p numbers.
    FiniteField(int64_t p, int n);

    int64_t p() const { return p_; }
    int degree() const { return n_; }
    /// Modulus coefficients, constant term first, leading 1 included.
    const std::vector<int64_t> &modulus() const { return modulus_; }
    uint64_t size() const;

    Elem zero() const { return Elem(n_, 0); }
    Elem one() const { return constant(1); }
    Elem constant(int64_t c) const;
    Elem add(const Elem &a, const Elem &b) const;
    Elem sub(const Elem &a, const Elem &b) const;
    Elem neg(const Elem &a) const;
    Elem mul(const Elem &a, const Elem &b) const;
    Elem pow(Elem a, const BigInt &k) const;
    Elem inv(const Elem &a) const;
    bool is_zero(const Elem &a) const;

    /// Smallest generator of the multiplicative group in the base-p encoding.
    Elem generator() const;
    /// Element of exact multiplicative order l (requires l | p^n − 1).
    Elem root_of_unity(uint64_t l) const;
    std::string to_string(const Elem &a) const;

   private:
    int64_t p_;
    int n_;
    std::vector<int64_t> modulus_;
};

/// Rabin irreducibility test for a monic polynomial (constant term first).
bool is_irreducible(const std::vector<int64_t> &f, int64_t p);

struct BrickworkMatrix {
    int L = 0;
    int64_t p = 3;
    GFMatrix v;
};

/// Builds V from the component update rule with y = even sites and z = odd
/// sites, and checks it against the factorized form on random vectors.
BrickworkMatrix build_v(int L, int64_t p);
/// Applies V to a vector in O(L).
std::vector<int64_t> apply_v(const std::vector<int64_t> &x, int64_t p);
/// Block-diagonal pair map A and cyclic shift C, both over F_p.
GFMatrix pair_matrix(int L, int64_t p);
GFMatrix shift_matrix(int L, int64_t p);

enum class OrderMethod { automatic, direct, descent };

struct OrderOptions {
    OrderMethod method = OrderMethod::automatic;
    uint64_t direct_budget = 100'000'000;
    /// Largest p^s + 1 the factorizer accepts before falling back to iteration.
    uint64_t factor_limit = uint64_t{1} << 62;
};

struct OrderReport {
    int L = 0;
    int64_t p = 0;
    BigInt T = 0;
    std::string method;
    int ell = 0;
    /// p-adic valuation of ell, and the multiplicative order n of p modulo the
    /// p-free part of ell.
    int p_valuation = 0;
    uint64_t n = 0;
    /// s = n for odd n and n/2 for even n.
    uint64_t s = 0;
    /// Smallest s' with p^{s'} ≡ ±1 mod the p-free part of ell, so that
    /// ω + ω^{-1} lies in F_{p^{s'}}; differs from s when p^{n/2} ≢ −1.
    uint64_t s_field = 0;
    /// Known multiple of T and its factorization (only for the descent method).
    BigInt bound = 0;
    Factorization bound_factors;
    /// V^T = I and V^{T/q} ≠ I for each prime q | T, checked by exact powers.
    bool certified = false;
    bool budget_exceeded = false;
    std::vector<std::string> caveats;
};

OrderReport matrix_order(const BrickworkMatrix &m, const OrderOptions &opts = {});
OrderReport matrix_order(int L, int64_t p, const OrderOptions &opts = {});

struct CorollaryRow {
    int m = 0;
    int L = 0;
    BigInt T = 0;
    std::optional<int> mu;
    bool in_range = false;
    bool lower_bound = false;
};

struct CorollaryReport {
    int64_t p = 0;
    uint64_t a = 0;
    std::vector<CorollaryRow> rows;
    bool holds = false;
};

/// T(2p^m) = a·p^μ with a = 2·ord(−4) and μ ∈ {m−2, m−1, m}, for m = 0..m_max.
CorollaryReport verify_corollary_2pm(int64_t p, int m_max, const OrderOptions &opts = {});

struct DivisibilityReport {
    int64_t p = 0;
    int L = 0;
    BigInt T = 0;
    uint64_t s = 0;
    uint64_t s_field = 0;
    /// p(p^{2s} − 1) and whether T divides it.
    BigInt multiple = 0;
    BigInt quotient = 0;
    bool divides = false;
    /// Same with s_field in place of s.
    BigInt field_multiple = 0;
    bool divides_field = false;
    /// T ≤ p^{L−1} − p; not applied when ell = 1.
    std::optional<bool> exponential_bound;
    /// ell is a p-repunit (p^k − 1)/(p − 1); then T ≤ p(p−1)ell((p−1)ell+1).
    std::optional<BigInt> repunit_bound;
    std::optional<bool> repunit_bound_holds;
};

DivisibilityReport verify_divisibility(int64_t p, int L, const OrderOptions &opts = {});

struct BlockInfo {
    uint64_t k = 0;  ///< ω = g^{k}, g a fixed primitive ell-th root
    FiniteField::Elem omega;
    FiniteField::Elem entries[4];
    bool charpoly_ok = false;
    bool minus_one = false;
    bool trace_six = false;
    BigInt order = 0;
};

struct BlockSpectrumReport {
    int64_t p = 0;
    int L = 0;
    uint64_t n = 0;
    std::vector<int64_t> modulus;
    std::vector<BlockInfo> blocks;
    BigInt lcm_order = 0;
};

BlockSpectrumReport block_spectrum(int64_t p, int L);

struct CoprimeReport {
    int64_t p = 0;
    int a = 0, b = 0;
    BigInt t_a = 0, t_b = 0, t_ab = 0;
    BigInt lcm = 0;
    /// Smallest d ≥ 1 with lcm | T(2ab)·d and T(2ab) | lcm·d.
    BigInt d = 0;
    bool d_divides_p_minus_1 = false;
};

CoprimeReport coprime_decomposition_check(int64_t p, int a, int b, const OrderOptions &opts = {});

struct KernelReport {
    int64_t p = 0;
    int L = 0;
    int kernel_dim = 0;
    bool commutes = false;
    /// V² acts as −4 on the kernel.
    bool v_squared_minus_four = false;
};

/// Nilpotent T = J − I on both parity sectors for ell = p^m.
KernelReport kernel_check(int64_t p, int L);

}  // namespace duc
