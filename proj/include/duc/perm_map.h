#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "duc/gate.h"

namespace duc {

/// How the text format maps printed labels 1..N onto values 0..N-1.
enum class LabelConvention {
    offset_one,  ///< label = value + 1
    vacuum,      ///< label = value, with value 0 printed as N
};

/// A map (a, b) ↦ (C[a][b], D[a][b]) on X², X = {0..N-1}, stored as the pair
/// of squares C and D. The map need not be bijective; see check_flags.
class PermMap {
   public:
    PermMap(int n, std::vector<int> c, std::vector<int> d);

    static PermMap from_function(int n, const std::function<std::pair<int, int>(int, int)> &f);
    static PermMap swap(int n);
    /// Reads a 0/1 permutation gate back into a map.
    static PermMap from_gate(const Gate &g);

    int n() const { return n_; }
    int c(int a, int b) const { return c_[a * n_ + b]; }
    int d(int a, int b) const { return d_[a * n_ + b]; }
    const std::vector<int> &c_square() const { return c_; }
    const std::vector<int> &d_square() const { return d_; }

    /// Packed image (c·N + d) of the packed input (a·N + b).
    int apply_packed(int ab) const { return c_[ab] * n_ + d_[ab]; }

    Gate to_gate() const;
    PermMap inverse() const;

    /// Row-major over the table, c before d.
    std::vector<uint8_t> serialize() const;

    bool operator==(const PermMap &o) const { return n_ == o.n_ && c_ == o.c_ && d_ == o.d_; }
    bool operator<(const PermMap &o) const { return serialize() < o.serialize(); }

   private:
    int n_;
    std::vector<int> c_;
    std::vector<int> d_;
};

struct PermFlags {
    bool bijective = false;
    bool dual_unitary = false;
    bool perfect = false;
    bool self_orthogonal = false;
    /// C depends only on b and D only on a: a dressed SWAP.
    bool non_interacting = false;
};

PermFlags check_flags(const PermMap &m);

bool yang_baxter(const PermMap &m);

/// Generic leg permutation of the quartet table; throws if the image is not
/// a function of its incoming pair.
PermMap permute_legs(const PermMap &m, const LegPermutation &legs);

PermMap space_reflect(const PermMap &m);
PermMap time_reflect(const PermMap &m);
/// (A⊗B) U (B^{-1}⊗A^{-1}) with permutations A, B of X given as images.
PermMap diag_sim(const PermMap &m, const std::vector<int> &a, const std::vector<int> &b);

struct CanonicalOptions {
    /// Also quotient by the reshuffle U^R (the full D4 instead of {1, S, T, ST}).
    bool include_reshuffle = false;
};

PermMap canonical_form(const PermMap &m, const CanonicalOptions &opts = {});

struct EquivClassReport {
    int n = 0;
    int64_t total_maps = 0;
    int64_t class_count = 0;
    int64_t non_interacting_classes = 0;
    int64_t perfect_classes = 0;
    std::vector<PermMap> representatives;
    std::vector<int64_t> class_sizes;
    /// Class count when U^R is added to the equivalence group.
    int64_t reshuffle_inclusive_count = 0;
};

struct EnumerateOptions {
    /// N=4 is accepted only when set; larger N is always refused.
    bool allow_n4 = false;
    bool parallel = true;
};

/// All dual-unitary permutation maps of X², grouped into equivalence classes.
EquivClassReport enumerate_du(int n, const EnumerateOptions &opts = {});
/// Every DU map in generation order (C row-Latin outer, D inner).
std::vector<PermMap> all_du_maps(int n, bool parallel);

std::string render(const PermMap &m, LabelConvention conv = LabelConvention::offset_one);
PermMap parse_perm_map(const std::string &text, LabelConvention conv = LabelConvention::offset_one);

}  // namespace duc
