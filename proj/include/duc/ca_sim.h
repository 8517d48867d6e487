#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "duc/exec.h"
#include "duc/linear_ca.h"
#include "duc/perm_map.h"

namespace duc {

/// Sites of a classical configuration, zero-based digits, one byte each.
using CAState = std::vector<uint8_t>;

/// odd: pairs (0,1), (2,3), …; even: pairs (1,2), …, (L−1,0).
enum class Sublattice { odd, even };

/// Brickwork circuit of a permutation map acting on product states.
class BrickworkCA {
   public:
    explicit BrickworkCA(const PermMap &m);

    int n() const { return n_; }
    void step(CAState &s, Sublattice part) const;
    /// Odd sublattice first, then even.
    void floquet(CAState &s) const;

    uint64_t encode(const CAState &s) const;
    CAState decode(uint64_t index, int L) const;

   private:
    int n_;
    std::vector<uint8_t> c_, d_;
};

void check_state(const CAState &s, int n);

/// SplitMix64 output stream keyed by (seed, repetition, sample). Each draw
/// hashes a counter, so any sample can be regenerated independently.
class SampleStream {
   public:
    SampleStream(uint64_t seed, uint64_t repetition, uint64_t sample);
    uint64_t next();
    /// Uniform in [0, n) by rejection.
    uint8_t digit(int n);
    CAState state(int n, int L);

   private:
    uint64_t key_;
    uint64_t counter_ = 0;
};

struct OrbitResult {
    uint64_t length = 0;
    /// Length holds the budget when set; the true orbit is longer.
    bool budget_exceeded = false;
};

/// Smallest k ≥ 1 with floquet^k(s) = s, counted in Floquet periods.
OrbitResult orbit_length(const BrickworkCA &ca, const CAState &s, uint64_t budget = 100'000'000);

/// Cycle length of every state, from the full transition table.
struct CycleTable {
    int L = 0;
    uint64_t states = 0;
    std::vector<uint32_t> cycle_length;
};

CycleTable cycle_table(const BrickworkCA &ca, int L, uint64_t cap = uint64_t{1} << 24, Exec exec = Exec::parallel);

struct OrbitOptions {
    int samples = 200;
    int repetitions = 10;
    uint64_t seed = 1;
    uint64_t budget = 100'000'000;
    /// Largest state space for which the cycle table is built.
    uint64_t table_cap = uint64_t{1} << 24;
    Exec exec = Exec::parallel;
};

struct OrbitStats {
    int L = 0;
    int n = 0;
    int samples = 0;
    int repetitions = 0;
    uint64_t seed = 0;
    /// Repetition-major, samples × repetitions entries.
    std::vector<uint64_t> orbit_lengths;
    double mean = 0;
    /// log_N of the mean.
    double log_mean = 0;
    std::vector<double> repetition_log_means;
    /// Standard deviation of the repetition log-means over their average.
    double rel_variance_log = 0;
    int64_t budget_exceeded = 0;
    std::string method;
};

OrbitStats average_orbit_length(const PermMap &m, int L, const OrbitOptions &opts = {});

/// Least-squares slope of log_mean against L.
double log_slope(const std::vector<OrbitStats> &stats);

enum class RecurrenceMethod { exhaustive_lcm, matrix_order, sampled_lower_bound };

std::string to_string(RecurrenceMethod m);

struct RecurrenceOptions {
    uint64_t table_cap = uint64_t{1} << 24;
    int samples = 200;
    uint64_t seed = 1;
    uint64_t budget = 100'000'000;
    Exec exec = Exec::parallel;
};

struct RecurrenceResult {
    int L = 0;
    BigInt T = 0;
    RecurrenceMethod method = RecurrenceMethod::exhaustive_lcm;
    bool lower_bound = false;
    std::vector<std::string> caveats;
};

RecurrenceResult recurrence_time(const PermMap &m, int L, RecurrenceMethod method, const RecurrenceOptions &opts = {});

/// p when the map is (a, b) ↦ (a + b, a − b) mod p for an odd prime p, else 0.
int64_t linear_prime(const PermMap &m);

}  // namespace duc
