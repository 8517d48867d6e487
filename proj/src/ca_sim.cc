#include "duc/ca_sim.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>
#include <set>
#include <stdexcept>

namespace duc {

namespace {

uint64_t mix64(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

// N^L, or 0 when it exceeds cap.
uint64_t state_count(int n, int L, uint64_t cap) {
    uint64_t q = 1;
    for (int i = 0; i < L; i++) {
        if (q > cap / static_cast<uint64_t>(n)) return 0;
        q *= static_cast<uint64_t>(n);
    }
    return q;
}

void check_volume(int L) {
    if (L < 2 || L % 2 != 0) throw std::invalid_argument("ca_sim: L must be even and at least 2");
}

}  // namespace

BrickworkCA::BrickworkCA(const PermMap &m) : n_(m.n()) {
    if (n_ > 255) throw std::invalid_argument("BrickworkCA: N must fit in one byte");
    c_.resize(n_ * n_);
    d_.resize(n_ * n_);
    for (int a = 0; a < n_; a++)
        for (int b = 0; b < n_; b++) {
            c_[a * n_ + b] = static_cast<uint8_t>(m.c(a, b));
            d_[a * n_ + b] = static_cast<uint8_t>(m.d(a, b));
        }
}

void BrickworkCA::step(CAState &s, Sublattice part) const {
    const size_t L = s.size();
    if (L % 2 != 0) throw std::invalid_argument("BrickworkCA: L must be even");
    const size_t first = part == Sublattice::odd ? 0 : 1;
    for (size_t x = first; x < L; x += 2) {
        const size_t y = x + 1 == L ? 0 : x + 1;
        const int ab = s[x] * n_ + s[y];
        s[x] = c_[ab];
        s[y] = d_[ab];
    }
}

void BrickworkCA::floquet(CAState &s) const {
    step(s, Sublattice::odd);
    step(s, Sublattice::even);
}

uint64_t BrickworkCA::encode(const CAState &s) const {
    uint64_t idx = 0;
    for (uint8_t v : s) idx = idx * static_cast<uint64_t>(n_) + v;
    return idx;
}

CAState BrickworkCA::decode(uint64_t index, int L) const {
    CAState s(L);
    for (int i = L - 1; i >= 0; i--) {
        s[i] = static_cast<uint8_t>(index % static_cast<uint64_t>(n_));
        index /= static_cast<uint64_t>(n_);
    }
    return s;
}

void check_state(const CAState &s, int n) {
    if (s.size() % 2 != 0 || s.empty()) throw std::invalid_argument("CAState: L must be even and positive");
    for (uint8_t v : s)
        if (v >= n) throw std::invalid_argument("CAState: digit out of range");
}

SampleStream::SampleStream(uint64_t seed, uint64_t repetition, uint64_t sample)
    : key_(mix64(seed ^ mix64(mix64(repetition + kGamma) ^ (sample * kGamma)))) {}

uint64_t SampleStream::next() { return mix64(key_ + (++counter_) * kGamma); }

uint8_t SampleStream::digit(int n) {
    const uint64_t un = static_cast<uint64_t>(n);
    const uint64_t limit = UINT64_MAX - UINT64_MAX % un;
    uint64_t x;
    do {
        x = next();
    } while (x >= limit);
    return static_cast<uint8_t>(x % un);
}

CAState SampleStream::state(int n, int L) {
    CAState s(L);
    for (auto &v : s) v = digit(n);
    return s;
}

OrbitResult orbit_length(const BrickworkCA &ca, const CAState &s, uint64_t budget) {
    check_state(s, ca.n());
    CAState cur = s;
    for (uint64_t k = 1; k <= budget; k++) {
        ca.floquet(cur);
        if (std::memcmp(cur.data(), s.data(), s.size()) == 0) return {k, false};
    }
    return {budget, true};
}

CycleTable cycle_table(const BrickworkCA &ca, int L, uint64_t cap, Exec exec) {
    check_volume(L);
    const uint64_t q = state_count(ca.n(), L, cap);
    if (q == 0) throw std::invalid_argument("cycle_table: N^L exceeds the state-space cap");
    if (q > UINT32_MAX) throw std::invalid_argument("cycle_table: state space exceeds 32-bit indices");
    std::vector<uint32_t> next(q);
    const int64_t total = static_cast<int64_t>(q);
    auto fill = [&](int64_t idx) {
        CAState s = ca.decode(static_cast<uint64_t>(idx), L);
        ca.floquet(s);
        next[idx] = static_cast<uint32_t>(ca.encode(s));
    };
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (int64_t idx = 0; idx < total; idx++) fill(idx);
    } else {
        for (int64_t idx = 0; idx < total; idx++) fill(idx);
    }
    CycleTable out;
    out.L = L;
    out.states = q;
    out.cycle_length.assign(q, 0);
    for (uint64_t s = 0; s < q; s++) {
        if (out.cycle_length[s] != 0) continue;
        uint32_t len = 1;
        for (uint32_t x = next[s]; x != s; x = next[x]) len++;
        out.cycle_length[s] = len;
        for (uint32_t x = next[s]; x != s; x = next[x]) out.cycle_length[x] = len;
    }
    return out;
}

OrbitStats average_orbit_length(const PermMap &m, int L, const OrbitOptions &opts) {
    check_volume(L);
    if (opts.samples < 1 || opts.repetitions < 1) throw std::invalid_argument("average_orbit_length: empty sample");
    const BrickworkCA ca(m);
    OrbitStats st;
    st.L = L;
    st.n = m.n();
    st.samples = opts.samples;
    st.repetitions = opts.repetitions;
    st.seed = opts.seed;
    const int64_t total = static_cast<int64_t>(opts.samples) * opts.repetitions;
    st.orbit_lengths.assign(total, 0);
    std::vector<uint8_t> exceeded(total, 0);

    CycleTable table;
    const bool use_table = state_count(m.n(), L, opts.table_cap) != 0;
    if (use_table) table = cycle_table(ca, L, opts.table_cap, opts.exec);
    st.method = use_table ? "cycle_table" : "iteration";

    auto run = [&](int64_t k) {
        SampleStream rng(opts.seed, static_cast<uint64_t>(k / opts.samples), static_cast<uint64_t>(k % opts.samples));
        const CAState s = rng.state(m.n(), L);
        if (use_table) {
            st.orbit_lengths[k] = table.cycle_length[ca.encode(s)];
        } else {
            const OrbitResult r = orbit_length(ca, s, opts.budget);
            st.orbit_lengths[k] = r.length;
            exceeded[k] = r.budget_exceeded;
        }
    };
    if (opts.exec == Exec::parallel && !use_table) {
#pragma omp parallel for schedule(dynamic, 1)
        for (int64_t k = 0; k < total; k++) run(k);
    } else {
        for (int64_t k = 0; k < total; k++) run(k);
    }

    const double logn = std::log(static_cast<double>(m.n()));
    double sum = 0;
    for (int r = 0; r < opts.repetitions; r++) {
        double rs = 0;
        for (int i = 0; i < opts.samples; i++) rs += static_cast<double>(st.orbit_lengths[r * opts.samples + i]);
        sum += rs;
        st.repetition_log_means.push_back(std::log(rs / opts.samples) / logn);
    }
    st.mean = sum / static_cast<double>(total);
    st.log_mean = std::log(st.mean) / logn;
    st.budget_exceeded = std::count(exceeded.begin(), exceeded.end(), 1);
    if (opts.repetitions > 1) {
        const double avg = std::accumulate(st.repetition_log_means.begin(), st.repetition_log_means.end(), 0.0) /
                           opts.repetitions;
        double var = 0;
        for (double v : st.repetition_log_means) var += (v - avg) * (v - avg);
        var /= opts.repetitions - 1;
        st.rel_variance_log = avg != 0 ? std::sqrt(var) / std::abs(avg) : 0;
    }
    return st;
}

double log_slope(const std::vector<OrbitStats> &stats) {
    if (stats.size() < 2) throw std::invalid_argument("log_slope: need at least two volumes");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double k = static_cast<double>(stats.size());
    for (const auto &s : stats) {
        sx += s.L;
        sy += s.log_mean;
        sxx += static_cast<double>(s.L) * s.L;
        sxy += s.L * s.log_mean;
    }
    return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

std::string to_string(RecurrenceMethod m) {
    switch (m) {
        case RecurrenceMethod::exhaustive_lcm: return "exhaustive_lcm";
        case RecurrenceMethod::matrix_order: return "matrix_order";
        case RecurrenceMethod::sampled_lower_bound: return "sampled_lower_bound";
    }
    return "unknown";
}

int64_t linear_prime(const PermMap &m) {
    const int p = m.n();
    if (p < 3 || !is_prime(static_cast<uint64_t>(p))) return 0;
    for (int a = 0; a < p; a++)
        for (int b = 0; b < p; b++) {
            if (m.c(a, b) != (a + b) % p || m.d(a, b) != ((a - b) % p + p) % p) return 0;
        }
    return p;
}

RecurrenceResult recurrence_time(const PermMap &m, int L, RecurrenceMethod method, const RecurrenceOptions &opts) {
    check_volume(L);
    RecurrenceResult out;
    out.L = L;
    out.method = method;
    const BrickworkCA ca(m);
    switch (method) {
        case RecurrenceMethod::exhaustive_lcm: {
            if (state_count(m.n(), L, opts.table_cap) == 0) {
                throw std::invalid_argument("recurrence_time: N^L exceeds the exhaustive cap");
            }
            const CycleTable t = cycle_table(ca, L, opts.table_cap, opts.exec);
            std::set<uint32_t> lengths(t.cycle_length.begin(), t.cycle_length.end());
            BigInt acc = 1;
            for (uint32_t len : lengths) acc = acc / boost::multiprecision::gcd(acc, BigInt(len)) * len;
            out.T = acc;
            break;
        }
        case RecurrenceMethod::matrix_order: {
            const int64_t p = linear_prime(m);
            if (p == 0) throw std::invalid_argument("recurrence_time: matrix_order needs the linear map (a+b, a-b) mod p");
            const OrderReport r = duc::matrix_order(L, p);
            out.T = r.T;
            out.caveats = r.caveats;
            break;
        }
        case RecurrenceMethod::sampled_lower_bound: {
            out.lower_bound = true;
            BigInt acc = 1;
            int64_t exceeded = 0;
            for (int i = 0; i < opts.samples; i++) {
                SampleStream rng(opts.seed, 0, static_cast<uint64_t>(i));
                const OrbitResult r = orbit_length(ca, rng.state(m.n(), L), opts.budget);
                if (r.budget_exceeded) {
                    exceeded++;
                    continue;
                }
                acc = acc / boost::multiprecision::gcd(acc, BigInt(r.length)) * r.length;
            }
            out.T = acc;
            out.caveats.push_back("lcm over sampled orbits is a lower bound");
            if (exceeded > 0) out.caveats.push_back(std::to_string(exceeded) + " samples exceeded the step budget");
            break;
        }
    }
    return out;
}

}  // namespace duc
