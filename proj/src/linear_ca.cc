#include "duc/linear_ca.h"

#include <numeric>
#include <random>
#include <stdexcept>

namespace duc {

namespace {

int64_t mod(int64_t a, int64_t p) {
    a %= p;
    return a < 0 ? a + p : a;
}

void check_params(int L, int64_t p) {
    if (L < 2 || L % 2 != 0) throw std::invalid_argument("linear_ca: L must be even and positive");
    if (p < 3 || !is_prime(static_cast<uint64_t>(p))) throw std::invalid_argument("linear_ca: p must be an odd prime");
}

uint64_t upow(uint64_t b, uint64_t e) {
    uint64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

BigInt bpow(int64_t b, uint64_t e) {
    BigInt r = 1;
    while (e-- > 0) r *= b;
    return r;
}

BigInt lcm(const BigInt &a, const BigInt &b) { return a / boost::multiprecision::gcd(a, b) * b; }

// Shrinks a known multiple of the order one prime at a time.
template <typename IsIdentity>
BigInt descend(BigInt t, const Factorization &f, IsIdentity is_identity) {
    for (const auto &[q, e] : f) {
        for (int i = 0; i < e && t % q == 0 && is_identity(BigInt(t / q)); i++) t /= q;
    }
    return t;
}

// Factorization of p^{2s} − 1 through its two coprime-up-to-2 halves.
std::optional<Factorization> factor_p2s_minus_one(int64_t p, uint64_t s, uint64_t limit) {
    const BigInt hi = bpow(p, s) + 1;
    if (hi > limit) return std::nullopt;
    const uint64_t ps = upow(static_cast<uint64_t>(p), s);
    return merge(factorize(ps - 1), factorize(ps + 1));
}

// Degree of the field generated by ω + ω^{-1} for ω of order l.
uint64_t field_degree(uint64_t p, uint64_t l, uint64_t n) {
    if (n % 2 == 1) return n;
    uint64_t x = 1;
    for (uint64_t i = 0; i < n / 2; i++) x = x * p % l;
    return x == l - 1 ? n / 2 : n;
}

struct Mat2 {
    FiniteField::Elem e[4];
};

Mat2 mat2_mul(const FiniteField &f, const Mat2 &a, const Mat2 &b) {
    Mat2 r;
    r.e[0] = f.add(f.mul(a.e[0], b.e[0]), f.mul(a.e[1], b.e[2]));
    r.e[1] = f.add(f.mul(a.e[0], b.e[1]), f.mul(a.e[1], b.e[3]));
    r.e[2] = f.add(f.mul(a.e[2], b.e[0]), f.mul(a.e[3], b.e[2]));
    r.e[3] = f.add(f.mul(a.e[2], b.e[1]), f.mul(a.e[3], b.e[3]));
    return r;
}

bool mat2_power_is_identity(const FiniteField &f, const Mat2 &m, BigInt k) {
    Mat2 r{{f.one(), f.zero(), f.zero(), f.one()}}, b = m;
    while (k > 0) {
        if (bit_test(k, 0)) r = mat2_mul(f, r, b);
        k >>= 1;
        if (k > 0) b = mat2_mul(f, b, b);
    }
    return r.e[0] == f.one() && r.e[3] == f.one() && f.is_zero(r.e[1]) && f.is_zero(r.e[2]);
}

bool certify(const GFMatrix &v, const BigInt &t, const Factorization &tf) {
    if (!v.pow(t).is_identity()) return false;
    for (const auto &[q, e] : tf) {
        if (v.pow(t / q).is_identity()) return false;
    }
    return true;
}

Factorization factor_big(BigInt t) {
    Factorization out;
    if (t > std::numeric_limits<uint64_t>::max()) {
        throw std::domain_error("factor_big: value exceeds 64 bits");
    }
    return t == 1 ? out : factorize(static_cast<uint64_t>(t));
}

OrderReport order_direct(const BrickworkMatrix &m, OrderReport rep, uint64_t budget) {
    const int L = m.L;
    std::vector<int64_t> e0(L, 0), e1(L, 0);
    e0[0] = 1;
    e1[1] = 1;
    std::vector<int64_t> x0 = e0, x1 = e1;
    // V commutes with the two-site shift, so fixing e0 and e1 fixes everything.
    for (uint64_t k = 1; k <= budget; k++) {
        x0 = apply_v(x0, m.p);
        x1 = apply_v(x1, m.p);
        if (x0 == e0 && x1 == e1) {
            rep.T = k;
            rep.method = "direct";
            return rep;
        }
    }
    rep.T = 0;
    rep.method = "direct";
    rep.budget_exceeded = true;
    rep.caveats.push_back("direct iteration budget exhausted at " + std::to_string(budget));
    return rep;
}

}  // namespace

std::vector<int64_t> apply_v(const std::vector<int64_t> &x, int64_t p) {
    const int L = static_cast<int>(x.size());
    const int l = L / 2;
    std::vector<int64_t> out(L);
    for (int j = 0; j < l; j++) {
        const int jm = (j + l - 1) % l, jp = (j + 1) % l;
        const int64_t y = x[2 * j], z = x[2 * j + 1];
        const int64_t ym = x[2 * jm], zm = x[2 * jm + 1];
        const int64_t yp = x[2 * jp], zp = x[2 * jp + 1];
        out[2 * j] = mod(ym - y - zm - z, p);
        out[2 * j + 1] = mod(y + yp - z + zp, p);
    }
    return out;
}

GFMatrix pair_matrix(int L, int64_t p) {
    GFMatrix a(L, L, p);
    for (int j = 0; j < L; j += 2) {
        a.at(j, j) = 1;
        a.at(j, j + 1) = 1;
        a.at(j + 1, j) = 1;
        a.at(j + 1, j + 1) = p - 1;
    }
    return a;
}

GFMatrix shift_matrix(int L, int64_t p) {
    GFMatrix c(L, L, p);
    for (int i = 0; i < L; i++) c.at((i + 1) % L, i) = 1;
    return c;
}

BrickworkMatrix build_v(int L, int64_t p) {
    check_params(L, p);
    BrickworkMatrix out;
    out.L = L;
    out.p = p;
    out.v = GFMatrix(L, L, p);
    for (int k = 0; k < L; k++) {
        std::vector<int64_t> e(L, 0);
        e[k] = 1;
        const auto col = apply_v(e, p);
        for (int i = 0; i < L; i++) out.v.at(i, k) = col[i];
    }
    const GFMatrix a = pair_matrix(L, p);
    const GFMatrix c = shift_matrix(L, p);
    const GFMatrix c_inv = c.pow(L - 1);
    const GFMatrix b = c * a * c_inv;
    if (!(b * a == out.v)) throw std::logic_error("build_v: component rule differs from B·A");
    std::mt19937_64 rng(static_cast<uint64_t>(L) * 1000003u + static_cast<uint64_t>(p));
    std::uniform_int_distribution<int64_t> digit(0, p - 1);
    for (int rep = 0; rep < 4; rep++) {
        std::vector<int64_t> x(L);
        for (auto &v : x) v = digit(rng);
        if (b.apply(a.apply(x)) != apply_v(x, p)) throw std::logic_error("build_v: component rule check failed");
    }
    return out;
}

OrderReport matrix_order(const BrickworkMatrix &m, const OrderOptions &opts) {
    OrderReport rep;
    rep.L = m.L;
    rep.p = m.p;
    rep.ell = m.L / 2;
    int l_free = rep.ell;
    while (l_free % m.p == 0) {
        l_free /= static_cast<int>(m.p);
        rep.p_valuation++;
    }
    rep.n = multiplicative_order(static_cast<uint64_t>(m.p), static_cast<uint64_t>(l_free));
    rep.s = rep.n % 2 == 1 ? rep.n : rep.n / 2;
    rep.s_field = field_degree(static_cast<uint64_t>(m.p), static_cast<uint64_t>(l_free), rep.n);

    if (opts.method == OrderMethod::direct) {
        rep = order_direct(m, rep, opts.direct_budget);
    } else {
        const auto half = factor_p2s_minus_one(m.p, rep.s_field, opts.factor_limit);
        bool done = false;
        if (half) {
            rep.bound_factors = merge(*half, Factorization{{static_cast<uint64_t>(m.p), rep.p_valuation + 1}});
            rep.bound = evaluate(rep.bound_factors);
            if (m.v.pow(rep.bound).is_identity()) {
                rep.T = descend(rep.bound, rep.bound_factors,
                                [&](const BigInt &k) { return m.v.pow(k).is_identity(); });
                rep.method = "descent";
                done = true;
            } else {
                rep.caveats.push_back("V^bound != I; falling back to direct iteration");
            }
        } else {
            rep.caveats.push_back("p^s + 1 exceeds the factorization limit; falling back to direct iteration");
        }
        if (!done) {
            if (opts.method == OrderMethod::descent) throw std::runtime_error("matrix_order: descent unavailable");
            rep = order_direct(m, rep, opts.direct_budget);
        }
    }
    if (!rep.budget_exceeded) rep.certified = certify(m.v, rep.T, factor_big(rep.T));
    return rep;
}

OrderReport matrix_order(int L, int64_t p, const OrderOptions &opts) { return matrix_order(build_v(L, p), opts); }

CorollaryReport verify_corollary_2pm(int64_t p, int m_max, const OrderOptions &opts) {
    check_params(2, p);
    CorollaryReport rep;
    rep.p = p;
    rep.a = 2 * multiplicative_order(static_cast<uint64_t>(mod(-4, p)), static_cast<uint64_t>(p));
    rep.holds = true;
    uint64_t pm = 1;
    for (int m = 0; m <= m_max; m++, pm *= static_cast<uint64_t>(p)) {
        CorollaryRow row;
        row.m = m;
        row.L = static_cast<int>(2 * pm);
        row.T = matrix_order(row.L, p, opts).T;
        if (row.T % rep.a == 0) {
            BigInt rest = row.T / rep.a;
            int mu = 0;
            while (rest % p == 0) {
                rest /= p;
                mu++;
            }
            if (rest == 1) row.mu = mu;
        }
        row.in_range = row.mu && *row.mu <= m && *row.mu >= m - 2;
        row.lower_bound = 4 * row.T >= row.L;
        rep.holds = rep.holds && row.in_range && row.lower_bound;
        rep.rows.push_back(row);
    }
    return rep;
}

DivisibilityReport verify_divisibility(int64_t p, int L, const OrderOptions &opts) {
    check_params(L, p);
    const int ell = L / 2;
    if (ell % p == 0) throw std::invalid_argument("verify_divisibility: requires gcd(L/2, p) = 1");
    DivisibilityReport rep;
    rep.p = p;
    rep.L = L;
    const OrderReport o = matrix_order(L, p, opts);
    rep.T = o.T;
    rep.s = o.s;
    rep.multiple = p * (bpow(p, 2 * rep.s) - 1);
    rep.divides = rep.T != 0 && rep.multiple % rep.T == 0;
    if (rep.divides) rep.quotient = rep.multiple / rep.T;
    rep.s_field = o.s_field;
    rep.field_multiple = p * (bpow(p, 2 * rep.s_field) - 1);
    rep.divides_field = rep.T != 0 && rep.field_multiple % rep.T == 0;
    if (ell >= 2) rep.exponential_bound = rep.T <= bpow(p, static_cast<uint64_t>(L - 1)) - p;
    // Repunit (p^k − 1)/(p − 1) for some k ≥ 2.
    for (BigInt r = 1 + p; r <= ell; r = r * p + 1) {
        if (r == ell) {
            const BigInt l = ell;
            rep.repunit_bound = p * (p - 1) * l * ((p - 1) * l + 1);
            rep.repunit_bound_holds = rep.T <= *rep.repunit_bound;
        }
    }
    return rep;
}

BlockSpectrumReport block_spectrum(int64_t p, int L) {
    check_params(L, p);
    const int ell = L / 2;
    if (ell % p == 0) throw std::invalid_argument("block_spectrum: requires gcd(L/2, p) = 1");
    BlockSpectrumReport rep;
    rep.p = p;
    rep.L = L;
    rep.n = multiplicative_order(static_cast<uint64_t>(p), static_cast<uint64_t>(ell));
    const FiniteField f(p, static_cast<int>(rep.n));
    rep.modulus = f.modulus();
    const auto half = factor_p2s_minus_one(p, rep.n, uint64_t{1} << 62);
    if (!half) throw std::domain_error("block_spectrum: extension too large to factor");
    const Factorization bound_f = merge(*half, Factorization{{static_cast<uint64_t>(p), 1}});
    const BigInt bound = evaluate(bound_f);
    const auto w0 = f.root_of_unity(static_cast<uint64_t>(ell));
    const auto one = f.one();
    const auto two = f.constant(2), four = f.constant(4), six = f.constant(6);
    rep.lcm_order = 1;
    auto w = one;
    for (int k = 0; k < ell; k++, w = f.mul(w, w0)) {
        BlockInfo b;
        b.k = static_cast<uint64_t>(k);
        b.omega = w;
        const auto wi = f.inv(w);
        b.entries[0] = f.sub(wi, one);
        b.entries[1] = f.neg(f.add(wi, one));
        b.entries[2] = f.add(w, one);
        b.entries[3] = f.sub(w, one);
        const auto trace = f.add(b.entries[0], b.entries[3]);
        const auto det = f.sub(f.mul(b.entries[0], b.entries[3]), f.mul(b.entries[1], b.entries[2]));
        const auto w_sum = f.add(w, wi);
        b.charpoly_ok = f.neg(trace) == f.sub(two, w_sum) && det == four;
        b.minus_one = w == f.neg(one);
        b.trace_six = w_sum == six;
        const Mat2 m{{b.entries[0], b.entries[1], b.entries[2], b.entries[3]}};
        if (!mat2_power_is_identity(f, m, bound)) throw std::logic_error("block_spectrum: block order bound failed");
        b.order = descend(bound, bound_f, [&](const BigInt &e) { return mat2_power_is_identity(f, m, e); });
        rep.lcm_order = lcm(rep.lcm_order, b.order);
        rep.blocks.push_back(std::move(b));
    }
    return rep;
}

CoprimeReport coprime_decomposition_check(int64_t p, int a, int b, const OrderOptions &opts) {
    if (a < 1 || b < 1 || std::gcd(a, b) != 1) throw std::invalid_argument("coprime_decomposition_check: a, b coprime");
    CoprimeReport rep;
    rep.p = p;
    rep.a = a;
    rep.b = b;
    rep.t_a = matrix_order(2 * a, p, opts).T;
    rep.t_b = matrix_order(2 * b, p, opts).T;
    rep.t_ab = matrix_order(2 * a * b, p, opts).T;
    rep.lcm = lcm(rep.t_a, rep.t_b);
    const BigInt g = boost::multiprecision::gcd(rep.lcm, rep.t_ab);
    rep.d = lcm(rep.lcm / g, rep.t_ab / g);
    rep.d_divides_p_minus_1 = (p - 1) % rep.d == 0;
    return rep;
}

KernelReport kernel_check(int64_t p, int L) {
    check_params(L, p);
    int ell = L / 2;
    while (ell % p == 0) ell /= static_cast<int>(p);
    if (ell != 1) throw std::invalid_argument("kernel_check: L/2 must be a power of p");
    KernelReport rep;
    rep.p = p;
    rep.L = L;
    const GFMatrix c = shift_matrix(L, p);
    GFMatrix t = c * c;
    for (int i = 0; i < L; i++) t.at(i, i) = mod(t.at(i, i) - 1, p);
    rep.kernel_dim = L - t.rank();
    const GFMatrix v = build_v(L, p).v;
    rep.commutes = v * t == t * v;
    const GFMatrix v2 = v * v;
    rep.v_squared_minus_four = true;
    for (int parity = 0; parity < 2; parity++) {
        std::vector<int64_t> x(L, 0);
        for (int i = parity; i < L; i += 2) x[i] = 1;
        const auto y = v2.apply(x);
        for (int i = 0; i < L; i++) rep.v_squared_minus_four = rep.v_squared_minus_four && y[i] == mod(-4 * x[i], p);
    }
    return rep;
}

}  // namespace duc
