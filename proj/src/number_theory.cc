#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "duc/linear_ca.h"

namespace duc {

namespace {

using u128 = unsigned __int128;

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) { return static_cast<uint64_t>(u128(a) * b % m); }

uint64_t powmod(uint64_t a, uint64_t e, uint64_t m) {
    uint64_t r = 1 % m;
    a %= m;
    while (e > 0) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

uint64_t pollard_brent(uint64_t n, uint64_t c) {
    if (n % 2 == 0) return 2;
    const uint64_t m = 128;
    uint64_t y = 2, g = 1, r = 1, q = 1, x = 0, ys = 0;
    auto f = [&](uint64_t v) { return (mulmod(v, v, n) + c) % n; };
    while (g == 1) {
        x = y;
        for (uint64_t i = 0; i < r; i++) y = f(y);
        for (uint64_t k = 0; k < r && g == 1; k += m) {
            ys = y;
            for (uint64_t i = 0; i < std::min(m, r - k); i++) {
                y = f(y);
                q = mulmod(q, x > y ? x - y : y - x, n);
            }
            g = std::gcd(q, n);
        }
        r *= 2;
    }
    if (g == n) {
        do {
            ys = f(ys);
            g = std::gcd(x > ys ? x - ys : ys - x, n);
        } while (g == 1);
    }
    return g;
}

void factor_into(uint64_t n, std::map<uint64_t, int> &out) {
    if (n == 1) return;
    for (uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        while (n % p == 0) {
            out[p]++;
            n /= p;
        }
    }
    if (n == 1) return;
    if (is_prime(n)) {
        out[n]++;
        return;
    }
    uint64_t d = n;
    for (uint64_t c = 1; d == n; c++) d = pollard_brent(n, c);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace

bool is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    uint64_t d = n - 1;
    int r = 0;
    while (d % 2 == 0) {
        d /= 2;
        r++;
    }
    for (uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < r && composite; i++) {
            x = mulmod(x, x, n);
            composite = x != n - 1;
        }
        if (composite) return false;
    }
    return true;
}

Factorization factorize(uint64_t n) {
    if (n == 0) throw std::invalid_argument("factorize: zero");
    std::map<uint64_t, int> m;
    factor_into(n, m);
    return {m.begin(), m.end()};
}

Factorization merge(const Factorization &a, const Factorization &b) {
    std::map<uint64_t, int> m(a.begin(), a.end());
    for (const auto &[q, e] : b) m[q] += e;
    return {m.begin(), m.end()};
}

BigInt evaluate(const Factorization &f) {
    BigInt r = 1;
    for (const auto &[q, e] : f)
        for (int i = 0; i < e; i++) r *= q;
    return r;
}

uint64_t multiplicative_order(uint64_t a, uint64_t m) {
    if (m == 1) return 1;
    if (std::gcd(a % m, m) != 1) throw std::invalid_argument("multiplicative_order: not a unit");
    // The order divides the exponent of the unit group, which divides m·∏(q−1).
    uint64_t e = m;
    for (const auto &[q, k] : factorize(m)) e = e / q * (q - 1);
    uint64_t t = e;
    for (const auto &[q, k] : factorize(e)) {
        for (int i = 0; i < k && t % q == 0 && powmod(a, t / q, m) == 1; i++) t /= q;
    }
    return t;
}

}  // namespace duc
