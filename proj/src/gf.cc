#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "duc/linear_ca.h"

namespace duc {

namespace {

int64_t mod(int64_t a, int64_t p) {
    a %= p;
    return a < 0 ? a + p : a;
}

int64_t inverse_mod(int64_t a, int64_t p) {
    int64_t r = 1, b = mod(a, p), e = p - 2;
    while (e > 0) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

using Poly = std::vector<int64_t>;

void trim(Poly &a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mod(Poly a, const Poly &f, int64_t p) {
    trim(a);
    const int64_t lead_inv = inverse_mod(f.back(), p);
    const size_t df = f.size() - 1;
    while (a.size() > df) {
        const int64_t c = a.back() * lead_inv % p;
        const size_t shift = a.size() - 1 - df;
        for (size_t i = 0; i <= df; i++) a[shift + i] = mod(a[shift + i] - c * f[i], p);
        trim(a);
    }
    return a;
}

Poly poly_mulmod(const Poly &a, const Poly &b, const Poly &f, int64_t p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); i++) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); j++) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    return poly_mod(std::move(r), f, p);
}

Poly poly_powmod(Poly a, BigInt k, const Poly &f, int64_t p) {
    Poly r = poly_mod(Poly{1}, f, p);
    a = poly_mod(a, f, p);
    while (k > 0) {
        if (bit_test(k, 0)) r = poly_mulmod(r, a, f, p);
        a = poly_mulmod(a, a, f, p);
        k >>= 1;
    }
    return r;
}

Poly poly_gcd(Poly a, Poly b, int64_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

Poly poly_sub(Poly a, const Poly &b, int64_t p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (size_t i = 0; i < b.size(); i++) a[i] = mod(a[i] - b[i], p);
    trim(a);
    return a;
}

}  // namespace

GFMatrix::GFMatrix(int rows, int cols, int64_t p)
    : rows_(rows), cols_(cols), p_(p), data_(static_cast<size_t>(rows) * cols, 0) {}

GFMatrix GFMatrix::identity(int size, int64_t p) {
    GFMatrix m(size, size, p);
    for (int i = 0; i < size; i++) m.at(i, i) = 1;
    return m;
}

GFMatrix GFMatrix::operator*(const GFMatrix &o) const {
    if (cols_ != o.rows_ || p_ != o.p_) throw std::invalid_argument("GFMatrix: shape mismatch");
    GFMatrix r(rows_, o.cols_, p_);
    for (int i = 0; i < rows_; i++)
        for (int k = 0; k < cols_; k++) {
            const int64_t a = at(i, k);
            if (a == 0) continue;
            for (int j = 0; j < o.cols_; j++) r.at(i, j) = (r.at(i, j) + a * o.at(k, j)) % p_;
        }
    return r;
}

std::vector<int64_t> GFMatrix::apply(const std::vector<int64_t> &x) const {
    std::vector<int64_t> y(rows_, 0);
    for (int i = 0; i < rows_; i++) {
        int64_t acc = 0;
        for (int j = 0; j < cols_; j++) acc = (acc + at(i, j) * x[j]) % p_;
        y[i] = acc;
    }
    return y;
}

GFMatrix GFMatrix::pow(const BigInt &k) const {
    GFMatrix r = identity(rows_, p_), b = *this;
    BigInt e = k;
    while (e > 0) {
        if (bit_test(e, 0)) r = r * b;
        e >>= 1;
        if (e > 0) b = b * b;
    }
    return r;
}

bool GFMatrix::is_identity() const {
    for (int i = 0; i < rows_; i++)
        for (int j = 0; j < cols_; j++)
            if (at(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

int GFMatrix::rank() const {
    GFMatrix m = *this;
    int r = 0;
    for (int c = 0; c < cols_ && r < rows_; c++) {
        int piv = -1;
        for (int i = r; i < rows_; i++)
            if (m.at(i, c) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        for (int j = 0; j < cols_; j++) std::swap(m.at(piv, j), m.at(r, j));
        const int64_t inv = inverse_mod(m.at(r, c), p_);
        for (int i = 0; i < rows_; i++) {
            if (i == r || m.at(i, c) == 0) continue;
            const int64_t f = m.at(i, c) * inv % p_;
            for (int j = 0; j < cols_; j++) m.at(i, j) = mod(m.at(i, j) - f * m.at(r, j), p_);
        }
        r++;
    }
    return r;
}

int64_t GFMatrix::determinant() const {
    if (rows_ != cols_) throw std::invalid_argument("determinant: matrix not square");
    GFMatrix m = *this;
    int64_t det = 1;
    for (int c = 0; c < cols_; c++) {
        int piv = -1;
        for (int i = c; i < rows_; i++)
            if (m.at(i, c) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) return 0;
        if (piv != c) {
            for (int j = 0; j < cols_; j++) std::swap(m.at(piv, j), m.at(c, j));
            det = mod(-det, p_);
        }
        det = det * m.at(c, c) % p_;
        const int64_t inv = inverse_mod(m.at(c, c), p_);
        for (int i = c + 1; i < rows_; i++) {
            if (m.at(i, c) == 0) continue;
            const int64_t f = m.at(i, c) * inv % p_;
            for (int j = c; j < cols_; j++) m.at(i, j) = mod(m.at(i, j) - f * m.at(c, j), p_);
        }
    }
    return det;
}

bool is_irreducible(const std::vector<int64_t> &f, int64_t p) {
    const int n = static_cast<int>(f.size()) - 1;
    if (n < 1 || f.back() != 1) throw std::invalid_argument("is_irreducible: expects a monic polynomial");
    if (n == 1) return true;
    const Poly x{0, 1};
    // x^{p^k} mod f by repeated p-th powers.
    std::vector<Poly> frob(n + 1);
    frob[0] = poly_mod(x, f, p);
    for (int k = 1; k <= n; k++) frob[k] = poly_powmod(frob[k - 1], p, f, p);
    if (!poly_sub(frob[n], x, p).empty()) return false;
    for (const auto &[q, e] : factorize(static_cast<uint64_t>(n))) {
        Poly g = poly_gcd(f, poly_sub(frob[n / q], x, p), p);
        if (g.size() != 1) return false;
    }
    return true;
}

FiniteField::FiniteField(int64_t p, int n) : p_(p), n_(n) {
    if (p < 2 || !is_prime(static_cast<uint64_t>(p))) throw std::invalid_argument("FiniteField: p must be prime");
    if (n < 1) throw std::invalid_argument("FiniteField: degree must be positive");
    std::vector<int64_t> f(n + 1, 0);
    f[n] = 1;
    // Counting in base p with the constant term as least significant digit.
    while (true) {
        if (is_irreducible(f, p)) break;
        int i = 0;
        while (i < n && ++f[i] == p) f[i++] = 0;
        if (i == n) throw std::logic_error("FiniteField: no irreducible found");
    }
    modulus_ = f;
}

uint64_t FiniteField::size() const {
    uint64_t q = 1;
    for (int i = 0; i < n_; i++) q *= static_cast<uint64_t>(p_);
    return q;
}

FiniteField::Elem FiniteField::constant(int64_t c) const {
    Elem e(n_, 0);
    e[0] = mod(c, p_);
    return e;
}

FiniteField::Elem FiniteField::add(const Elem &a, const Elem &b) const {
    Elem r(n_);
    for (int i = 0; i < n_; i++) r[i] = (a[i] + b[i]) % p_;
    return r;
}

FiniteField::Elem FiniteField::sub(const Elem &a, const Elem &b) const {
    Elem r(n_);
    for (int i = 0; i < n_; i++) r[i] = mod(a[i] - b[i], p_);
    return r;
}

FiniteField::Elem FiniteField::neg(const Elem &a) const { return sub(zero(), a); }

FiniteField::Elem FiniteField::mul(const Elem &a, const Elem &b) const {
    Poly r = poly_mulmod(a, b, modulus_, p_);
    r.resize(n_, 0);
    return r;
}

FiniteField::Elem FiniteField::pow(Elem a, const BigInt &k) const {
    Poly r = poly_powmod(std::move(a), k, modulus_, p_);
    r.resize(n_, 0);
    return r;
}

FiniteField::Elem FiniteField::inv(const Elem &a) const {
    if (is_zero(a)) throw std::domain_error("FiniteField: inverse of zero");
    return pow(a, BigInt(size()) - 2);
}

bool FiniteField::is_zero(const Elem &a) const {
    return std::all_of(a.begin(), a.end(), [](int64_t c) { return c == 0; });
}

FiniteField::Elem FiniteField::generator() const {
    const uint64_t q1 = size() - 1;
    const auto factors = factorize(q1);
    Elem e = zero();
    for (uint64_t code = 1; code <= q1; code++) {
        uint64_t c = code;
        for (int i = 0; i < n_; i++) {
            e[i] = static_cast<int64_t>(c % p_);
            c /= p_;
        }
        bool primitive = true;
        for (const auto &[q, k] : factors) {
            if (pow(e, q1 / q) == one()) {
                primitive = false;
                break;
            }
        }
        if (primitive) return e;
    }
    throw std::logic_error("FiniteField: no generator");
}

FiniteField::Elem FiniteField::root_of_unity(uint64_t l) const {
    const uint64_t q1 = size() - 1;
    if (l == 0 || q1 % l != 0) throw std::invalid_argument("root_of_unity: l must divide p^n - 1");
    return pow(generator(), q1 / l);
}

std::string FiniteField::to_string(const Elem &a) const {
    std::ostringstream os;
    bool first = true;
    for (int i = n_ - 1; i >= 0; i--) {
        if (a[i] == 0) continue;
        if (!first) os << " + ";
        first = false;
        if (i == 0 || a[i] != 1) os << a[i];
        if (i >= 1) os << "x";
        if (i >= 2) os << "^" << i;
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace duc
