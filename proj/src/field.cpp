#include "dqkd/field.hpp"

#include <stdexcept>

namespace dqkd {

bool is_prime(int n) {
    if (n < 2) return false;
    for (int q = 2; q * q <= n; ++q)
        if (n % q == 0) return false;
    return true;
}

std::optional<PrimePower> factor_prime_power(int d) {
    if (d < 2) return std::nullopt;
    int p = 2;
    while (d % p != 0) ++p;  // smallest factor, necessarily prime
    int m = 0, r = d;
    while (r % p == 0) {
        r /= p;
        ++m;
    }
    if (r != 1) return std::nullopt;
    return PrimePower{p, m};
}

namespace {

// Polynomials over GF(p) as coefficient vectors, low degree first.

std::vector<int> poly_product(const std::vector<int>& a, const std::vector<int>& b, int p) {
    std::vector<int> out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] = (out[i + j] + a[i] * b[j]) % p;
    return out;
}

// Remainder of a modulo monic b with deg(b) >= 1.
std::vector<int> poly_remainder(std::vector<int> a, const std::vector<int>& b, int p) {
    const int db = static_cast<int>(b.size()) - 1;
    for (int i = static_cast<int>(a.size()) - 1; i >= db; --i) {
        const int c = a[i];
        if (c == 0) continue;
        a[i] = 0;
        for (int j = 0; j < db; ++j)
            a[i - db + j] = ((a[i - db + j] - c * b[j]) % p + p) % p;
    }
    a.resize(db);
    return a;
}

bool poly_is_zero(const std::vector<int>& a) {
    for (int c : a)
        if (c != 0) return false;
    return true;
}

// Monic f of degree m >= 2 is irreducible iff no monic divisor of degree
// 1..m/2 exists. Sizes here are tiny, so trial division is exhaustive.
bool poly_irreducible(const std::vector<int>& f, int p) {
    const int m = static_cast<int>(f.size()) - 1;
    for (int deg = 1; 2 * deg <= m; ++deg) {
        int count = 1;
        for (int i = 0; i < deg; ++i) count *= p;
        for (int v = 0; v < count; ++v) {
            std::vector<int> g(deg + 1, 0);
            int x = v;
            for (int i = 0; i < deg; ++i) {
                g[i] = x % p;
                x /= p;
            }
            g[deg] = 1;
            if (poly_is_zero(poly_remainder(f, g, p))) return false;
        }
    }
    return true;
}

// First irreducible monic polynomial of degree m in the low-degree-first
// lexicographic order on (c_0, ..., c_{m-1}).
std::vector<int> canonical_poly(int p, int m) {
    int total = 1;
    for (int i = 0; i < m; ++i) total *= p;
    std::vector<int> c(m + 1, 0);
    c[m] = 1;
    for (int v = 0; v < total; ++v) {
        int x = v;
        for (int i = m - 1; i >= 0; --i) {
            c[i] = x % p;
            x /= p;
        }
        if (c[0] == 0) continue;  // divisible by x
        if (poly_irreducible(c, p)) return c;
    }
    throw std::logic_error("no irreducible polynomial found");
}

}  // namespace

Field::Field(int p, int m) : p_(p), m_(m) {
    if (!is_prime(p)) throw std::invalid_argument("not prime");
    if (m < 1) throw std::invalid_argument("bad degree");
    long long d = 1;
    for (int i = 0; i < m; ++i) {
        d *= p;
        if (d > 256) throw std::invalid_argument("field too large (p^m > 256)");
    }
    d_ = static_cast<int>(d);
    if (m_ > 1) poly_ = canonical_poly(p_, m_);

    mul_.resize(static_cast<std::size_t>(d_) * d_);
    for (int a = 0; a < d_; ++a)
        for (int b = 0; b < d_; ++b)
            mul_[static_cast<std::size_t>(a) * d_ + b] = mul_poly(a, b);

    inv_.assign(d_, 0);
    for (int a = 1; a < d_; ++a)
        for (int b = 1; b < d_; ++b)
            if (mul_[static_cast<std::size_t>(a) * d_ + b] == 1) {
                inv_[a] = b;
                break;
            }
}

void Field::check(GfElement a) const {
    if (a < 0 || a >= d_) throw std::out_of_range("field label out of range");
}

GfElement Field::add(GfElement a, GfElement b) const {
    check(a);
    check(b);
    int out = 0, scale = 1;
    for (int i = 0; i < m_; ++i) {
        out += ((a % p_ + b % p_) % p_) * scale;
        a /= p_;
        b /= p_;
        scale *= p_;
    }
    return out;
}

GfElement Field::neg(GfElement a) const {
    check(a);
    int out = 0, scale = 1;
    for (int i = 0; i < m_; ++i) {
        out += ((p_ - a % p_) % p_) * scale;
        a /= p_;
        scale *= p_;
    }
    return out;
}

GfElement Field::sub(GfElement a, GfElement b) const { return add(a, neg(b)); }

GfElement Field::mul(GfElement a, GfElement b) const {
    check(a);
    check(b);
    return mul_[static_cast<std::size_t>(a) * d_ + b];
}

GfElement Field::mul_poly(GfElement a, GfElement b) const {
    check(a);
    check(b);
    if (m_ == 1) return (a * b) % p_;
    std::vector<int> prod = poly_product(digits(a), digits(b), p_);
    prod = poly_remainder(prod, poly_, p_);
    int out = 0;
    for (int i = m_ - 1; i >= 0; --i) out = out * p_ + prod[i];
    return out;
}

GfElement Field::inv(GfElement a) const {
    check(a);
    if (a == 0) throw std::domain_error("zero divisor");
    return inv_[a];
}

GfElement Field::div(GfElement a, GfElement b) const { return mul(a, inv(b)); }

int Field::digit(GfElement a, int n) const {
    check(a);
    if (n < 0 || n >= m_) throw std::out_of_range("digit index out of range");
    for (int i = 0; i < n; ++i) a /= p_;
    return a % p_;
}

std::vector<int> Field::digits(GfElement a) const {
    check(a);
    std::vector<int> out(m_);
    for (int i = 0; i < m_; ++i) {
        out[i] = a % p_;
        a /= p_;
    }
    return out;
}

Field make_field(int p, int m) { return Field(p, m); }

}  // namespace dqkd
