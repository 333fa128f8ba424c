#pragma once

#include <optional>
#include <vector>

namespace dqkd {

// Element of GF(p^m), identified with its integer label g = sum_n g_n p^n
// where (g_0, ..., g_{m-1}) are the base-p digits of g.
using GfElement = int;

struct PrimePower {
    int p;
    int m;
};

bool is_prime(int n);

// Writes d as p^m with p prime, if possible.
std::optional<PrimePower> factor_prime_power(int d);

// GF(p^m) with exact integer arithmetic on labels in [0, p^m). Addition is
// digit-wise mod p. Multiplication is polynomial multiplication reduced by
// reduction_poly(), the lexicographically smallest monic irreducible
// polynomial of degree m over GF(p), coefficients compared low degree
// first. Immutable after construction; all operations are pure.
class Field {
public:
    Field(int p, int m);

    int p() const { return p_; }
    int m() const { return m_; }
    int d() const { return d_; }

    // Coefficients c[0..m] of the reduction polynomial, c[m] == 1.
    // Empty when m == 1.
    const std::vector<int>& reduction_poly() const { return poly_; }

    GfElement add(GfElement a, GfElement b) const;
    GfElement neg(GfElement a) const;
    GfElement sub(GfElement a, GfElement b) const;
    GfElement mul(GfElement a, GfElement b) const;
    GfElement inv(GfElement a) const;
    GfElement div(GfElement a, GfElement b) const;

    // Reference multiplication via explicit polynomial reduction; the table
    // used by mul() is validated against this path.
    GfElement mul_poly(GfElement a, GfElement b) const;

    // n-th base-p digit of the label, 0 <= n < m.
    int digit(GfElement a, int n) const;
    std::vector<int> digits(GfElement a) const;

private:
    void check(GfElement a) const;

    int p_, m_, d_;
    std::vector<int> poly_;
    std::vector<int> mul_;  // d*d product table
    std::vector<int> inv_;  // multiplicative inverses, slot 0 unused
};

Field make_field(int p, int m);

}  // namespace dqkd
