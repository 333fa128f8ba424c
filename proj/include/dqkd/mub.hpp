#pragma once

#include <complex>
#include <vector>

#include "dqkd/field.hpp"

namespace dqkd {

using Complex = std::complex<double>;

// Unit vector in C^d, amplitudes in the computational basis.
struct QuditState {
    std::vector<Complex> amp;

    int dim() const { return static_cast<int>(amp.size()); }
    double norm() const;
};

// <a|b>
Complex inner(const QuditState& a, const QuditState& b);

// Primitive p-th root of unity e^{2 pi i / p}; exactly -1 for p = 2.
Complex root_of_unity(int p);

// omega raised to a field element; depends only on the label's digit 0.
Complex omega_pow(const Field& f, GfElement g);

// i^e with e reduced mod 4.
Complex i_pow(int e);

// Square-root phase attached to basis k at index q: a fixed determination
// of the square root of omega^{(k-1)*q*q} (field products in the
// exponent). For odd p it is omega^{e/2} with the exponent halved in the
// field. For p = 2 the naive i-power choice breaks unbiasedness, so the
// per-digit product form is used: over set digits n of q, multiply
// i^{(k-1)*2^n*2^n} (integer label mod 4) by omega^{(k-1)*2^n*(q mod 2^n)}
// where q mod 2^n keeps the low n digits of the label.
Complex sqrt_phase(const Field& f, int k, GfElement q);

// The naive determination (i-powers only, no alternating sign
// corrections); p = 2 only. Kept as the negative control for the
// sign-sensitive identity checks.
Complex sqrt_phase_uncorrected(const Field& f, int k, GfElement q);

// Basis vector t of basis k, for k in [0, d]; k = 0 is the computational
// basis, k >= 1 has amplitude omega^{-(q*t)} * sqrt_phase(k, q) / sqrt(d)
// at position q.
QuditState mub_vector(const Field& f, int k, GfElement t);

// d+1 bases of d vectors each; bases[0] is the computational basis.
struct MubTable {
    Field field;
    std::vector<std::vector<QuditState>> bases;

    int d() const { return field.d(); }
    const QuditState& state(int k, int t) const;
};

MubTable build_mub(const Field& f);

struct MubCheck {
    double max_deviation;
    double tol;
    bool pass;
};

// Largest deviation of any pairwise overlap magnitude from its target:
// |<v_t^k|v_t'^k'>| must be delta_{t,t'} within a basis and 1/sqrt(d)
// across distinct bases.
MubCheck verify_mub(const MubTable& tab, double tol);

}  // namespace dqkd
