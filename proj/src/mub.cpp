#include "dqkd/mub.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dqkd {

double QuditState::norm() const {
    double s = 0.0;
    for (const Complex& c : amp) s += std::norm(c);
    return std::sqrt(s);
}

Complex inner(const QuditState& a, const QuditState& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
    Complex s = 0.0;
    for (int i = 0; i < a.dim(); ++i) s += std::conj(a.amp[i]) * b.amp[i];
    return s;
}

Complex root_of_unity(int p) {
    if (!is_prime(p)) throw std::invalid_argument("not prime");
    if (p == 2) return Complex(-1.0, 0.0);
    const double t = 2.0 * std::numbers::pi / p;
    return Complex(std::cos(t), std::sin(t));
}

Complex omega_pow(const Field& f, GfElement g) {
    const int g0 = f.digit(g, 0);
    if (f.p() == 2) return Complex(g0 ? -1.0 : 1.0, 0.0);
    const double t = 2.0 * std::numbers::pi * g0 / f.p();
    return Complex(std::cos(t), std::sin(t));
}

Complex i_pow(int e) {
    switch (((e % 4) + 4) % 4) {
        case 0: return Complex(1.0, 0.0);
        case 1: return Complex(0.0, 1.0);
        case 2: return Complex(-1.0, 0.0);
        default: return Complex(0.0, -1.0);
    }
}

namespace {

void check_basis_index(const Field& f, int k) {
    if (k < 0 || k > f.d()) throw std::out_of_range("basis index out of range");
}

}  // namespace

Complex sqrt_phase(const Field& f, int k, GfElement q) {
    check_basis_index(f, k);
    if (k == 0) throw std::invalid_argument("computational basis has no square-root phase");
    if (f.p() != 2) {
        const GfElement e = f.mul(f.mul(k - 1, q), q);
        return omega_pow(f, f.div(e, 2));
    }
    Complex out(1.0, 0.0);
    for (int n = 0; n < f.m(); ++n) {
        if (((q >> n) & 1) == 0) continue;
        const GfElement pn = 1 << n;
        const GfElement kp = f.mul(k - 1, pn);
        out *= i_pow(f.mul(kp, pn));
        out *= omega_pow(f, f.mul(kp, q & (pn - 1)));
    }
    return out;
}

Complex sqrt_phase_uncorrected(const Field& f, int k, GfElement q) {
    check_basis_index(f, k);
    if (k == 0) throw std::invalid_argument("computational basis has no square-root phase");
    if (f.p() != 2) throw std::invalid_argument("even-characteristic only");
    Complex out(1.0, 0.0);
    for (int n = 0; n < f.m(); ++n) {
        if (((q >> n) & 1) == 0) continue;
        const GfElement pn = 1 << n;
        out *= i_pow(f.mul(f.mul(k - 1, pn), pn));
    }
    return out;
}

QuditState mub_vector(const Field& f, int k, GfElement t) {
    check_basis_index(f, k);
    const int d = f.d();
    QuditState v;
    v.amp.assign(d, Complex(0.0, 0.0));
    if (k == 0) {
        v.amp[t] = Complex(1.0, 0.0);
        return v;
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    for (int q = 0; q < d; ++q)
        v.amp[q] = scale * omega_pow(f, f.neg(f.mul(q, t))) * sqrt_phase(f, k, q);
    return v;
}

const QuditState& MubTable::state(int k, int t) const {
    if (k < 0 || k >= static_cast<int>(bases.size()))
        throw std::out_of_range("basis index out of range");
    if (t < 0 || t >= d()) throw std::out_of_range("state index out of range");
    return bases[k][t];
}

MubTable build_mub(const Field& f) {
    MubTable tab{f, {}};
    const int d = f.d();
    tab.bases.reserve(d + 1);
    for (int k = 0; k <= d; ++k) {
        std::vector<QuditState> basis;
        basis.reserve(d);
        for (int t = 0; t < d; ++t) basis.push_back(mub_vector(f, k, t));
        tab.bases.push_back(std::move(basis));
    }
    return tab;
}

MubCheck verify_mub(const MubTable& tab, double tol) {
    const int d = tab.d();
    const double cross = 1.0 / std::sqrt(static_cast<double>(d));
    double worst = 0.0;
    for (int k = 0; k <= d; ++k)
        for (int kp = k; kp <= d; ++kp)
            for (int t = 0; t < d; ++t)
                for (int tp = 0; tp < d; ++tp) {
                    const double mag = std::abs(inner(tab.state(k, t), tab.state(kp, tp)));
                    const double target = (k == kp) ? (t == tp ? 1.0 : 0.0) : cross;
                    worst = std::max(worst, std::abs(mag - target));
                }
    return MubCheck{worst, tol, worst <= tol};
}

}  // namespace dqkd
