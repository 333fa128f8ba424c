#include "dqkd/pauli.hpp"

#include <cmath>
#include <stdexcept>

namespace dqkd {

Operator Operator::identity(int dim) {
    Operator out(dim);
    for (int i = 0; i < dim; ++i) out.at(i, i) = Complex(1.0, 0.0);
    return out;
}

Operator Operator::operator*(const Operator& o) const {
    if (dim_ != o.dim_) throw std::invalid_argument("dimension mismatch");
    Operator out(dim_);
    for (int r = 0; r < dim_; ++r)
        for (int k = 0; k < dim_; ++k) {
            const Complex v = at(r, k);
            if (v.real() == 0.0 && v.imag() == 0.0) continue;
            for (int c = 0; c < dim_; ++c) out.at(r, c) += v * o.at(k, c);
        }
    return out;
}

Operator Operator::scaled(Complex z) const {
    Operator out(dim_);
    for (int r = 0; r < dim_; ++r)
        for (int c = 0; c < dim_; ++c) out.at(r, c) = z * at(r, c);
    return out;
}

Operator Operator::adjoint() const {
    Operator out(dim_);
    for (int r = 0; r < dim_; ++r)
        for (int c = 0; c < dim_; ++c) out.at(r, c) = std::conj(at(c, r));
    return out;
}

double Operator::max_abs_diff(const Operator& o) const {
    if (dim_ != o.dim_) throw std::invalid_argument("dimension mismatch");
    double worst = 0.0;
    for (std::size_t i = 0; i < a_.size(); ++i)
        worst = std::max(worst, std::abs(a_[i] - o.a_[i]));
    return worst;
}

double Operator::unitarity_defect() const {
    return ((*this) * adjoint()).max_abs_diff(identity(dim_));
}

QuditState apply(const Operator& op, const QuditState& s) {
    if (op.dim() != s.dim()) throw std::invalid_argument("dimension mismatch");
    QuditState out;
    out.amp.assign(s.dim(), Complex(0.0, 0.0));
    for (int r = 0; r < op.dim(); ++r)
        for (int c = 0; c < op.dim(); ++c) out.amp[r] += op.at(r, c) * s.amp[c];
    return out;
}

Operator pauli_v(const Field& f, GfElement j, GfElement l) {
    const int d = f.d();
    Operator out(d);
    for (int t = 0; t < d; ++t) {
        const GfElement tl = f.add(t, l);
        out.at(tl, t) = omega_pow(f, f.mul(tl, j));
    }
    return out;
}

Operator z_shift(const Field& f, GfElement a) { return pauli_v(f, a, 0); }

int phi(const Field& f, int k, int kprime, GfElement l) {
    if (f.p() != 2) throw std::invalid_argument("even-characteristic only");
    if (k < 1 || k > f.d() || kprime < 1 || kprime > f.d())
        throw std::out_of_range("basis index out of range");
    int parity = 0;
    for (int n = 0; n < f.m(); ++n) {
        if (((l >> n) & 1) == 0) continue;
        const GfElement pn = 1 << n;
        parity += f.mul(f.mul(k - 1, pn), pn) * f.mul(f.mul(kprime - 1, pn), pn);
    }
    return (parity & 1) ? -1 : 1;
}

Operator u_operator(const MubTable& tab, int k, GfElement l) {
    const Field& f = tab.field;
    if (k < 0 || k > f.d()) throw std::out_of_range("basis index out of range");
    if (k == 0) return pauli_v(f, l, 0);
    return pauli_v(f, f.mul(k - 1, l), l).scaled(std::conj(sqrt_phase(f, k, l)));
}

bool IdentityReport::all_pass() const {
    for (const IdentityCheck& c : checks)
        if (!c.pass) return false;
    return true;
}

const IdentityCheck& IdentityReport::check(const std::string& name) const {
    for (const IdentityCheck& c : checks)
        if (c.name == name) return c;
    throw std::out_of_range("unknown check name");
}

IdentityReport verify_appendix(const Field& f, double tol, bool wrong_sign) {
    const bool even = f.p() == 2;
    if (wrong_sign && !even) throw std::invalid_argument("even-characteristic only");
    const int d = f.d();

    auto phase = [&](int k, GfElement q) {
        return wrong_sign ? sqrt_phase_uncorrected(f, k, q) : sqrt_phase(f, k, q);
    };

    // Basis vectors assembled from the chosen phase determination.
    std::vector<std::vector<QuditState>> vec(d + 1, std::vector<QuditState>(d));
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    for (int t = 0; t < d; ++t) {
        vec[0][t].amp.assign(d, Complex(0.0, 0.0));
        vec[0][t].amp[t] = Complex(1.0, 0.0);
    }
    for (int k = 1; k <= d; ++k)
        for (int t = 0; t < d; ++t) {
            vec[k][t].amp.assign(d, Complex(0.0, 0.0));
            for (int q = 0; q < d; ++q)
                vec[k][t].amp[q] =
                    scale * omega_pow(f, f.neg(f.mul(q, t))) * phase(k, q);
        }

    std::vector<Operator> V(static_cast<std::size_t>(d) * d);
    for (GfElement j = 0; j < d; ++j)
        for (GfElement l = 0; l < d; ++l)
            V[static_cast<std::size_t>(j) * d + l] = pauli_v(f, j, l);
    auto v_at = [&](GfElement j, GfElement l) -> const Operator& {
        return V[static_cast<std::size_t>(j) * d + l];
    };

    // Subgroup elements from the same determination, conjugate phase.
    std::vector<Operator> U(static_cast<std::size_t>(d) * d);
    for (int k = 1; k <= d; ++k)
        for (GfElement l = 0; l < d; ++l)
            U[static_cast<std::size_t>(k - 1) * d + l] =
                v_at(f.mul(k - 1, l), l).scaled(std::conj(phase(k, l)));
    auto u_at = [&](int k, GfElement l) -> const Operator& {
        return U[static_cast<std::size_t>(k - 1) * d + l];
    };

    IdentityReport rep;
    rep.d = d;
    rep.tol = tol;
    rep.wrong_sign = wrong_sign;
    auto record = [&](const char* name, double dev) {
        rep.checks.push_back({name, false, dev, dev <= tol});
    };
    auto record_skipped = [&](const char* name) {
        rep.checks.push_back({name, true, 0.0, true});
    };

    {  // v_composition: V(j,l) V(j',l') = omega^{-(l*j')} V(j+j', l+l')
        double dev = 0.0;
        for (GfElement j = 0; j < d; ++j)
            for (GfElement l = 0; l < d; ++l)
                for (GfElement j2 = 0; j2 < d; ++j2)
                    for (GfElement l2 = 0; l2 < d; ++l2) {
                        const Operator prod = v_at(j, l) * v_at(j2, l2);
                        const Operator target =
                            v_at(f.add(j, j2), f.add(l, l2))
                                .scaled(omega_pow(f, f.neg(f.mul(l, j2))));
                        dev = std::max(dev, prod.max_abs_diff(target));
                    }
        record("v_composition", dev);
    }

    {  // u_closure
        double dev = 0.0;
        for (int k = 1; k <= d; ++k)
            for (GfElement l = 0; l < d; ++l)
                for (GfElement l2 = 0; l2 < d; ++l2) {
                    const Operator prod = u_at(k, l) * u_at(k, l2);
                    dev = std::max(dev, prod.max_abs_diff(u_at(k, f.add(l, l2))));
                }
        record("u_closure", dev);
    }

    {  // u_diagonal: sum_t omega^{t*l} |v_t^k><v_t^k|
        double dev = 0.0;
        for (int k = 1; k <= d; ++k)
            for (GfElement l = 0; l < d; ++l) {
                Operator D(d);
                for (int t = 0; t < d; ++t) {
                    const Complex w = omega_pow(f, f.mul(t, l));
                    for (int r = 0; r < d; ++r)
                        for (int c = 0; c < d; ++c)
                            D.at(r, c) += w * vec[k][t].amp[r] * std::conj(vec[k][t].amp[c]);
                }
                dev = std::max(dev, D.max_abs_diff(u_at(k, l)));
            }
        record("u_diagonal", dev);
    }

    {  // u_phase: constant entry-wise ratio against pauli_v((k-1)l, l), 1 at l=0
        double dev = 0.0;
        for (int k = 1; k <= d; ++k)
            for (GfElement l = 0; l < d; ++l) {
                const Operator& base = v_at(f.mul(k - 1, l), l);
                const Complex ratio = u_at(k, l).at(f.add(0, l), 0) / base.at(f.add(0, l), 0);
                if (l == 0) dev = std::max(dev, std::abs(ratio - Complex(1.0, 0.0)));
                dev = std::max(dev, u_at(k, l).max_abs_diff(base.scaled(ratio)));
            }
        record("u_phase", dev);
    }

    {  // phase_shift_product
        double dev = 0.0;
        for (int k = 1; k <= d; ++k)
            for (GfElement q = 0; q < d; ++q)
                for (GfElement q2 = 0; q2 < d; ++q2) {
                    const Complex lhs = phase(k, q) * phase(k, q2);
                    const Complex rhs =
                        omega_pow(f, f.neg(f.mul(f.mul(k - 1, q), q2))) *
                        phase(k, f.add(q, q2));
                    dev = std::max(dev, std::abs(lhs - rhs));
                }
        record("phase_shift_product", dev);
    }

    if (!even) {
        record_skipped("i_power_product");
        record_skipped("phi_properties");
        record_skipped("phase_pair_product");
        record_skipped("unbiased_overlaps");
        return rep;
    }

    {  // i_power_product
        double dev = 0.0;
        for (GfElement j = 0; j < d; ++j)
            for (GfElement l = 0; l < d; ++l) {
                const Complex lhs = i_pow(j) * i_pow(l);
                const double sign = ((j & 1) && (l & 1)) ? -1.0 : 1.0;
                const Complex rhs = sign * i_pow(f.add(j, l));
                dev = std::max(dev, std::abs(lhs - rhs));
            }
        record("i_power_product", dev);
    }

    {  // phi_properties
        double dev = 0.0;
        for (int k = 1; k <= d; ++k)
            for (int k2 = 1; k2 <= d; ++k2) {
                dev = std::max(dev, std::abs(phi(f, k, k2, 0) - 1.0));
                for (GfElement q = 0; q < d; ++q) {
                    dev = std::max(dev, std::abs(static_cast<double>(phi(f, k2, k, q) - phi(f, k, k2, q))));
                    for (GfElement q2 = 0; q2 < d; ++q2)
                        dev = std::max(
                            dev, std::abs(static_cast<double>(
                                     phi(f, k, k2, q) * phi(f, k, k2, q2) -
                                     phi(f, k, k2, f.add(q, q2)))));
                }
            }
        for (int k = 1; k <= d; ++k)
            for (GfElement q = 0; q < d; ++q) {
                const Complex w = omega_pow(f, f.mul(f.mul(k - 1, q), q));
                dev = std::max(dev, std::abs(Complex(phi(f, k, k, q), 0.0) - w));
            }
        record("phi_properties", dev);
    }

    {  // phase_pair_product
        double dev = 0.0;
        for (int k = 1; k <= d; ++k)
            for (int k2 = 1; k2 <= d; ++k2)
                for (GfElement l = 0; l < d; ++l) {
                    const Complex lhs = phase(k, l) * phase(k2, l);
                    const int kk = f.add(k - 1, k2 - 1) + 1;
                    const Complex rhs =
                        static_cast<double>(phi(f, k, k2, l)) * phase(kk, l);
                    dev = std::max(dev, std::abs(lhs - rhs));
                }
        record("phase_pair_product", dev);
    }

    {  // unbiased_overlaps: <v_t'^k'|v_t^k> via the phi expansion
        double dev = 0.0;
        const double cross = 1.0 / std::sqrt(static_cast<double>(d));
        for (int k = 1; k <= d; ++k)
            for (int k2 = 1; k2 <= d; ++k2)
                for (int t = 0; t < d; ++t)
                    for (int t2 = 0; t2 < d; ++t2) {
                        const int kk = f.add(k - 1, k2 - 1) + 1;
                        Complex sum(0.0, 0.0);
                        for (GfElement q = 0; q < d; ++q) {
                            const double sg = static_cast<double>(
                                phi(f, k, k2, q) * phi(f, k2, k2, q));
                            sum += sg * omega_pow(f, f.mul(q, f.add(t, t2))) *
                                   phase(kk, q);
                        }
                        sum /= static_cast<double>(d);
                        const Complex direct = inner(vec[k2][t2], vec[k][t]);
                        const double target =
                            (k == k2) ? (t == t2 ? 1.0 : 0.0) : cross;
                        dev = std::max(dev, std::abs(sum - direct));
                        dev = std::max(dev, std::abs(std::abs(sum) - target));
                    }
        record("unbiased_overlaps", dev);
    }

    return rep;
}

}  // namespace dqkd
