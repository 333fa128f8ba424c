#include "dqkd/state.hpp"

#include <cmath>
#include <stdexcept>

namespace dqkd {

double JointState::norm() const {
    double s = 0.0;
    for (const Complex& z : amp) s += std::norm(z);
    return std::sqrt(s);
}

JointState tensor(const QuditState& a, const QuditState& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
    JointState out;
    out.d = a.dim();
    out.amp.resize(static_cast<std::size_t>(out.d) * out.d);
    for (int q1 = 0; q1 < out.d; ++q1)
        for (int q2 = 0; q2 < out.d; ++q2)
            out.amp[static_cast<std::size_t>(q1) * out.d + q2] = a.amp[q1] * b.amp[q2];
    return out;
}

JointState apply_joint(const Operator& op, const JointState& s) {
    const int dd = s.d * s.d;
    if (op.dim() != dd) throw std::invalid_argument("dimension mismatch");
    JointState out;
    out.d = s.d;
    out.amp.assign(static_cast<std::size_t>(dd), Complex(0.0, 0.0));
    for (int r = 0; r < dd; ++r) {
        Complex acc(0.0, 0.0);
        for (int c = 0; c < dd; ++c) acc += op.at(r, c) * s.amp[c];
        out.amp[r] = acc;
    }
    return out;
}

JointState apply_local(const Operator& op, const JointState& s, Subsystem which) {
    const int d = s.d;
    if (op.dim() != d) throw std::invalid_argument("dimension mismatch");
    JointState out;
    out.d = d;
    out.amp.assign(static_cast<std::size_t>(d) * d, Complex(0.0, 0.0));
    if (which == Subsystem::First) {
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) {
                const Complex v = op.at(r, c);
                if (v.real() == 0.0 && v.imag() == 0.0) continue;
                for (int q2 = 0; q2 < d; ++q2)
                    out.amp[static_cast<std::size_t>(r) * d + q2] +=
                        v * s.amp[static_cast<std::size_t>(c) * d + q2];
            }
    } else {
        for (int q1 = 0; q1 < d; ++q1)
            for (int r = 0; r < d; ++r) {
                Complex acc(0.0, 0.0);
                for (int c = 0; c < d; ++c)
                    acc += op.at(r, c) * s.amp[static_cast<std::size_t>(q1) * d + c];
                out.amp[static_cast<std::size_t>(q1) * d + r] = acc;
            }
    }
    return out;
}

namespace {

int sample_index(const std::vector<double>& prob, Rng& rng) {
    const double u = rng.next_double();
    double acc = 0.0;
    for (std::size_t i = 0; i < prob.size(); ++i) {
        acc += prob[i];
        if (u < acc) return static_cast<int>(i);
    }
    return static_cast<int>(prob.size()) - 1;
}

}  // namespace

Measured measure_in_basis(const QuditState& s, const MubTable& tab, int k, Rng& rng) {
    const int d = tab.d();
    if (s.dim() != d) throw std::invalid_argument("dimension mismatch");
    std::vector<Complex> coeff(d);
    std::vector<double> prob(d);
    for (int t = 0; t < d; ++t) {
        coeff[t] = inner(tab.state(k, t), s);
        prob[t] = std::norm(coeff[t]);
    }
    Measured out;
    out.outcome = sample_index(prob, rng);
    const Complex c = coeff[out.outcome];
    const double mag = std::abs(c);
    const Complex ph = mag > 0.0 ? c / mag : Complex(1.0, 0.0);
    out.post.amp.resize(d);
    const QuditState& basis_vec = tab.state(k, out.outcome);
    for (int q = 0; q < d; ++q) out.post.amp[q] = ph * basis_vec.amp[q];
    return out;
}

MeasuredJoint measure_subsystem(const JointState& s, const MubTable& tab, int k,
                                Subsystem which, Rng& rng) {
    const int d = tab.d();
    if (s.d != d) throw std::invalid_argument("dimension mismatch");
    // coeff[t][x]: amplitude of |v^k_t> on the measured factor, |x> on the other.
    std::vector<std::vector<Complex>> coeff(d, std::vector<Complex>(d, Complex(0.0, 0.0)));
    std::vector<double> prob(d, 0.0);
    for (int t = 0; t < d; ++t) {
        const QuditState& bv = tab.state(k, t);
        for (int x = 0; x < d; ++x) {
            Complex acc(0.0, 0.0);
            for (int y = 0; y < d; ++y) {
                const std::size_t idx = which == Subsystem::First
                                            ? static_cast<std::size_t>(y) * d + x
                                            : static_cast<std::size_t>(x) * d + y;
                acc += std::conj(bv.amp[y]) * s.amp[idx];
            }
            coeff[t][x] = acc;
            prob[t] += std::norm(acc);
        }
    }
    MeasuredJoint out;
    out.outcome = sample_index(prob, rng);
    const double p = prob[out.outcome];
    const double inv = p > 0.0 ? 1.0 / std::sqrt(p) : 0.0;
    out.remaining.amp.resize(d);
    for (int x = 0; x < d; ++x) out.remaining.amp[x] = inv * coeff[out.outcome][x];
    return out;
}

Operator controlled_shift_operator(const MubTable& tab, bool inverse) {
    const Field& f = tab.field;
    const int d = f.d();
    const int dd = d * d;
    // Columns of the basis change: F[q][t] = <q|v^1_t>.
    std::vector<std::vector<Complex>> F(d, std::vector<Complex>(d));
    for (int q = 0; q < d; ++q)
        for (int t = 0; t < d; ++t) F[q][t] = tab.state(1, t).amp[q];

    Operator out(dd);
    std::vector<Complex> u(d), w(d), vsum(d);
    for (int c1 = 0; c1 < d; ++c1)
        for (int c2 = 0; c2 < d; ++c2) {
            const int col = c1 * d + c2;
            // (F (x) F)^dagger applied to |c1>|c2> factorises per qudit.
            for (int t = 0; t < d; ++t) {
                u[t] = std::conj(F[c1][t]);
                w[t] = std::conj(F[c2][t]);
            }
            // Permute the basis-1 labels, then map back with F (x) F.
            for (int t1 = 0; t1 < d; ++t1) {
                for (int q2 = 0; q2 < d; ++q2) {
                    Complex acc(0.0, 0.0);
                    for (int s = 0; s < d; ++s) {
                        // direct: new label s came from t2 = s + t1
                        const GfElement t2 = inverse ? f.sub(s, t1) : f.add(s, t1);
                        acc += F[q2][s] * w[t2];
                    }
                    vsum[q2] = acc;
                }
                const Complex scale = u[t1];
                for (int q1 = 0; q1 < d; ++q1) {
                    const Complex lead = F[q1][t1] * scale;
                    for (int q2 = 0; q2 < d; ++q2)
                        out.at(q1 * d + q2, col) += lead * vsum[q2];
                }
            }
        }
    return out;
}

JointState controlled_shift(const JointState& s, const MubTable& tab, bool inverse) {
    return apply_joint(controlled_shift_operator(tab, inverse), s);
}

}  // namespace dqkd
