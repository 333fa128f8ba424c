#include "dqkd/montecarlo.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

#include "dqkd/field.hpp"

namespace dqkd {

ConfidenceInterval wilson_interval(std::int64_t successes, std::int64_t trials) {
    if (successes < 0 || trials < 0 || successes > trials)
        throw std::invalid_argument("bad binomial counts");
    if (trials == 0) return {0.0, 1.0};
    const double z = 1.959963984540054;  // 97.5th normal percentile
    const double n = static_cast<double>(trials);
    const double phat = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (phat + z2 / (2.0 * n)) / denom;
    const double half =
        z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

namespace {

void require_prime_power(int d) {
    if (d < 2 || !factor_prime_power(d))
        throw std::invalid_argument("not a prime power");
}

}  // namespace

double analytic_pe(int d) {
    require_prime_power(d);
    const double dd = static_cast<double>(d);
    return (dd - 1.0) * (dd - 1.0) / (dd * dd * dd);
}

double analytic_ir_detect(int d) {
    require_prime_power(d);
    const double dd = static_cast<double>(d);
    return (dd * dd - 1.0) * (dd - 1.0) / (dd * dd * dd * dd);
}

double eve_info(int d) {
    require_prime_power(d);
    return std::log2(static_cast<double>(d));
}

namespace {

struct Tally {
    std::int64_t n_runs = 0, n_control = 0, n_message = 0;
    std::int64_t n_coincident = 0, n_detected = 0, n_eve_correct_message = 0;
    std::int64_t n_coincident_dual = 0, n_detected_dual = 0;
    std::int64_t n_coincident_higher = 0, n_alice_mismatch_higher = 0;

    void absorb(const RunRecord& rec) {
        ++n_runs;
        if (rec.mode == Mode::Control) {
            ++n_control;
            if (rec.coincident) {
                ++n_coincident;
                if (rec.bob_k == 1) {
                    ++n_coincident_dual;
                    if (rec.detected) ++n_detected_dual;
                } else {
                    ++n_coincident_higher;
                    if (rec.alice_outcome != rec.bob_t) ++n_alice_mismatch_higher;
                }
            }
            if (rec.detected) ++n_detected;
        } else {
            ++n_message;
            if (rec.eve_decoded >= 0 && rec.eve_decoded == rec.encoded_a)
                ++n_eve_correct_message;
        }
    }

    void merge(const Tally& o) {
        n_runs += o.n_runs;
        n_control += o.n_control;
        n_message += o.n_message;
        n_coincident += o.n_coincident;
        n_detected += o.n_detected;
        n_eve_correct_message += o.n_eve_correct_message;
        n_coincident_dual += o.n_coincident_dual;
        n_detected_dual += o.n_detected_dual;
        n_coincident_higher += o.n_coincident_higher;
        n_alice_mismatch_higher += o.n_alice_mismatch_higher;
    }
};

}  // namespace

SessionStats run_session(const ProtocolConfig& cfg, std::int64_t n, int workers,
                         std::vector<RunRecord>* transcript) {
    if (n < 1) throw std::invalid_argument("need at least one run");
    if (workers < 1) throw std::invalid_argument("need at least one worker");
    const Protocol proto(cfg);
    if (transcript) transcript->assign(static_cast<std::size_t>(n), RunRecord{});

    const int nw = static_cast<int>(std::min<std::int64_t>(workers, n));
    std::vector<Tally> parts(nw);
    auto work = [&](int w) {
        const std::int64_t lo = n * w / nw;
        const std::int64_t hi = n * (w + 1) / nw;
        Tally& tally = parts[w];
        for (std::int64_t i = lo; i < hi; ++i) {
            Rng rng = Rng::for_stream(cfg.seed, static_cast<std::uint64_t>(i));
            const RunRecord rec = proto.run_once(rng);
            tally.absorb(rec);
            if (transcript) (*transcript)[static_cast<std::size_t>(i)] = rec;
        }
    };
    if (nw == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nw);
        for (int w = 0; w < nw; ++w) pool.emplace_back(work, w);
        for (std::thread& t : pool) t.join();
    }
    Tally total;
    for (const Tally& part : parts) total.merge(part);

    SessionStats out;
    out.d = proto.d();
    out.attack = cfg.attack;
    out.c = cfg.c;
    out.seed = cfg.seed;
    out.n_runs = total.n_runs;
    out.n_control = total.n_control;
    out.n_message = total.n_message;
    out.n_coincident = total.n_coincident;
    out.n_detected = total.n_detected;
    out.n_eve_correct_message = total.n_eve_correct_message;
    out.n_coincident_dual = total.n_coincident_dual;
    out.n_detected_dual = total.n_detected_dual;
    out.n_coincident_higher = total.n_coincident_higher;
    out.n_alice_mismatch_higher = total.n_alice_mismatch_higher;

    out.pe_hat = total.n_control > 0
                     ? static_cast<double>(total.n_detected) / total.n_control
                     : 0.0;
    const ConfidenceInterval ci = wilson_interval(total.n_detected, total.n_control);
    out.ci_lo = ci.lo;
    out.ci_hi = ci.hi;
    out.pe_hat_coincident =
        total.n_coincident > 0
            ? static_cast<double>(total.n_detected) / total.n_coincident
            : 0.0;
    const ConfidenceInterval cic = wilson_interval(total.n_detected, total.n_coincident);
    out.ci_lo_coincident = cic.lo;
    out.ci_hi_coincident = cic.hi;
    out.eve_message_accuracy =
        total.n_message > 0
            ? static_cast<double>(total.n_eve_correct_message) / total.n_message
            : 0.0;

    out.pe_analytic = analytic_pe(out.d);
    out.ir_analytic = analytic_ir_detect(out.d);
    out.i_e = eve_info(out.d);
    return out;
}

std::vector<ScanRow> scan_dimensions(const std::vector<int>& dims,
                                     std::int64_t runs_per_dim, double c,
                                     std::uint64_t seed, int workers) {
    std::vector<ScanRow> rows;
    rows.reserve(dims.size());
    for (std::size_t i = 0; i < dims.size(); ++i) {
        const int d = dims[i];
        const auto pp = factor_prime_power(d);
        if (d < 2 || !pp) throw std::invalid_argument("not a prime power");
        ProtocolConfig cfg;
        cfg.p = pp->p;
        cfg.m = pp->m;
        cfg.c = c;
        cfg.attack = Attack::ControlledShift;
        cfg.seed = Rng::for_stream(seed, static_cast<std::uint64_t>(i)).next_u64();
        const SessionStats stats = run_session(cfg, runs_per_dim, workers);
        rows.push_back({d, stats.pe_analytic, stats.pe_hat, stats.ci_lo, stats.ci_hi,
                        stats.n_control});
    }
    return rows;
}

double qdc_undetected(double c, double pe) {
    if (!(c > 0.0 && c <= 1.0)) throw std::invalid_argument("c must be in (0, 1]");
    if (!(pe >= 0.0 && pe <= 1.0)) throw std::invalid_argument("pe must be in [0, 1]");
    const double denom = 1.0 - c * (1.0 - pe);
    if (denom <= 0.0) throw std::invalid_argument("undefined for c = 1 with pe = 0");
    return (1.0 - c) / denom;
}

double qdc_success(double c, double pe, double i_bits, double ie_bits) {
    if (!(i_bits >= 0.0)) throw std::invalid_argument("message size must be >= 0");
    if (!(ie_bits > 0.0)) throw std::invalid_argument("per-run information must be > 0");
    if (i_bits == 0.0) return 1.0;
    return std::pow(qdc_undetected(c, pe), i_bits / ie_bits);
}

std::vector<QdcPoint> qdc_curve(double c, int d, int bits) {
    if (bits < 0) throw std::invalid_argument("bits must be >= 0");
    const double pe = analytic_pe(d);
    const double ie = eve_info(d);
    const double undetected = qdc_undetected(c, pe);
    std::vector<QdcPoint> out;
    out.reserve(static_cast<std::size_t>(bits) + 1);
    for (int i = 0; i <= bits; ++i)
        out.push_back({static_cast<double>(i), undetected,
                       qdc_success(c, pe, static_cast<double>(i), ie)});
    return out;
}

}  // namespace dqkd
