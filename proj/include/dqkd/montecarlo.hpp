#pragma once

#include <cstdint>
#include <vector>

#include "dqkd/protocol.hpp"

namespace dqkd {

struct ConfidenceInterval {
    double lo = 0.0;
    double hi = 1.0;
};

// 95% Wilson score interval for a binomial proportion. trials == 0 yields
// the vacuous interval [0, 1].
ConfidenceInterval wilson_interval(std::int64_t successes, std::int64_t trials);

struct SessionStats {
    int d = 0;
    Attack attack = Attack::None;
    double c = 0.0;
    std::uint64_t seed = 0;

    std::int64_t n_runs = 0;
    std::int64_t n_control = 0;
    std::int64_t n_message = 0;
    std::int64_t n_coincident = 0;
    std::int64_t n_detected = 0;
    std::int64_t n_eve_correct_message = 0;
    // Control-mode case split used by the detection analysis: coincident
    // runs in the dual basis (k = 1) never detect the controlled-shift
    // attack; coincident runs with k >= 2 detect it iff Alice's outcome
    // moved away from Bob's preparation.
    std::int64_t n_coincident_dual = 0;
    std::int64_t n_detected_dual = 0;
    std::int64_t n_coincident_higher = 0;
    std::int64_t n_alice_mismatch_higher = 0;

    double pe_hat = 0.0;  // detections per control run
    double ci_lo = 0.0;
    double ci_hi = 1.0;
    double pe_hat_coincident = 0.0;  // detections per coincident run
    double ci_lo_coincident = 0.0;
    double ci_hi_coincident = 1.0;
    double eve_message_accuracy = 0.0;

    double pe_analytic = 0.0;
    double ir_analytic = 0.0;
    double i_e = 0.0;
};

// Closed-form rates for dimension d (must be a prime power >= 2):
//   analytic_pe: per-control-run detection rate of the controlled-shift
//     attack, (d-1)^2 / d^3.
//   analytic_ir_detect: per-control-run detection rate of intercept-resend,
//     (d^2-1)(d-1) / d^4.
//   eve_info: symbols carry log2(d) bits.
double analytic_pe(int d);
double analytic_ir_detect(int d);
double eve_info(int d);

// Runs n independent protocol trials and aggregates counters. Every trial
// draws from its own generator stream derived from (cfg.seed, trial index),
// so results are bit-identical for a given seed regardless of the worker
// count. If transcript is non-null it is filled with all n records in trial
// order.
SessionStats run_session(const ProtocolConfig& cfg, std::int64_t n, int workers = 1,
                         std::vector<RunRecord>* transcript = nullptr);

struct ScanRow {
    int d = 0;
    double pe_analytic = 0.0;
    double pe_hat = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 1.0;
    std::int64_t n_control = 0;
};

// Controlled-shift detection-rate scan across dimensions: one session per
// dimension, runs_per_dim trials each, seeds derived from seed.
std::vector<ScanRow> scan_dimensions(const std::vector<int>& dims,
                                     std::int64_t runs_per_dim, double c,
                                     std::uint64_t seed, int workers = 1);

// Probability that Eve survives all control runs preceding one message run
// (geometric mixture over the number of interleaved control runs):
//   (1 - c) / (1 - c (1 - pe)).
// Undefined only for c = 1 with pe = 0.
double qdc_undetected(double c, double pe);

// Probability that Eve survives long enough to steal i_bits of message:
// qdc_undetected raised to i_bits / ie_bits, ie_bits being the bits gained
// per message run.
double qdc_success(double c, double pe, double i_bits, double ie_bits);

struct QdcPoint {
    double i_bits = 0.0;
    double undetected = 0.0;
    double success = 0.0;
};

// Curve of qdc_success over integer message sizes 0..bits for dimension d,
// with pe = analytic_pe(d) and ie = eve_info(d).
std::vector<QdcPoint> qdc_curve(double c, int d, int bits);

}  // namespace dqkd
