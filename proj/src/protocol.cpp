#include "dqkd/protocol.hpp"

#include <stdexcept>

namespace dqkd {

std::string attack_name(Attack a) {
    switch (a) {
        case Attack::None: return "none";
        case Attack::InterceptResend: return "intercept_resend";
        case Attack::ControlledShift: return "controlled_shift";
    }
    throw std::logic_error("bad attack tag");
}

Attack parse_attack(const std::string& name) {
    if (name == "none") return Attack::None;
    if (name == "intercept_resend" || name == "intercept-resend") return Attack::InterceptResend;
    if (name == "controlled_shift" || name == "controlled-shift") return Attack::ControlledShift;
    throw std::invalid_argument("unknown attack strategy: " + name);
}

std::string mode_name(Mode m) { return m == Mode::Control ? "control" : "message"; }

Protocol::Protocol(const ProtocolConfig& cfg)
    : cfg_(cfg), tab_(build_mub(make_field(cfg.p, cfg.m))) {
    if (!(cfg_.c > 0.0 && cfg_.c <= 1.0))
        throw std::invalid_argument("control probability must be in (0, 1]");
    const int d = tab_.d();
    if (d > 32) throw std::invalid_argument("dimension too large for simulation (d > 32)");
    if (cfg_.fixed_message && (*cfg_.fixed_message < 0 || *cfg_.fixed_message >= d))
        throw std::out_of_range("fixed message symbol out of range");
    z_cache_.reserve(d);
    for (int a = 0; a < d; ++a) z_cache_.push_back(z_shift(tab_.field, a));
    if (cfg_.attack == Attack::ControlledShift) {
        cs_direct_ = controlled_shift_operator(tab_, false);
        cs_inverse_ = controlled_shift_operator(tab_, true);
    }
}

Protocol::Prepared Protocol::bob_prepare(Rng& rng) const {
    const int d = tab_.d();
    Prepared out;
    out.k = 1 + rng.next_int(d);
    out.t = rng.next_int(d);
    out.state = tab_.state(out.k, out.t);
    return out;
}

Protocol::AliceResult Protocol::decide_alice(Rng& rng, const Forced& forced) const {
    const int d = tab_.d();
    AliceResult r;
    r.mode = forced.mode ? *forced.mode
                         : (rng.next_double() < cfg_.c ? Mode::Control : Mode::Message);
    if (r.mode == Mode::Control) {
        r.basis = forced.kprime ? *forced.kprime : 1 + rng.next_int(d);
        if (r.basis < 1 || r.basis > d) throw std::out_of_range("basis index out of range");
    } else {
        if (forced.a) r.encoded_a = *forced.a;
        else if (cfg_.fixed_message) r.encoded_a = *cfg_.fixed_message;
        else r.encoded_a = rng.next_int(d);
        if (r.encoded_a < 0 || r.encoded_a >= d)
            throw std::out_of_range("message symbol out of range");
    }
    return r;
}

Protocol::AliceResult Protocol::alice_act(QuditState& carrier, Rng& rng) const {
    Forced none;
    AliceResult r = decide_alice(rng, none);
    if (r.mode == Mode::Control) {
        Measured m = measure_in_basis(carrier, tab_, r.basis, rng);
        r.outcome = m.outcome;
        carrier = m.post;
    } else {
        carrier = apply(z_cache_[r.encoded_a], carrier);
    }
    return r;
}

Protocol::Decoded Protocol::bob_decode(int k, int t, const QuditState& carrier, Rng& rng) const {
    Measured m = measure_in_basis(carrier, tab_, k, rng);
    return {m.outcome, tab_.field.sub(t, m.outcome)};
}

bool Protocol::reconcile(const RunRecord& rec) {
    if (rec.mode != Mode::Control)
        throw std::invalid_argument("reconcile requires a control-mode record");
    return rec.coincident &&
           (rec.alice_outcome != rec.bob_t || rec.bob_outcome != rec.alice_outcome);
}

RunRecord Protocol::run_impl(Rng& rng, const Forced& forced) const {
    const Field& f = tab_.field;
    const int d = tab_.d();
    RunRecord rec;
    rec.bob_k = forced.k ? *forced.k : 1 + rng.next_int(d);
    rec.bob_t = forced.t ? *forced.t : rng.next_int(d);
    if (rec.bob_k < 1 || rec.bob_k > d) throw std::out_of_range("basis index out of range");
    if (rec.bob_t < 0 || rec.bob_t >= d) throw std::out_of_range("letter out of range");

    if (cfg_.attack == Attack::ControlledShift) {
        JointState joint = tensor(tab_.state(rec.bob_k, rec.bob_t), tab_.state(1, 0));
        joint = apply_joint(cs_inverse_, joint);

        AliceResult ar = decide_alice(rng, forced);
        rec.mode = ar.mode;
        if (ar.mode == Mode::Control) {
            rec.alice_basis = ar.basis;
            MeasuredJoint mj = measure_subsystem(joint, tab_, ar.basis, Subsystem::First, rng);
            rec.alice_outcome = mj.outcome;
            joint = tensor(tab_.state(ar.basis, mj.outcome), mj.remaining);
        } else {
            rec.encoded_a = ar.encoded_a;
            joint = apply_local(z_cache_[ar.encoded_a], joint, Subsystem::First);
        }

        joint = apply_joint(cs_direct_, joint);
        MeasuredJoint me = measure_subsystem(joint, tab_, 1, Subsystem::Second, rng);
        rec.eve_decoded = me.outcome;
        Measured mb = measure_in_basis(me.remaining, tab_, rec.bob_k, rng);
        rec.bob_outcome = mb.outcome;
    } else {
        QuditState carrier = tab_.state(rec.bob_k, rec.bob_t);
        int forward_basis = -1;
        int forward_outcome = -1;
        if (cfg_.attack == Attack::InterceptResend) {
            forward_basis = forced.eve_basis ? *forced.eve_basis : 1 + rng.next_int(d);
            if (forward_basis < 1 || forward_basis > d)
                throw std::out_of_range("basis index out of range");
            Measured mf = measure_in_basis(carrier, tab_, forward_basis, rng);
            forward_outcome = mf.outcome;
            carrier = mf.post;
            rec.eve_basis = forward_basis;
        }

        AliceResult ar = decide_alice(rng, forced);
        rec.mode = ar.mode;
        if (ar.mode == Mode::Control) {
            rec.alice_basis = ar.basis;
            Measured ma = measure_in_basis(carrier, tab_, ar.basis, rng);
            rec.alice_outcome = ma.outcome;
            carrier = ma.post;
        } else {
            rec.encoded_a = ar.encoded_a;
            carrier = apply(z_cache_[ar.encoded_a], carrier);
        }

        if (cfg_.attack == Attack::InterceptResend) {
            const int back_basis = (cfg_.ir_independent_bases && !forced.eve_basis)
                                       ? 1 + rng.next_int(d)
                                       : forward_basis;
            Measured mb_e = measure_in_basis(carrier, tab_, back_basis, rng);
            carrier = mb_e.post;
            rec.eve_decoded = f.sub(forward_outcome, mb_e.outcome);
        }

        Measured mb = measure_in_basis(carrier, tab_, rec.bob_k, rng);
        rec.bob_outcome = mb.outcome;
    }

    if (rec.mode == Mode::Message) {
        rec.decoded_a = f.sub(rec.bob_t, rec.bob_outcome);
    } else {
        rec.coincident = rec.alice_basis == rec.bob_k;
        rec.detected = reconcile(rec);
    }
    return rec;
}

RunRecord Protocol::run_once(Rng& rng) const {
    Forced none;
    return run_impl(rng, none);
}

RunRecord Protocol::run_message_forced(int k, int t, int a, int eve_basis, Rng& rng) const {
    Forced forced;
    forced.mode = Mode::Message;
    forced.k = k;
    forced.t = t;
    forced.a = a;
    if (eve_basis >= 1) forced.eve_basis = eve_basis;
    return run_impl(rng, forced);
}

RunRecord Protocol::run_control_forced(int k, int t, int kprime, int eve_basis, Rng& rng) const {
    Forced forced;
    forced.mode = Mode::Control;
    forced.k = k;
    forced.t = t;
    forced.kprime = kprime;
    if (eve_basis >= 1) forced.eve_basis = eve_basis;
    return run_impl(rng, forced);
}

}  // namespace dqkd
