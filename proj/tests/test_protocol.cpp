#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <set>
#include <vector>

#include "doctest.h"
#include "dqkd/protocol.hpp"

using dqkd::Attack;
using dqkd::Mode;
using dqkd::Protocol;
using dqkd::ProtocolConfig;
using dqkd::QuditState;
using dqkd::Rng;
using dqkd::RunRecord;

namespace {

ProtocolConfig config_for(int d, Attack attack, double c = 0.5) {
    const auto pp = dqkd::factor_prime_power(d);
    REQUIRE(pp.has_value());
    ProtocolConfig cfg;
    cfg.p = pp->p;
    cfg.m = pp->m;
    cfg.c = c;
    cfg.attack = attack;
    return cfg;
}

}  // namespace

TEST_CASE("attack and mode names round-trip") {
    for (Attack a : {Attack::None, Attack::InterceptResend, Attack::ControlledShift})
        CHECK(dqkd::parse_attack(dqkd::attack_name(a)) == a);
    CHECK(dqkd::parse_attack("intercept-resend") == Attack::InterceptResend);
    CHECK(dqkd::parse_attack("controlled-shift") == Attack::ControlledShift);
    CHECK_THROWS_AS(dqkd::parse_attack("eavesdrop"), std::invalid_argument);
    CHECK(dqkd::mode_name(Mode::Control) == "control");
    CHECK(dqkd::mode_name(Mode::Message) == "message");
}

TEST_CASE("configuration validation") {
    ProtocolConfig cfg = config_for(3, Attack::None);
    CHECK(cfg.d() == 3);
    cfg.c = 0.0;
    CHECK_THROWS_AS(Protocol{cfg}, std::invalid_argument);
    cfg.c = 1.5;
    CHECK_THROWS_AS(Protocol{cfg}, std::invalid_argument);
    cfg.c = 1.0;
    CHECK_NOTHROW(Protocol{cfg});

    ProtocolConfig bad;
    bad.p = 6;
    bad.m = 1;
    CHECK_THROWS_AS(Protocol{bad}, std::invalid_argument);

    ProtocolConfig big;
    big.p = 2;
    big.m = 6;  // d = 64
    CHECK(big.d() == 64);
    CHECK_THROWS_AS(Protocol{big}, std::invalid_argument);
    big.m = 5;  // d = 32 is the ceiling
    CHECK_NOTHROW(Protocol{big});

    ProtocolConfig fixed = config_for(3, Attack::None);
    fixed.fixed_message = 3;
    CHECK_THROWS_AS(Protocol{fixed}, std::out_of_range);
    fixed.fixed_message = -2;
    CHECK_THROWS_AS(Protocol{fixed}, std::out_of_range);
    fixed.fixed_message = 2;
    CHECK_NOTHROW(Protocol{fixed});
}

TEST_CASE("clean channel: every run is coherent and nothing is detected") {
    const Protocol proto(config_for(3, Attack::None));
    const int d = proto.d();
    Rng rng(101);
    int n_control = 0, n_message = 0, n_coincident = 0;
    for (int i = 0; i < 2000; ++i) {
        const RunRecord r = proto.run_once(rng);
        REQUIRE(r.bob_k >= 1);
        REQUIRE(r.bob_k <= d);
        REQUIRE(r.bob_t >= 0);
        REQUIRE(r.bob_t < d);
        CHECK(r.eve_basis == -1);
        CHECK(r.eve_decoded == -1);
        if (r.mode == Mode::Message) {
            ++n_message;
            CHECK(r.alice_basis == -1);
            CHECK(r.alice_outcome == -1);
            CHECK(r.encoded_a >= 0);
            CHECK(r.decoded_a == r.encoded_a);  // noiseless channel decodes exactly
            CHECK_FALSE(r.coincident);
            CHECK_FALSE(r.detected);
        } else {
            ++n_control;
            CHECK(r.alice_basis >= 1);
            CHECK(r.alice_basis <= d);
            CHECK(r.encoded_a == -1);
            CHECK(r.decoded_a == -1);
            CHECK(r.coincident == (r.alice_basis == r.bob_k));
            if (r.coincident) {
                ++n_coincident;
                // Same basis, untouched qudit: both ends reproduce t.
                CHECK(r.alice_outcome == r.bob_t);
                CHECK(r.bob_outcome == r.alice_outcome);
            }
            CHECK_FALSE(r.detected);
        }
    }
    CHECK(n_control > 800);   // c = 0.5, 4-sigma wide
    CHECK(n_message > 800);
    CHECK(n_coincident > 0);
}

TEST_CASE("message rounds decode exactly for every attack") {
    // Exhaustive over basis, letter, and symbol: the decoded symbol always
    // equals the encoded one on a noiseless channel, under both attacks too
    // (neither disturbs message rounds). The controlled-shift attacker also
    // reads the symbol perfectly; the intercept-resend attacker infers it
    // from the two basis-h outcomes regardless of the basis it picked.
    for (int d : {2, 3, 4}) {
        for (Attack attack :
             {Attack::None, Attack::InterceptResend, Attack::ControlledShift}) {
            const Protocol proto(config_for(d, attack));
            const auto& f = proto.table().field;
            Rng rng(7);
            CAPTURE(d);
            for (int k = 1; k <= d; ++k)
                for (int t = 0; t < d; ++t)
                    for (int a = 0; a < d; ++a)
                        for (int ke = 1; ke <= d; ++ke) {
                            if (attack != Attack::InterceptResend && ke > 1) break;
                            const RunRecord r =
                                proto.run_message_forced(k, t, a, ke, rng);
                            CAPTURE(k);
                            CAPTURE(t);
                            CAPTURE(a);
                            CAPTURE(ke);
                            REQUIRE(r.mode == Mode::Message);
                            CHECK(r.encoded_a == a);
                            if (attack == Attack::InterceptResend) {
                                // The attack never disturbs the encoding,
                                // and the inferred symbol is exact in every
                                // basis choice.
                                CHECK(r.eve_decoded == a);
                                CHECK(r.eve_basis == ke);
                                if (ke == k) CHECK(r.decoded_a == a);
                                CHECK(r.bob_outcome == f.sub(t, r.decoded_a));
                            } else {
                                CHECK(r.decoded_a == a);
                                CHECK(r.bob_outcome == f.sub(t, a));
                                if (attack == Attack::ControlledShift)
                                    CHECK(r.eve_decoded == a);
                            }
                        }
        }
    }
}

TEST_CASE("controlled-shift attack against control rounds") {
    const int d = 3;
    const Protocol proto(config_for(d, Attack::ControlledShift));
    Rng rng(33);

    SUBCASE("first-basis rounds hide the attack completely") {
        for (int t = 0; t < d; ++t)
            for (int rep = 0; rep < 50; ++rep) {
                const RunRecord r = proto.run_control_forced(1, t, 1, -1, rng);
                REQUIRE(r.coincident);
                CHECK_FALSE(r.detected);
                CHECK(r.alice_outcome == t);   // basis-1 carrier commutes with the gate
                CHECK(r.bob_outcome == t);
                CHECK(r.eve_decoded == 0);     // ancilla never leaves its start state
            }
    }

    SUBCASE("higher-basis rounds disturb Alice at the unbiased rate") {
        int n = 0, mismatch = 0;
        for (int k = 2; k <= d; ++k)
            for (int t = 0; t < d; ++t)
                for (int rep = 0; rep < 700; ++rep) {
                    const RunRecord r = proto.run_control_forced(k, t, k, -1, rng);
                    REQUIRE(r.coincident);
                    ++n;
                    const bool alice_mismatch = r.alice_outcome != r.bob_t;
                    if (alice_mismatch) ++mismatch;
                    // Detection happens exactly on Alice's mismatch: when
                    // Alice projects back onto t, the round heals and Bob
                    // recovers t with certainty.
                    CHECK(r.detected == alice_mismatch);
                    if (!alice_mismatch) CHECK(r.bob_outcome == t);
                }
        const double p = double(d - 1) / d;
        const double sigma = std::sqrt(p * (1.0 - p) / n);
        CHECK(std::abs(double(mismatch) / n - p) < 4.0 * sigma);
    }

    SUBCASE("non-coincident control rounds are never counted detected") {
        for (int rep = 0; rep < 200; ++rep) {
            const RunRecord r = proto.run_control_forced(2, 1, 3, -1, rng);
            REQUIRE_FALSE(r.coincident);
            CHECK_FALSE(r.detected);
        }
    }
}

TEST_CASE("matched-basis interception leaves no trace") {
    // When the intercept-resend attacker happens to measure in Bob's basis,
    // coincident control rounds look perfectly clean.
    for (int d : {2, 3}) {
        const Protocol proto(config_for(d, Attack::InterceptResend));
        Rng rng(55);
        for (int k = 1; k <= d; ++k)
            for (int t = 0; t < d; ++t)
                for (int rep = 0; rep < 30; ++rep) {
                    const RunRecord r = proto.run_control_forced(k, t, k, k, rng);
                    REQUIRE(r.coincident);
                    CHECK(r.eve_basis == k);
                    CHECK(r.alice_outcome == t);
                    CHECK(r.bob_outcome == t);
                    CHECK_FALSE(r.detected);
                }
    }
}

TEST_CASE("reconciliation accepts only control records") {
    RunRecord rec;
    rec.mode = Mode::Message;
    CHECK_THROWS_AS(Protocol::reconcile(rec), std::invalid_argument);
    rec.mode = Mode::Control;
    rec.bob_k = 2;
    rec.alice_basis = 1;
    rec.coincident = false;
    CHECK_FALSE(Protocol::reconcile(rec));
    rec.alice_basis = 2;
    rec.coincident = true;
    rec.bob_t = 1;
    rec.alice_outcome = 1;
    rec.bob_outcome = 1;
    CHECK_FALSE(Protocol::reconcile(rec));
    rec.alice_outcome = 0;  // Alice saw the wrong letter
    CHECK(Protocol::reconcile(rec));
    rec.alice_outcome = 1;
    rec.bob_outcome = 2;    // Bob disagrees with Alice
    CHECK(Protocol::reconcile(rec));
}

TEST_CASE("preparation draws bases and letters uniformly and reproducibly") {
    const Protocol proto(config_for(4, Attack::None));
    const int d = proto.d();
    const int n = 4000;
    Rng rng(202);
    std::vector<int> k_counts(d + 1, 0), t_counts(d, 0);
    for (int i = 0; i < n; ++i) {
        const auto prep = proto.bob_prepare(rng);
        REQUIRE(prep.k >= 1);
        REQUIRE(prep.k <= d);
        REQUIRE(prep.t >= 0);
        REQUIRE(prep.t < d);
        CHECK(prep.state.dim() == d);
        ++k_counts[prep.k];
        ++t_counts[prep.t];
    }
    const double p = 1.0 / d;
    const double sigma = std::sqrt(p * (1.0 - p) / n);
    for (int k = 1; k <= d; ++k)
        CHECK(std::abs(double(k_counts[k]) / n - p) < 4.0 * sigma);
    for (int t = 0; t < d; ++t)
        CHECK(std::abs(double(t_counts[t]) / n - p) < 4.0 * sigma);

    // Same seed, same draws.
    Rng r1(77), r2(77);
    for (int i = 0; i < 50; ++i) {
        const auto a = proto.bob_prepare(r1);
        const auto b = proto.bob_prepare(r2);
        CHECK(a.k == b.k);
        CHECK(a.t == b.t);
    }
}

TEST_CASE("alice honours the control probability and fixed messages") {
    ProtocolConfig cfg = config_for(3, Attack::None, 1.0);
    const Protocol always_control(cfg);
    Rng rng(303);
    for (int i = 0; i < 200; ++i) {
        QuditState carrier = always_control.table().state(1, 0);
        const auto act = always_control.alice_act(carrier, rng);
        CHECK(act.mode == Mode::Control);
    }

    ProtocolConfig fixed = config_for(3, Attack::None, 0.2);
    fixed.fixed_message = 2;
    const Protocol proto(fixed);
    int messages = 0;
    for (int i = 0; i < 400; ++i) {
        QuditState carrier = proto.table().state(2, 1);
        const auto act = proto.alice_act(carrier, rng);
        if (act.mode == Mode::Message) {
            ++messages;
            CHECK(act.encoded_a == 2);
        }
    }
    CHECK(messages > 200);  // c = 0.2, so ~80% messages
}

TEST_CASE("decoding an untouched carrier recovers the letter") {
    const Protocol proto(config_for(5, Attack::None));
    Rng rng(404);
    for (int k = 1; k <= 5; ++k)
        for (int t = 0; t < 5; ++t) {
            const QuditState carrier = proto.table().state(k, t);
            const auto dec = proto.bob_decode(k, t, carrier, rng);
            CHECK(dec.b == t);
            CHECK(dec.a == 0);
        }
}
