#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dqkd/state.hpp"

namespace dqkd {

enum class Attack { None, InterceptResend, ControlledShift };

// Canonical tag strings: "none", "intercept_resend", "controlled_shift".
// Parsing also accepts the hyphenated spellings used on the command line.
std::string attack_name(Attack a);
Attack parse_attack(const std::string& name);

enum class Mode { Control, Message };
std::string mode_name(Mode m);

struct ProtocolConfig {
    int p = 2;
    int m = 1;
    double c = 0.5;  // control-mode probability, in (0, 1]
    Attack attack = Attack::None;
    std::uint64_t seed = 1;
    // Intercept-resend variant: draw a fresh basis for the backward leg
    // instead of reusing the forward-leg basis. Off by default.
    bool ir_independent_bases = false;
    // Force every message run to encode this symbol instead of a uniform one.
    std::optional<int> fixed_message;

    int d() const { int v = 1; for (int i = 0; i < m; ++i) v *= p; return v; }
};

// One protocol run. Optional quantities use -1 when absent so records stay
// plain data; serialization maps -1 back to null.
struct RunRecord {
    Mode mode = Mode::Message;
    int bob_k = 0;          // basis Bob prepares in and finally measures in, 1..d
    int bob_t = 0;          // letter Bob prepares, 0..d-1
    int alice_basis = -1;   // control mode: Alice's measurement basis, 1..d
    int alice_outcome = -1; // control mode: Alice's measured letter
    int encoded_a = -1;     // message mode: the symbol Alice encodes
    int bob_outcome = 0;    // Bob's final measured letter b
    int decoded_a = -1;     // message mode: t - b
    int eve_basis = -1;     // intercept-resend: Eve's forward-leg basis
    int eve_decoded = -1;   // attacker's inferred symbol, when a strategy runs
    bool coincident = false;
    bool detected = false;
};

// Simulates single runs of the key-distribution protocol: Bob prepares a
// qudit, the (possibly attacked) channel carries it to Alice, Alice either
// checks (control mode) or encodes (message mode), the channel carries it
// back, and Bob measures in his preparation basis.
class Protocol {
  public:
    explicit Protocol(const ProtocolConfig& cfg);

    const ProtocolConfig& config() const { return cfg_; }
    const MubTable& table() const { return tab_; }
    int d() const { return tab_.d(); }

    // One full run, drawing everything random from rng.
    RunRecord run_once(Rng& rng) const;

    // Forced variants for exhaustive sweeps. Random draws that are not
    // forced (measurement sampling) still come from rng.
    RunRecord run_message_forced(int k, int t, int a, int eve_basis, Rng& rng) const;
    RunRecord run_control_forced(int k, int t, int kprime, int eve_basis, Rng& rng) const;

    // Protocol steps on an unentangled carrier (the controlled-shift attack
    // entangles the carrier and is handled inside run_once).
    struct Prepared {
        int k;
        int t;
        QuditState state;
    };
    Prepared bob_prepare(Rng& rng) const;

    struct AliceResult {
        Mode mode;
        int basis = -1;    // control mode
        int outcome = -1;  // control mode
        int encoded_a = -1;  // message mode
    };
    AliceResult alice_act(QuditState& carrier, Rng& rng) const;

    struct Decoded {
        int b;
        int a;  // t - b
    };
    Decoded bob_decode(int k, int t, const QuditState& carrier, Rng& rng) const;

    // detected = coincident and (Alice saw something other than t, or Bob's
    // final outcome disagrees with Alice's). Message-mode records are an error.
    static bool reconcile(const RunRecord& rec);

  private:
    struct Forced {
        std::optional<Mode> mode;
        std::optional<int> k, t, kprime, a, eve_basis;
    };
    RunRecord run_impl(Rng& rng, const Forced& forced) const;
    AliceResult decide_alice(Rng& rng, const Forced& forced) const;

    ProtocolConfig cfg_;
    MubTable tab_;
    std::vector<Operator> z_cache_;  // z_shift(a), one per symbol
    Operator cs_direct_;             // built only for the controlled-shift attack
    Operator cs_inverse_;
};

}  // namespace dqkd
