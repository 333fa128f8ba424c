#pragma once

#include <vector>

#include "dqkd/mub.hpp"
#include "dqkd/pauli.hpp"
#include "dqkd/rng.hpp"

namespace dqkd {

// Two-qudit pure state. Amplitudes are stored row-major with the first
// (Bob's) qudit as the slow index: amp[q1 * d + q2].
struct JointState {
    int d = 0;
    std::vector<Complex> amp;

    double norm() const;
};

enum class Subsystem { First, Second };

// |a> (x) |b>
JointState tensor(const QuditState& a, const QuditState& b);

// Dense d^2 x d^2 operator applied to the joint state.
JointState apply_joint(const Operator& op, const JointState& s);

// Single-qudit operator applied to one tensor factor.
JointState apply_local(const Operator& op, const JointState& s, Subsystem which);

// Projective measurement of a single qudit in basis k of the table.
// Outcome probabilities follow the Born rule; the post-measurement state is
// the basis vector carrying the measured amplitude's phase.
struct Measured {
    int outcome = 0;
    QuditState post;
};
Measured measure_in_basis(const QuditState& s, const MubTable& tab, int k, Rng& rng);

// Projective measurement of one factor of a joint state in basis k.
// The unmeasured factor collapses to the (renormalised) conditional state.
struct MeasuredJoint {
    int outcome = 0;
    QuditState remaining;
};
MeasuredJoint measure_subsystem(const JointState& s, const MubTable& tab, int k,
                                Subsystem which, Rng& rng);

// The two-qudit gate that shifts the second qudit's index in basis 1 by the
// first qudit's index in basis 1:
//   direct:  |v^1_{t1}> |v^1_{t2}>  ->  |v^1_{t1}> |v^1_{t2 - t1}>
//   inverse: |v^1_{t1}> |v^1_{t2}>  ->  |v^1_{t1}> |v^1_{t2 + t1}>
// Built by conjugating a computational-basis permutation with the d x d
// basis-change matrix whose columns are the basis-1 vectors.
Operator controlled_shift_operator(const MubTable& tab, bool inverse);

JointState controlled_shift(const JointState& s, const MubTable& tab, bool inverse);

}  // namespace dqkd
