#pragma once
/// \file modes.hpp
/// \brief Per-step mode classification (cruising / avoiding / blocking),
///        analytic blocking-condition checks, pre-blocking prediction,
///        self-unblock detection, and deadlock/livelock window detectors.

#include <cstdint>
#include <span>
#include <utility>

#include "encsim/dynamics.hpp"
#include "encsim/safety_filter.hpp"

namespace encsim {

enum class ModeKind { Cruising, Avoiding, Blocking };

/// Mode of one airplane for one step. Blocking means the filter deflected
/// the heading while the bearing to the other airplane is stationary
/// (parallel flight); avoiding is an active filter with rotating bearing.
ModeKind classify_mode(const FilterDecision& decision, double beta_rate, double tol_rate);

enum class BlockingCase {
    Mutual,       ///< both airplanes blocked, mirrored corrections
    OneCruising,  ///< one blocked, the other cruising exactly along a boundary heading
};

struct BlockingMatch {
    int s = 1;  ///< arc sign from the blocking condition
    BlockingCase kind = BlockingCase::Mutual;
    int blocked = 0;  ///< index (0 or 1) of the blocked airplane in the OneCruising case
};

/// Analytic two-airplane blocking check on a single step's angles.
/// Mutual: exists s in {-1,+1} with s*wrap(phi1-beta12) in [0, delta) and
/// -s*wrap(phi2-beta21) in [0, delta). OneCruising: one cruising angle sits
/// exactly (within tol) on the other's correction boundary.
std::optional<BlockingMatch> blocking_condition(Angle phi1, Angle beta12, Angle phi2,
                                                Angle beta21, double delta, double tol = 1e-9);

/// Pre-blocking predictor: true when the cruising angles are exactly
/// mirrored about the bearing line and the encounter point exists
/// equidistant from both airplanes.
bool predict_blocking(const Vec2& p1, const Vec2& T1, const Vec2& p2, const Vec2& T2,
                      double tol_angle = 1e-6, double tol_dist = 1e-6);

/// Self-unblocking: one airplane collinear with the other and its own target
/// (phi_i == beta_ij) while the other is not. Checked for both assignments.
bool self_unblock_check(Angle phi_i, Angle beta_ij, Angle phi_j, Angle beta_ji,
                        double tol = 1e-9);

struct PathologyFlags {
    bool deadlock = false;
    bool livelock = false;
    double window = 0.0;  ///< trailing window length the flags refer to, s
};

/// Two-airplane state window, one entry per step.
using StatePairWindow = std::span<const std::pair<KinematicState, KinematicState>>;

/// Deadlock manifests at constant speed as heading chatter in place: every
/// 2 s chunk of the window shows net displacement below 10% of v*chunk for
/// both airplanes. Requires a window of at least 2 s.
bool detect_deadlock(StatePairWindow window, const DynamicsParams& params);

/// Livelock: both airplanes keep moving at near-full short-scale speed while
/// their distance to target shows no net decrease over the window. The
/// window must cover at least one orbit period estimate 2*pi*margin/v.
bool detect_livelock(StatePairWindow window, const Vec2& target1, const Vec2& target2,
                     const DynamicsParams& params, double margin);

/// Monte Carlo estimate of the blocking probability for an opponent dropped
/// uniformly on the circle of radius r around a cruising ego (uniform
/// opponent cruising angle, ego aimed through the circle center). At that
/// distance the unsafe arc half-angle is pi/2 for any parameters; the
/// analytic value is 1/8. Also counts deadlock configurations (exact
/// head-on ties), whose probability is zero.
struct BlockingProbabilityResult {
    double blocking_frequency = 0.0;
    double deadlock_frequency = 0.0;
};
BlockingProbabilityResult blocking_probability_experiment(std::int64_t n_samples,
                                                          std::uint64_t seed);

}  // namespace encsim
