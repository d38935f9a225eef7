#pragma once

#include <vector>

#include "mdpreach/model.hpp"

namespace mdpreach {

/// P_x(tau_target <= horizon) per start state, by exact backward recursion
/// on the induced chain.
std::vector<double> hit_by_horizon(const Model& m, const StationaryPolicy& pi,
                                   const std::vector<int>& target, long horizon);

/// P_x(tau_target <= horizon and tau_target < tau_avoid) per start state.
std::vector<double> hit_avoiding_by_horizon(const Model& m, const StationaryPolicy& pi,
                                            const std::vector<int>& target,
                                            const std::vector<int>& avoid, long horizon);

struct TwoPhaseHit {
    std::vector<double> target_prob;  // P(tau_target <= horizon)
    std::vector<double> avoid_prob;   // P(tau_avoid <= horizon, before target absorption)
};

/// Same probabilities under a two-phase policy, tracking the visited-avoid
/// mode directly in the recursion (start mode is 1 at avoid-set states).
TwoPhaseHit two_phase_hit_by_horizon(const Model& m, const TwoPhasePolicy& tp,
                                     const std::vector<int>& target, long horizon);

/// P_x(X_t in set) for t = horizon, by matrix powers of the induced chain.
std::vector<double> marginal_in_set(const Model& m, const StationaryPolicy& pi,
                                    const std::vector<int>& set, long horizon);

}  // namespace mdpreach
