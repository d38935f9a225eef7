#pragma once

#include <functional>
#include <vector>

#include "mdpreach/model.hpp"

namespace mdpreach::testing {

/// Literal enumeration of every positive-probability (state, action) path of
/// the given length. The callback receives the visited states (length t+1),
/// actions (length t) and the path probability under the two-phase policy.
void enumerate_paths(const Model& m, const TwoPhasePolicy& tp, int start, int horizon,
                     const std::function<void(const std::vector<int>& states,
                                              const std::vector<int>& actions, double prob)>& fn);

/// P(first target visit at time <= horizon with no earlier avoid visit),
/// summed over enumerated paths. Exponential in the horizon; tiny models only.
double enumerate_reach_avoid(const Model& m, const StationaryPolicy& pi, int start,
                             const std::vector<int>& target, const std::vector<int>& avoid,
                             int horizon);

/// Minimal hitting probability min_pi P_x(hit set), by Bellman recursion with
/// the minimum over actions, iterated from the indicator of the set.
std::vector<double> min_reach_probability(const Model& m, const std::vector<int>& set,
                                          double tol = 1e-12, long max_iterations = 1000000);

}  // namespace mdpreach::testing
