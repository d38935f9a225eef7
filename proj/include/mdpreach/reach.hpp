#pragma once

#include <optional>
#include <vector>

#include "mdpreach/avg.hpp"
#include "mdpreach/model.hpp"
#include "mdpreach/transform.hpp"

namespace mdpreach {

/// Per-state flags: true at x in `target` iff some feasible action keeps all
/// kernel mass inside `target`, so the set can be made closed by a policy.
std::vector<bool> check_closable(const Model& m, const std::vector<int>& target);

struct PDomainOptions {
    double zero_threshold = 1e-8;  // separates the domain from the escape set
};

struct PDomainResult {
    std::vector<double> v_star;                     // optimal limiting probability per state
    std::vector<std::vector<int>> lambda_sets;      // one set per requested p
    std::vector<double> ps;                         // the requested p values
    std::vector<int> domain;                        // v* above the zero threshold
    std::vector<int> escape;                        // complement of domain
};

/**
 * Domain of attraction, escape set and p-domains of a closable target set,
 * from the gain solve with the target's indicator reward and unit weights.
 * The target is pre-absorbed before the solve; the result is the same either
 * way and the absorbed form is better conditioned.
 */
PDomainResult p_domain(const Model& m, const std::vector<int>& target,
                       const std::vector<double>& ps, const PDomainOptions& opts = {});

struct ReachAvoidResult {
    std::vector<double> v_tilde;  // max P(reach target before avoid), in [0,1]
    StationaryPolicy policy;
    double value = 0.0;  // nu-weighted aggregate
};

/// Maximal probability of reaching `target` while avoiding `avoid`, solved on
/// the kernel with both sets absorbed. The per-state values come from a
/// single unit-weight solve; the aggregate is a dot product with nu.
ReachAvoidResult reach_avoid(const Model& m, const std::vector<int>& target,
                             const std::vector<int>& avoid, const Distribution& nu);

enum class ConstrainedStatus { Feasible, Infeasible };

struct ConstrainedReachResult {
    ConstrainedStatus status = ConstrainedStatus::Infeasible;
    double value = 0.0;            // optimal reach probability
    double lambda_star = 0.0;      // multiplier of the hitting constraint
    TwoPhasePolicy policy;
    double constraint_mass = 0.0;  // alpha mass on layer 1 = P(hit avoid before target absorption)
    double slackness = 0.0;        // lambda_star * (eps - constraint_mass)
};

/**
 * Maximize P(reach target) subject to P(hit avoid) <= eps, over policies that
 * may condition on whether the avoid set has been visited. Solved as the
 * epsilon-capped gain LP on the augmented model with the target absorbed in
 * both layers; an avoid visit after target absorption is not counted by the
 * constraint.
 */
ConstrainedReachResult constrained_reach(const Model& m, const std::vector<int>& target,
                                         const std::vector<int>& avoid, const Distribution& nu,
                                         double eps);

}  // namespace mdpreach
