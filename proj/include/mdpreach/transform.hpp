#pragma once

#include <string>
#include <vector>

#include "mdpreach/model.hpp"

namespace mdpreach {

/**
 * Makes each given state set closed under every policy: within a set, every
 * feasible action's kernel row becomes the point mass at the current state.
 * All other rows are unchanged. Sets must be pairwise disjoint.
 */
Model make_absorbing(const Model& m, const std::vector<std::vector<int>>& sets);

/**
 * Two-layer copy of a base model tracking whether the avoid set has been
 * visited. State (x, i) is encoded as id 2*x + i; layer 1 is closed, and
 * layer 0 transitions switch to layer 1 exactly on entering the avoid set.
 */
struct AugmentedModel {
    Model base;
    std::vector<int> avoid_set;  // sorted
    Model model;                 // 2 * base.n_states states

    int id_of(int x, int layer) const { return 2 * x + layer; }
    int base_state(int id) const { return id / 2; }
    int layer(int id) const { return id % 2; }

    /// All ids of one layer, ascending.
    std::vector<int> layer_states(int layer) const;
    /// Ids {(x,0), (x,1)} for each x of a base set, ascending.
    std::vector<int> both_layers(const std::vector<int>& base_set) const;
};

AugmentedModel augment(const Model& m, const std::vector<int>& avoid_set);

/// Sidecar for a serialized augmented model:
/// {"aug_index": {"<id>": {"x": base_state, "i": layer}}}.
std::string augmented_sidecar_json(const AugmentedModel& aug);

/// Splits a base distribution across layers by avoid-set membership:
/// mass of x goes to (x,1) when x is in the set, to (x,0) otherwise.
Distribution lift_distribution(const Distribution& nu, const AugmentedModel& aug);

/// Per-augmented-state reward: 1 on the target (both layers), minus lambda on
/// all of layer 1. target_set must be disjoint from the avoid set.
std::vector<double> build_lagrangian_reward(const AugmentedModel& aug,
                                            const std::vector<int>& target_set, double lambda);

/// Restricts a stationary policy on the augmented model to its two layers.
TwoPhasePolicy project_policy(const StationaryPolicy& aug_pi, const AugmentedModel& aug);

/// Inverse of project_policy: layer-0 rows from mu0, layer-1 rows from mu1.
/// project_policy(embed_policy(tp)) == tp exactly.
StationaryPolicy embed_policy(const TwoPhasePolicy& tp, const AugmentedModel& aug);

}  // namespace mdpreach
