#pragma once

#include <cstdint>
#include <vector>

#include "mdpreach/model.hpp"
#include "mdpreach/sim.hpp"

namespace mdpreach::testing {

/// Five-state, two-action benchmark chain. Labels "1".."5", actions u1/u2.
/// u1: 1->3, 2->2, 3->{4:0.1, 5:0.9}, 4->4, 5->5
/// u2: 1->3, 2->4, 3->2,             4->4, 5->5
inline Model m5() {
    Model m;
    m.n_states = 5;
    m.state_labels = {"1", "2", "3", "4", "5"};
    m.action_labels = {"u1", "u2"};
    m.feasible.assign(5, {0, 1});
    m.kernel.assign(5, std::vector<SparseRow>(2));
    m.kernel[0][0] = {{2, 1.0}};
    m.kernel[0][1] = {{2, 1.0}};
    m.kernel[1][0] = {{1, 1.0}};
    m.kernel[1][1] = {{3, 1.0}};
    m.kernel[2][0] = {{3, 0.1}, {4, 0.9}};
    m.kernel[2][1] = {{1, 1.0}};
    m.kernel[3][0] = {{3, 1.0}};
    m.kernel[3][1] = {{3, 1.0}};
    m.kernel[4][0] = {{4, 1.0}};
    m.kernel[4][1] = {{4, 1.0}};
    return m;
}

// M5 sets by state id (labels "4" -> id 3, "1","2" -> ids 0,1).
inline std::vector<int> m5_target() { return {3}; }
inline std::vector<int> m5_avoid() { return {0, 1}; }

struct RandomModelParams {
    int min_states = 2;
    int max_states = 12;
    int max_actions = 4;
    int max_out_degree = 3;
    // extra weight pulled toward a designated sink set, 0 to disable
    double absorb_bias = 0.0;
};

/// Seeded random sparse model; valid by construction.
Model random_model(RngStream& rng, const RandomModelParams& params = {});

/// Disjoint nonempty random subsets of the state space.
std::pair<std::vector<int>, std::vector<int>> random_disjoint_sets(RngStream& rng, int n_states);

/// Random stationary policy with full support on feasible actions.
StationaryPolicy random_policy(RngStream& rng, const Model& m);

/// Random two-phase policy.
TwoPhasePolicy random_two_phase(RngStream& rng, const Model& m, std::vector<int> avoid);

/// Biases every kernel row with `weight` of extra mass spread over `sink`,
/// keeping rows stochastic. Used to keep random chains fast-mixing.
Model bias_toward(const Model& m, const std::vector<int>& sink, double weight, RngStream& rng);

}  // namespace mdpreach::testing
