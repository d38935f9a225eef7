#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mdpreach/model.hpp"

namespace mdpreach {

/// Counter-free splitmix64 stream. Trajectory i of a run seeded with s draws
/// from stream_for(s, i), so results do not depend on execution order.
struct RngStream {
    uint64_t state;

    explicit RngStream(uint64_t seed) : state(seed) {}
    uint64_t next_u64();
    /// Uniform in [0, 1) with 53 random bits.
    double next_unit();
};

RngStream stream_for(uint64_t seed, uint64_t index);

/// Either a stationary policy or a two-phase policy driving a rollout.
struct RolloutPolicy {
    const StationaryPolicy* mu0 = nullptr;
    const StationaryPolicy* mu1 = nullptr;          // == mu0 for stationary
    const std::vector<int>* avoid_set = nullptr;    // nullptr for stationary

    static RolloutPolicy stationary(const StationaryPolicy& pi);
    static RolloutPolicy two_phase(const TwoPhasePolicy& tp);
    bool is_two_phase() const { return avoid_set != nullptr; }
};

struct Trajectory {
    int start = 0;
    std::vector<std::pair<int, int>> steps;  // (state, action) for each step taken
    int final_state = 0;
    std::optional<long> mode_switch;  // time of first avoid-set visit
    std::optional<long> hit_target;   // time of first target visit
    std::optional<long> hit_avoid;    // time of first avoid visit (same as mode_switch)
    bool truncated = false;           // stopped at the horizon with the target still open
};

/**
 * Samples one trajectory. Actions are drawn from mu0 while the history
 * (including the current state) has not visited the avoid set, from mu1
 * afterwards. Stops at the horizon, on entering `stop_set`, on reaching the
 * target, or in a state the active policy makes absorbing.
 */
Trajectory sample_trajectory(const Model& m, const RolloutPolicy& policy, int start, long horizon,
                             RngStream& stream, const std::vector<int>& target = {},
                             const std::vector<int>& stop_set = {});

struct HittingEstimate {
    double p_hat_target = 0.0;
    double p_hat_avoid = 0.0;
    double half_width_target = 0.0;  // 1.96 * sqrt(p(1-p)/n)
    double half_width_avoid = 0.0;
    long n = 0;
    double truncated_fraction = 0.0;
    long horizon = 0;
    uint64_t seed = 0;
};

/**
 * Monte Carlo estimate of P(hit target by the horizon) and P(hit avoid before
 * target absorption, by the horizon) from i.i.d. rollouts with starts drawn
 * from nu. Bit-identical for a fixed (seed, n, horizon) at any thread count.
 */
HittingEstimate estimate_hitting(const Model& m, const RolloutPolicy& policy,
                                 const Distribution& nu, const std::vector<int>& target,
                                 const std::vector<int>& avoid, long n, long horizon,
                                 uint64_t seed, int threads = 1);

}  // namespace mdpreach
