#include "mdpreach/sim.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

namespace mdpreach {

uint64_t RngStream::next_u64() {
    // splitmix64
    state += 0x9E3779B97F4A7C15ULL;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double RngStream::next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

RngStream stream_for(uint64_t seed, uint64_t index) {
    RngStream scramble(seed ^ (0x9E3779B97F4A7C15ULL * (index + 1)));
    return RngStream(scramble.next_u64());
}

RolloutPolicy RolloutPolicy::stationary(const StationaryPolicy& pi) {
    RolloutPolicy rp;
    rp.mu0 = &pi;
    rp.mu1 = &pi;
    return rp;
}

RolloutPolicy RolloutPolicy::two_phase(const TwoPhasePolicy& tp) {
    RolloutPolicy rp;
    rp.mu0 = &tp.mu0;
    rp.mu1 = &tp.mu1;
    rp.avoid_set = &tp.avoid_set;
    return rp;
}

namespace {

int draw(const SparseRow& row, RngStream& stream) {
    const double u = stream.next_unit();
    double acc = 0.0;
    for (const auto& [id, p] : row) {
        acc += p;
        if (u < acc) return id;
    }
    return row.back().first;  // guard against the 1e-12 mass slack
}

/// True when every action of the active phase keeps the state fixed.
bool policy_absorbs(const Model& m, const StationaryPolicy& mu, int x) {
    for (const auto& [u, p] : mu.choice[x]) {
        if (p == 0.0) continue;
        const SparseRow& row = m.row(x, u);
        if (row.size() != 1 || row[0].first != x) return false;
    }
    return true;
}

}  // namespace

Trajectory sample_trajectory(const Model& m, const RolloutPolicy& policy, int start, long horizon,
                             RngStream& stream, const std::vector<int>& target_in,
                             const std::vector<int>& stop_set_in) {
    if (start < 0 || start >= m.n_states)
        throw std::invalid_argument("sample_trajectory: invalid start state");
    if (horizon < 0) throw std::invalid_argument("sample_trajectory: negative horizon");
    const std::vector<int> target = sorted_unique(target_in);
    const std::vector<int> stop_set = sorted_unique(stop_set_in);

    Trajectory traj;
    traj.start = start;
    int x = start;
    bool mode1 = policy.is_two_phase() && contains(*policy.avoid_set, start);
    if (mode1) {
        traj.mode_switch = 0;
        traj.hit_avoid = 0;
    }
    if (contains(target, start)) traj.hit_target = 0;

    for (long t = 0; t < horizon; ++t) {
        if (traj.hit_target) break;
        if (contains(stop_set, x)) break;
        const StationaryPolicy& mu = mode1 ? *policy.mu1 : *policy.mu0;
        if (mu.choice[x].empty())
            throw std::runtime_error("policy has a zero row at reached state " + m.state_name(x));
        if (policy_absorbs(m, mu, x)) break;

        const int u = draw(mu.choice[x], stream);
        traj.steps.emplace_back(x, u);
        x = draw(m.row(x, u), stream);

        const long now = t + 1;
        if (policy.is_two_phase() && !mode1 && contains(*policy.avoid_set, x)) {
            mode1 = true;
            traj.mode_switch = now;
            traj.hit_avoid = now;
        }
        if (!traj.hit_target && contains(target, x)) traj.hit_target = now;
    }
    traj.final_state = x;
    const StationaryPolicy& mu = mode1 ? *policy.mu1 : *policy.mu0;
    traj.truncated = !traj.hit_target && !contains(stop_set, x) && !policy_absorbs(m, mu, x) &&
                     static_cast<long>(traj.steps.size()) == horizon && horizon > 0;
    return traj;
}

namespace {

struct Counts {
    long hit_target = 0;
    long hit_avoid = 0;
    long truncated = 0;
};

Counts run_block(const Model& m, const RolloutPolicy& policy, const Distribution& nu,
                 const std::vector<int>& target, const std::vector<int>& avoid, long lo, long hi,
                 long horizon, uint64_t seed) {
    Counts c;
    for (long i = lo; i < hi; ++i) {
        RngStream stream = stream_for(seed, static_cast<uint64_t>(i));
        // Start drawn first, from the same per-trajectory stream.
        int start = nu.weights.back().first;
        {
            const double u = stream.next_unit();
            double acc = 0.0;
            for (const auto& [x, w] : nu.weights) {
                acc += w;
                if (u < acc) {
                    start = x;
                    break;
                }
            }
        }
        const Trajectory traj = sample_trajectory(m, policy, start, horizon, stream, target);
        // Scan the visited states: avoid counts only before target absorption.
        long t_target = -1, t_avoid = -1;
        long t = 0;
        auto visit = [&](int x) {
            if (t_target < 0 && contains(target, x)) t_target = t;
            if (t_avoid < 0 && contains(avoid, x)) t_avoid = t;
            ++t;
        };
        for (const auto& [x, _] : traj.steps) visit(x);
        visit(traj.final_state);
        if (t_target >= 0) ++c.hit_target;
        if (t_avoid >= 0 && (t_target < 0 || t_avoid < t_target)) ++c.hit_avoid;
        if (traj.truncated) ++c.truncated;
    }
    return c;
}

}  // namespace

HittingEstimate estimate_hitting(const Model& m, const RolloutPolicy& policy,
                                 const Distribution& nu, const std::vector<int>& target,
                                 const std::vector<int>& avoid, long n, long horizon,
                                 uint64_t seed, int threads) {
    if (n < 1) throw std::invalid_argument("estimate_hitting: need at least one trajectory");
    nu.validate(m.n_states);
    const auto tgt = sorted_unique(target);
    const auto avd = sorted_unique(avoid);

    threads = std::max(1, threads);
    const long chunk = (n + threads - 1) / threads;
    std::vector<Counts> parts(static_cast<size_t>(threads));
    std::vector<std::thread> pool;
    for (int k = 0; k < threads; ++k) {
        const long lo = k * chunk;
        const long hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, k, lo, hi] {
            parts[static_cast<size_t>(k)] = run_block(m, policy, nu, tgt, avd, lo, hi, horizon, seed);
        });
    }
    for (auto& th : pool) th.join();

    Counts total;
    for (const Counts& c : parts) {
        total.hit_target += c.hit_target;
        total.hit_avoid += c.hit_avoid;
        total.truncated += c.truncated;
    }

    HittingEstimate est;
    est.n = n;
    est.horizon = horizon;
    est.seed = seed;
    est.p_hat_target = static_cast<double>(total.hit_target) / static_cast<double>(n);
    est.p_hat_avoid = static_cast<double>(total.hit_avoid) / static_cast<double>(n);
    est.truncated_fraction = static_cast<double>(total.truncated) / static_cast<double>(n);
    auto hw = [&](double p) { return 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(n)); };
    est.half_width_target = hw(est.p_hat_target);
    est.half_width_avoid = hw(est.p_hat_avoid);
    return est;
}

}  // namespace mdpreach
