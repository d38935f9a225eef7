#include "fixtures.hpp"

#include <algorithm>

namespace mdpreach::testing {

namespace {

int pick(RngStream& rng, int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(rng.next_u64() % static_cast<uint64_t>(hi - lo + 1));
}

SparseRow random_row(RngStream& rng, int n_states, int max_out_degree) {
    const int deg = pick(rng, 1, std::min(max_out_degree, n_states));
    std::vector<int> dests;
    while (static_cast<int>(dests.size()) < deg) {
        const int d = pick(rng, 0, n_states - 1);
        if (!contains(dests, d)) {
            dests.push_back(d);
            std::sort(dests.begin(), dests.end());
        }
    }
    SparseRow row;
    double total = 0.0;
    std::vector<double> w;
    for (size_t i = 0; i < dests.size(); ++i) {
        w.push_back(0.05 + rng.next_unit());
        total += w.back();
    }
    for (size_t i = 0; i < dests.size(); ++i) row.emplace_back(dests[i], w[i] / total);
    return row;
}

}  // namespace

Model random_model(RngStream& rng, const RandomModelParams& params) {
    Model m;
    m.n_states = pick(rng, params.min_states, params.max_states);
    const int n_actions = pick(rng, 1, params.max_actions);
    for (int a = 0; a < n_actions; ++a) m.action_labels.push_back("a" + std::to_string(a));
    m.feasible.resize(m.n_states);
    m.kernel.resize(m.n_states);
    for (int x = 0; x < m.n_states; ++x) {
        const int k = pick(rng, 1, n_actions);
        for (int a = 0; a < k; ++a) m.feasible[x].push_back(a);
        m.kernel[x].resize(m.feasible[x].size());
        for (auto& row : m.kernel[x]) row = random_row(rng, m.n_states, params.max_out_degree);
    }
    require_valid(m);
    return m;
}

std::pair<std::vector<int>, std::vector<int>> random_disjoint_sets(RngStream& rng, int n_states) {
    std::vector<int> perm(n_states);
    for (int i = 0; i < n_states; ++i) perm[i] = i;
    for (int i = n_states - 1; i > 0; --i)
        std::swap(perm[i], perm[pick(rng, 0, i)]);
    const int max_each = std::max(1, n_states / 3);
    const int na = pick(rng, 1, max_each);
    const int nb = pick(rng, 1, max_each);
    std::vector<int> a(perm.begin(), perm.begin() + na);
    std::vector<int> b(perm.begin() + na, perm.begin() + na + nb);
    return {sorted_unique(std::move(a)), sorted_unique(std::move(b))};
}

StationaryPolicy random_policy(RngStream& rng, const Model& m) {
    StationaryPolicy pi;
    pi.choice.resize(m.n_states);
    for (int x = 0; x < m.n_states; ++x) {
        double total = 0.0;
        std::vector<double> w;
        for (size_t k = 0; k < m.feasible[x].size(); ++k) {
            w.push_back(0.05 + rng.next_unit());
            total += w.back();
        }
        for (size_t k = 0; k < m.feasible[x].size(); ++k)
            pi.choice[x].emplace_back(m.feasible[x][k], w[k] / total);
    }
    pi.validate(m);
    return pi;
}

TwoPhasePolicy random_two_phase(RngStream& rng, const Model& m, std::vector<int> avoid) {
    TwoPhasePolicy tp;
    tp.mu0 = random_policy(rng, m);
    tp.mu1 = random_policy(rng, m);
    tp.avoid_set = sorted_unique(std::move(avoid));
    return tp;
}

Model bias_toward(const Model& m, const std::vector<int>& sink, double weight, RngStream& rng) {
    Model out = m;
    const auto s = sorted_unique(sink);
    for (int x = 0; x < m.n_states; ++x) {
        if (contains(s, x)) continue;
        for (auto& row : out.kernel[x]) {
            const int dst = s[static_cast<size_t>(rng.next_u64() % s.size())];
            SparseRow shifted;
            for (const auto& [to, p] : row) shifted.emplace_back(to, p * (1.0 - weight));
            shifted.emplace_back(dst, weight);
            row = merge_row(std::move(shifted));
        }
    }
    require_valid(out);
    return out;
}

}  // namespace mdpreach::testing
