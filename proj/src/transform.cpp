#include "mdpreach/transform.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

#include "mdpreach/util.hpp"

namespace mdpreach {

Model make_absorbing(const Model& m, const std::vector<std::vector<int>>& sets) {
    std::vector<int> seen;
    for (const auto& s : sets) {
        for (int x : s) {
            if (x < 0 || x >= m.n_states)
                throw std::invalid_argument("make_absorbing: invalid state id " + std::to_string(x));
            seen.push_back(x);
        }
    }
    const size_t total = seen.size();
    seen = sorted_unique(std::move(seen));
    if (seen.size() != total) throw std::invalid_argument("make_absorbing: sets overlap");

    Model out = m;
    for (int x : seen)
        for (auto& row : out.kernel[x]) row = {{x, 1.0}};
    return out;
}

std::vector<int> AugmentedModel::layer_states(int l) const {
    std::vector<int> out;
    out.reserve(base.n_states);
    for (int x = 0; x < base.n_states; ++x) out.push_back(id_of(x, l));
    return out;
}

std::vector<int> AugmentedModel::both_layers(const std::vector<int>& base_set) const {
    std::vector<int> out;
    out.reserve(2 * base_set.size());
    for (int x : base_set) {
        out.push_back(id_of(x, 0));
        out.push_back(id_of(x, 1));
    }
    return sorted_unique(std::move(out));
}

AugmentedModel augment(const Model& m, const std::vector<int>& avoid_set) {
    AugmentedModel aug;
    aug.base = m;
    aug.avoid_set = sorted_unique(avoid_set);
    for (int b : aug.avoid_set)
        if (b < 0 || b >= m.n_states)
            throw std::invalid_argument("augment: invalid state id " + std::to_string(b));

    Model& a = aug.model;
    a.n_states = 2 * m.n_states;
    a.action_labels = m.action_labels;
    if (m.has_labels()) {
        a.state_labels.resize(a.n_states);
        for (int x = 0; x < m.n_states; ++x) {
            a.state_labels[aug.id_of(x, 0)] = "(" + m.state_labels[x] + ",0)";
            a.state_labels[aug.id_of(x, 1)] = "(" + m.state_labels[x] + ",1)";
        }
    }
    a.feasible.resize(a.n_states);
    a.kernel.resize(a.n_states);
    for (int x = 0; x < m.n_states; ++x) {
        for (int layer : {0, 1}) {
            const int id = aug.id_of(x, layer);
            a.feasible[id] = m.feasible[x];
            a.kernel[id].resize(m.feasible[x].size());
            for (size_t k = 0; k < m.feasible[x].size(); ++k) {
                SparseRow row;
                row.reserve(m.kernel[x][k].size());
                for (const auto& [y, p] : m.kernel[x][k]) {
                    const int dst_layer =
                        (layer == 1 || contains(aug.avoid_set, y)) ? 1 : 0;
                    row.emplace_back(aug.id_of(y, dst_layer), p);
                }
                std::sort(row.begin(), row.end(),
                          [](const auto& l, const auto& r) { return l.first < r.first; });
                a.kernel[id][k] = std::move(row);
            }
        }
    }
    return aug;
}

std::string augmented_sidecar_json(const AugmentedModel& aug) {
    nlohmann::ordered_json idx = nlohmann::ordered_json::object();
    for (int id = 0; id < aug.model.n_states; ++id) {
        nlohmann::ordered_json e;
        e["x"] = aug.base_state(id);
        e["i"] = aug.layer(id);
        idx[std::to_string(id)] = e;
    }
    nlohmann::ordered_json j;
    j["aug_index"] = idx;
    return dump_json_g17(j);
}

Distribution lift_distribution(const Distribution& nu, const AugmentedModel& aug) {
    Distribution out;
    out.strict = nu.strict;
    out.weights.reserve(nu.weights.size());
    for (const auto& [x, w] : nu.weights) {
        const int layer = contains(aug.avoid_set, x) ? 1 : 0;
        out.weights.emplace_back(aug.id_of(x, layer), w);
    }
    std::sort(out.weights.begin(), out.weights.end(),
              [](const auto& l, const auto& r) { return l.first < r.first; });
    return out;
}

std::vector<double> build_lagrangian_reward(const AugmentedModel& aug,
                                            const std::vector<int>& target_set, double lambda) {
    const auto target = sorted_unique(target_set);
    for (int a : target)
        if (contains(aug.avoid_set, a))
            throw std::invalid_argument("lagrangian reward: target state " +
                                        aug.base.state_name(a) + " lies in the avoid set");
    std::vector<double> r(aug.model.n_states, 0.0);
    for (int x = 0; x < aug.base.n_states; ++x) {
        const double in_target = contains(target, x) ? 1.0 : 0.0;
        r[aug.id_of(x, 0)] = in_target;
        r[aug.id_of(x, 1)] = in_target - lambda;
    }
    return r;
}

TwoPhasePolicy project_policy(const StationaryPolicy& aug_pi, const AugmentedModel& aug) {
    aug_pi.validate(aug.model);
    TwoPhasePolicy tp;
    tp.avoid_set = aug.avoid_set;
    tp.mu0.choice.resize(aug.base.n_states);
    tp.mu1.choice.resize(aug.base.n_states);
    for (int x = 0; x < aug.base.n_states; ++x) {
        tp.mu0.choice[x] = aug_pi.choice[aug.id_of(x, 0)];
        tp.mu1.choice[x] = aug_pi.choice[aug.id_of(x, 1)];
    }
    return tp;
}

StationaryPolicy embed_policy(const TwoPhasePolicy& tp, const AugmentedModel& aug) {
    tp.validate(aug.base);
    StationaryPolicy pi;
    pi.choice.resize(aug.model.n_states);
    for (int x = 0; x < aug.base.n_states; ++x) {
        pi.choice[aug.id_of(x, 0)] = tp.mu0.choice[x];
        pi.choice[aug.id_of(x, 1)] = tp.mu1.choice[x];
    }
    return pi;
}

}  // namespace mdpreach
