#include "mdpreach/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mdpreach {

double row_sum(const SparseRow& row) {
    double s = 0.0;
    for (const auto& [_, p] : row) s += p;
    return s;
}

SparseRow merge_row(SparseRow entries) {
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseRow out;
    for (const auto& [to, p] : entries) {
        if (!out.empty() && out.back().first == to)
            out.back().second += p;
        else
            out.emplace_back(to, p);
    }
    std::erase_if(out, [](const auto& e) { return e.second == 0.0; });
    return out;
}

int Model::feasible_index(int x, int u) const {
    const auto& fs = feasible[x];
    auto it = std::lower_bound(fs.begin(), fs.end(), u);
    if (it == fs.end() || *it != u) return -1;
    return static_cast<int>(it - fs.begin());
}

const SparseRow& Model::row(int x, int u) const {
    int k = feasible_index(x, u);
    if (k < 0) throw std::invalid_argument("action " + action_name(u) + " not feasible at state " + state_name(x));
    return kernel[x][k];
}

std::string Model::state_name(int x) const {
    if (has_labels() && x >= 0 && x < n_states) return state_labels[x];
    return std::to_string(x);
}

std::string Model::action_name(int u) const {
    if (u >= 0 && u < n_actions()) return action_labels[u];
    return std::to_string(u);
}

std::string ValidationReport::to_string() const {
    if (valid()) return "model valid";
    std::ostringstream os;
    os << violations.size() << " violation(s):";
    for (const auto& v : violations) os << "\n  - " << v.message;
    return os.str();
}

ValidationReport validate_model(const Model& m) {
    ValidationReport rep;
    auto add = [&](std::string msg, int x = -1, int u = -1) {
        rep.violations.push_back({std::move(msg), x, u});
    };

    if (m.n_states <= 0) {
        add("no states");
        return rep;
    }
    if (m.has_labels() && static_cast<int>(m.state_labels.size()) != m.n_states)
        add("state_labels size does not match n_states");
    if (static_cast<int>(m.feasible.size()) != m.n_states ||
        static_cast<int>(m.kernel.size()) != m.n_states) {
        add("feasible/kernel tables do not cover every state");
        return rep;
    }
    if (m.has_reward() && static_cast<int>(m.reward.size()) != m.n_states)
        add("reward table does not cover every state");

    for (int x = 0; x < m.n_states; ++x) {
        const auto& fs = m.feasible[x];
        if (fs.empty()) add("state " + m.state_name(x) + " has no feasible action", x);
        if (!std::is_sorted(fs.begin(), fs.end()) ||
            std::adjacent_find(fs.begin(), fs.end()) != fs.end())
            add("feasible set at state " + m.state_name(x) + " is not sorted/unique", x);
        for (int u : fs)
            if (u < 0 || u >= m.n_actions())
                add("feasible set at state " + m.state_name(x) + " names unknown action id " +
                        std::to_string(u),
                    x, u);
        if (m.kernel[x].size() != fs.size()) {
            add("kernel rows at state " + m.state_name(x) + " do not match feasible set", x);
            continue;
        }
        if (m.has_reward() && m.reward[x].size() != fs.size())
            add("reward entries at state " + m.state_name(x) + " do not match feasible set", x);

        for (size_t k = 0; k < fs.size(); ++k) {
            const int u = fs[k];
            const auto& row = m.kernel[x][k];
            const std::string pair = "(" + m.state_name(x) + "," + m.action_name(u) + ")";
            if (row.empty()) {
                add("kernel row " + pair + " is empty", x, u);
                continue;
            }
            double sum = 0.0;
            int prev = -1;
            for (const auto& [to, p] : row) {
                if (to < 0 || to >= m.n_states)
                    add("kernel row " + pair + " references invalid state id " + std::to_string(to),
                        x, u);
                if (to == prev)
                    add("duplicate kernel entry (" + m.state_name(x) + "," + m.action_name(u) +
                            "," + m.state_name(to) + ")",
                        x, u);
                if (to < prev) add("kernel row " + pair + " is not sorted by destination", x, u);
                prev = to;
                if (!(p >= 0.0)) add("kernel row " + pair + " has negative probability", x, u);
                sum += p;
            }
            if (std::abs(sum - 1.0) > kProbTol)
                add("kernel row " + pair + " sums to " + std::to_string(sum) + ", expected 1", x, u);
            if (m.has_reward() && m.reward[x].size() == fs.size() && !std::isfinite(m.reward[x][k]))
                add("reward at " + pair + " is not finite", x, u);
        }
    }
    return rep;
}

void require_valid(const Model& m) {
    ValidationReport rep = validate_model(m);
    if (!rep.valid()) throw std::invalid_argument("invalid model: " + rep.to_string());
}

Distribution Distribution::uniform(int n_states) {
    Distribution d;
    d.weights.reserve(n_states);
    const double w = 1.0 / n_states;
    for (int x = 0; x < n_states; ++x) d.weights.emplace_back(x, w);
    return d;
}

Distribution Distribution::point(int state) {
    Distribution d;
    d.weights.emplace_back(state, 1.0);
    return d;
}

double Distribution::mass(int state) const {
    auto it = std::lower_bound(weights.begin(), weights.end(), state,
                               [](const auto& e, int s) { return e.first < s; });
    if (it == weights.end() || it->first != state) return 0.0;
    return it->second;
}

double Distribution::total() const { return row_sum(weights); }

std::vector<double> Distribution::dense(int n_states) const {
    std::vector<double> out(n_states, 0.0);
    for (const auto& [x, w] : weights) out[x] = w;
    return out;
}

void Distribution::validate(int n_states) const {
    int prev = -1;
    for (const auto& [x, w] : weights) {
        if (x < 0 || x >= n_states)
            throw std::invalid_argument("distribution references invalid state id " + std::to_string(x));
        if (x <= prev) throw std::invalid_argument("distribution weights not sorted/unique");
        prev = x;
        if (!(w >= 0.0)) throw std::invalid_argument("distribution has negative weight");
    }
    if (strict && std::abs(total() - 1.0) > kProbTol)
        throw std::invalid_argument("distribution does not sum to 1");
}

StationaryPolicy StationaryPolicy::deterministic(const Model& m, const std::vector<int>& action_per_state) {
    StationaryPolicy pi;
    pi.choice.resize(m.n_states);
    for (int x = 0; x < m.n_states; ++x) pi.choice[x] = {{action_per_state[x], 1.0}};
    return pi;
}

StationaryPolicy StationaryPolicy::pure(const Model& m, int action) {
    return deterministic(m, std::vector<int>(m.n_states, action));
}

double StationaryPolicy::prob(int x, int u) const {
    for (const auto& [a, p] : choice[x])
        if (a == u) return p;
    return 0.0;
}

void StationaryPolicy::validate(const Model& m) const {
    if (static_cast<int>(choice.size()) != m.n_states)
        throw std::invalid_argument("policy does not cover every state");
    for (int x = 0; x < m.n_states; ++x) {
        double sum = 0.0;
        int prev = -1;
        for (const auto& [u, p] : choice[x]) {
            if (u <= prev) throw std::invalid_argument("policy row at state " + m.state_name(x) + " not sorted/unique");
            prev = u;
            if (m.feasible_index(x, u) < 0)
                throw std::invalid_argument("policy at state " + m.state_name(x) +
                                            " uses infeasible action " + m.action_name(u));
            if (!(p >= 0.0))
                throw std::invalid_argument("policy at state " + m.state_name(x) + " has negative probability");
            sum += p;
        }
        if (std::abs(sum - 1.0) > kProbTol)
            throw std::invalid_argument("policy row at state " + m.state_name(x) + " does not sum to 1");
    }
}

void TwoPhasePolicy::validate(const Model& m) const {
    mu0.validate(m);
    mu1.validate(m);
    for (int b : avoid_set)
        if (b < 0 || b >= m.n_states)
            throw std::invalid_argument("avoid set references invalid state id " + std::to_string(b));
    if (!std::is_sorted(avoid_set.begin(), avoid_set.end()))
        throw std::invalid_argument("avoid set not sorted");
}

std::vector<SparseRow> induced_chain(const Model& m, const StationaryPolicy& pi) {
    pi.validate(m);
    std::vector<SparseRow> chain(m.n_states);
    for (int x = 0; x < m.n_states; ++x) {
        SparseRow acc;
        for (const auto& [u, pu] : pi.choice[x]) {
            if (pu == 0.0) continue;
            for (const auto& [to, p] : m.row(x, u)) acc.emplace_back(to, pu * p);
        }
        chain[x] = merge_row(std::move(acc));
    }
    return chain;
}

bool closed_under_all_policies(const Model& m, const std::vector<int>& set) {
    for (int x : set) {
        for (size_t k = 0; k < m.feasible[x].size(); ++k) {
            double inside = 0.0;
            for (const auto& [to, p] : m.kernel[x][k])
                if (contains(set, to)) inside += p;
            if (std::abs(inside - 1.0) > kProbTol) return false;
        }
    }
    return true;
}

bool closed_under_chain(const std::vector<SparseRow>& chain, const std::vector<int>& set) {
    for (int x : set) {
        double inside = 0.0;
        for (const auto& [to, p] : chain[x])
            if (contains(set, to)) inside += p;
        if (std::abs(inside - 1.0) > kProbTol) return false;
    }
    return true;
}

std::vector<int> sorted_unique(std::vector<int> xs) {
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
}

bool contains(const std::vector<int>& sorted_xs, int x) {
    return std::binary_search(sorted_xs.begin(), sorted_xs.end(), x);
}

}  // namespace mdpreach
