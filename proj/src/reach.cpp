#include "mdpreach/reach.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mdpreach {

namespace {

void require_disjoint(const Model& m, const std::vector<int>& a, const std::vector<int>& b) {
    for (int x : a)
        if (contains(b, x))
            throw std::invalid_argument("target and avoid sets overlap at state " + m.state_name(x));
}

std::vector<int> checked_set(const Model& m, const std::vector<int>& set, const char* what) {
    auto s = sorted_unique(set);
    for (int x : s)
        if (x < 0 || x >= m.n_states)
            throw std::invalid_argument(std::string(what) + " set references invalid state id " +
                                        std::to_string(x));
    return s;
}

std::vector<double> clamp_unit(std::vector<double> v) {
    for (double& x : v) x = std::min(1.0, std::max(0.0, x));
    return v;
}

}  // namespace

std::vector<bool> check_closable(const Model& m, const std::vector<int>& target) {
    const auto set = checked_set(m, target, "target");
    std::vector<bool> ok(set.size(), false);
    for (size_t i = 0; i < set.size(); ++i) {
        const int x = set[i];
        for (const auto& row : m.kernel[x]) {
            double inside = 0.0;
            for (const auto& [to, p] : row)
                if (contains(set, to)) inside += p;
            if (std::abs(inside - 1.0) <= kProbTol) {
                ok[i] = true;
                break;
            }
        }
    }
    return ok;
}

PDomainResult p_domain(const Model& m, const std::vector<int>& target,
                       const std::vector<double>& ps, const PDomainOptions& opts) {
    const auto set = checked_set(m, target, "target");
    const auto closable = check_closable(m, set);
    for (size_t i = 0; i < set.size(); ++i)
        if (!closable[i])
            throw std::invalid_argument(
                "p_domain requires a closable target: no action keeps all mass inside the set at "
                "state " +
                m.state_name(set[i]));

    for (double p : ps)
        if (!(p > 0.0 && p <= 1.0))
            throw std::invalid_argument("p_domain: p values must lie in (0, 1]");

    const Model absorbed = make_absorbing(m, {set});
    const GainSolution sol = solve_gain(absorbed, indicator_reward(absorbed, set),
                                        std::vector<double>(m.n_states, 1.0));

    PDomainResult res;
    res.v_star = clamp_unit(sol.v);
    res.ps = ps;
    for (double p : ps) {
        std::vector<int> lam;
        for (int x = 0; x < m.n_states; ++x)
            if (res.v_star[x] >= p - opts.zero_threshold) lam.push_back(x);
        res.lambda_sets.push_back(std::move(lam));
    }
    for (int x = 0; x < m.n_states; ++x) {
        if (res.v_star[x] > opts.zero_threshold)
            res.domain.push_back(x);
        else
            res.escape.push_back(x);
    }
    return res;
}

ReachAvoidResult reach_avoid(const Model& m, const std::vector<int>& target,
                             const std::vector<int>& avoid, const Distribution& nu) {
    const auto a = checked_set(m, target, "target");
    const auto b = checked_set(m, avoid, "avoid");
    require_disjoint(m, a, b);
    nu.validate(m.n_states);

    const Model absorbed = make_absorbing(m, {a, b});
    const GainSolution sol = solve_gain(absorbed, indicator_reward(absorbed, a),
                                        std::vector<double>(m.n_states, 1.0));

    ReachAvoidResult res;
    res.v_tilde = clamp_unit(sol.v);
    res.policy = extract_policy(absorbed, sol);
    res.value = 0.0;
    for (const auto& [x, w] : nu.weights) res.value += w * res.v_tilde[x];
    return res;
}

ConstrainedReachResult constrained_reach(const Model& m, const std::vector<int>& target,
                                         const std::vector<int>& avoid, const Distribution& nu,
                                         double eps) {
    const auto a = checked_set(m, target, "target");
    const auto b = checked_set(m, avoid, "avoid");
    require_disjoint(m, a, b);
    nu.validate(m.n_states);
    if (!(eps >= 0.0)) throw std::invalid_argument("constrained_reach: eps must be nonnegative");

    AugmentedModel aug = augment(m, b);
    const std::vector<int> a0 = [&] {
        std::vector<int> v;
        for (int x : a) v.push_back(aug.id_of(x, 0));
        return v;
    }();
    const std::vector<int> a1 = [&] {
        std::vector<int> v;
        for (int x : a) v.push_back(aug.id_of(x, 1));
        return v;
    }();
    aug.model = make_absorbing(aug.model, {a0, a1});

    const Distribution nu_hat = lift_distribution(nu, aug);
    const EpsilonRow cap{aug.layer_states(1), eps};
    const GainSolution sol =
        solve_gain(aug.model, indicator_reward(aug.model, aug.both_layers(a)),
                   nu_hat.dense(aug.model.n_states), cap);

    ConstrainedReachResult res;
    if (sol.status == LpStatus::Infeasible) {
        res.status = ConstrainedStatus::Infeasible;
        return res;
    }
    res.status = ConstrainedStatus::Feasible;
    res.value = sol.objective;
    res.lambda_star = std::max(0.0, sol.lambda_dual.value_or(0.0));
    res.policy = project_policy(extract_policy(aug.model, sol), aug);

    double mass = 0.0;
    for (int id : cap.states)
        for (double av : sol.alpha[id]) mass += av;
    res.constraint_mass = mass;
    res.slackness = res.lambda_star * (eps - mass);
    return res;
}

}  // namespace mdpreach
