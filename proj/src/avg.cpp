#include "mdpreach/avg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <json.hpp>

#include "mdpreach/util.hpp"

namespace mdpreach {

namespace {

constexpr double kMassTol = 1e-9;   // alpha/beta support threshold
constexpr double kCheckTol = 1e-8;  // post-solve identity tolerance

std::string pair_tag(char which, int x, int u) {
    return std::string(1, which) + "(" + std::to_string(x) + "," + std::to_string(u) + ")";
}

}  // namespace

RewardTable indicator_reward(const Model& m, const std::vector<int>& set, double value) {
    const auto s = sorted_unique(set);
    RewardTable r(m.n_states);
    for (int x = 0; x < m.n_states; ++x)
        r[x].assign(m.feasible[x].size(), contains(s, x) ? value : 0.0);
    return r;
}

RewardTable state_reward(const Model& m, const std::vector<double>& per_state) {
    RewardTable r(m.n_states);
    for (int x = 0; x < m.n_states; ++x) r[x].assign(m.feasible[x].size(), per_state[x]);
    return r;
}

LinearProgram build_gain_lp(const Model& m, const RewardTable& reward,
                            const std::vector<double>& nu, const std::optional<EpsilonRow>& eps) {
    if (static_cast<int>(reward.size()) != m.n_states)
        throw std::invalid_argument("gain lp: reward table does not cover every state");
    for (int x = 0; x < m.n_states; ++x)
        if (reward[x].size() != m.feasible[x].size())
            throw std::invalid_argument("gain lp: reward missing on a feasible pair at state " +
                                        m.state_name(x));
    if (static_cast<int>(nu.size()) != m.n_states)
        throw std::invalid_argument("gain lp: nu does not cover every state");
    for (double w : nu)
        if (!(w >= 0.0)) throw std::invalid_argument("gain lp: nu must be nonnegative");

    LinearProgram lp;
    lp.sense = LpSense::Max;

    // Columns: all alpha(x,u), then all beta(x,u), in (state, action) order.
    std::vector<int> first_col(m.n_states + 1, 0);
    for (int x = 0; x < m.n_states; ++x)
        first_col[x + 1] = first_col[x] + static_cast<int>(m.feasible[x].size());
    const int n_pairs = first_col[m.n_states];
    auto acol = [&](int x, int k) { return first_col[x] + k; };
    auto bcol = [&](int x, int k) { return n_pairs + first_col[x] + k; };

    for (int x = 0; x < m.n_states; ++x)
        for (size_t k = 0; k < m.feasible[x].size(); ++k) {
            lp.add_column(false, pair_tag('a', x, m.feasible[x][k]));
            lp.set_objective(acol(x, static_cast<int>(k)), reward[x][k]);
        }
    for (int x = 0; x < m.n_states; ++x)
        for (size_t k = 0; k < m.feasible[x].size(); ++k)
            lp.add_column(false, pair_tag('b', x, m.feasible[x][k]));

    // Row coefficients accumulated per column, merging self-loop terms.
    std::vector<std::vector<std::pair<int, double>>> flow(m.n_states), mix(m.n_states);
    for (int x = 0; x < m.n_states; ++x) {
        for (size_t k = 0; k < m.feasible[x].size(); ++k) {
            flow[x].emplace_back(acol(x, static_cast<int>(k)), 1.0);
            mix[x].emplace_back(acol(x, static_cast<int>(k)), 1.0);
            mix[x].emplace_back(bcol(x, static_cast<int>(k)), 1.0);
            for (const auto& [to, p] : m.kernel[x][k]) {
                flow[to].emplace_back(acol(x, static_cast<int>(k)), -p);
                mix[to].emplace_back(bcol(x, static_cast<int>(k)), -p);
            }
        }
    }
    auto merged = [](std::vector<std::pair<int, double>> entries) {
        std::sort(entries.begin(), entries.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<std::pair<int, double>> out;
        for (const auto& [col, c] : entries) {
            if (!out.empty() && out.back().first == col)
                out.back().second += c;
            else
                out.emplace_back(col, c);
        }
        std::erase_if(out, [](const auto& e) { return e.second == 0.0; });
        return out;
    };
    for (int j = 0; j < m.n_states; ++j)
        lp.add_row(Rel::Eq, 0.0, merged(std::move(flow[j])), "flow(" + std::to_string(j) + ")");
    for (int j = 0; j < m.n_states; ++j)
        lp.add_row(Rel::Eq, nu[j], merged(std::move(mix[j])), "mix(" + std::to_string(j) + ")");

    if (eps) {
        std::vector<std::pair<int, double>> coeffs;
        for (int x : sorted_unique(eps->states))
            for (size_t k = 0; k < m.feasible[x].size(); ++k)
                coeffs.emplace_back(acol(x, static_cast<int>(k)), 1.0);
        lp.add_row(Rel::Le, eps->bound, std::move(coeffs), "eps");
    }
    return lp;
}

GainSolution solve_gain(const Model& m, const RewardTable& reward, const std::vector<double>& nu,
                        const std::optional<EpsilonRow>& eps) {
    const LinearProgram lp = build_gain_lp(m, reward, nu, eps);
    const LpSolution ls = solve_lp(lp);

    GainSolution g;
    g.status = ls.status;
    g.lp_iterations = ls.iterations;
    g.duality_gap = ls.duality_gap;
    if (ls.status == LpStatus::Infeasible) {
        if (!eps) throw std::runtime_error("gain lp infeasible without an epsilon row");
        return g;
    }
    if (ls.status == LpStatus::Unbounded)
        throw std::runtime_error("gain lp unbounded: kernel rows cannot be stochastic");
    if (ls.status != LpStatus::Optimal)
        throw std::runtime_error("gain lp failed numerically after " +
                                 std::to_string(ls.iterations) + " iterations");

    std::vector<int> first_col(m.n_states + 1, 0);
    for (int x = 0; x < m.n_states; ++x)
        first_col[x + 1] = first_col[x] + static_cast<int>(m.feasible[x].size());
    const int n_pairs = first_col[m.n_states];

    g.objective = ls.objective;
    g.alpha.resize(m.n_states);
    g.beta.resize(m.n_states);
    double alpha_total = 0.0;
    for (int x = 0; x < m.n_states; ++x) {
        const int nk = static_cast<int>(m.feasible[x].size());
        g.alpha[x].resize(nk);
        g.beta[x].resize(nk);
        for (int k = 0; k < nk; ++k) {
            g.alpha[x][k] = ls.primal[first_col[x] + k];
            g.beta[x][k] = ls.primal[n_pairs + first_col[x] + k];
            if (g.alpha[x][k] < -kMassTol || g.beta[x][k] < -kMassTol)
                throw std::runtime_error("gain lp returned negative occupation mass");
            alpha_total += g.alpha[x][k];
        }
    }
    g.h.assign(m.n_states, 0.0);
    g.v.assign(m.n_states, 0.0);
    for (int j = 0; j < m.n_states; ++j) {
        g.h[j] = ls.dual[j];
        g.v[j] = ls.dual[m.n_states + j];
    }
    if (eps) g.lambda_dual = ls.dual[2 * m.n_states];

    // Post-solve identities: total alpha mass equals total nu (mixing rows
    // telescope), and the objective equals nu . v by strong duality.
    double nu_total = 0.0, nu_dot_v = 0.0;
    for (int j = 0; j < m.n_states; ++j) {
        nu_total += nu[j];
        nu_dot_v += nu[j] * g.v[j];
    }
    const double scale = 1.0 + nu_total;
    if (std::abs(alpha_total - nu_total) > kCheckTol * scale)
        throw std::runtime_error("gain lp mass identity violated");
    if (eps && g.lambda_dual)
        nu_dot_v += *g.lambda_dual * eps->bound;
    if (std::abs(nu_dot_v - g.objective) > kCheckTol * (1.0 + std::abs(g.objective)))
        throw std::runtime_error("gain lp duality identity violated");

    // (v, h) must satisfy the primal average-reward constraints.
    const double lambda = (eps && g.lambda_dual) ? *g.lambda_dual : 0.0;
    std::vector<char> in_eps(m.n_states, 0);
    if (eps)
        for (int x : eps->states) in_eps[x] = 1;
    for (int x = 0; x < m.n_states; ++x) {
        for (size_t k = 0; k < m.feasible[x].size(); ++k) {
            double pv = 0.0, ph = 0.0;
            for (const auto& [to, p] : m.kernel[x][k]) {
                pv += p * g.v[to];
                ph += p * g.h[to];
            }
            const double r_eff = reward[x][k] - (in_eps[x] ? lambda : 0.0);
            if (g.v[x] - pv < -kCheckTol ||
                g.v[x] + g.h[x] - ph - r_eff < -kCheckTol)
                throw std::runtime_error("gain lp optimality equations violated");
        }
    }
    return g;
}

std::string gain_solution_json(const Model& m, const GainSolution& sol) {
    nlohmann::ordered_json j;
    j["status"] = to_string(sol.status);
    j["objective"] = sol.objective;
    j["v"] = sol.v;
    j["h"] = sol.h;
    nlohmann::ordered_json alpha = nlohmann::ordered_json::object();
    nlohmann::ordered_json beta = nlohmann::ordered_json::object();
    for (int x = 0; x < m.n_states; ++x) {
        for (size_t k = 0; k < m.feasible[x].size(); ++k) {
            const std::string key =
                "(" + std::to_string(x) + "," + std::to_string(m.feasible[x][k]) + ")";
            if (x < static_cast<int>(sol.alpha.size()) && k < sol.alpha[x].size()) {
                alpha[key] = sol.alpha[x][k];
                beta[key] = sol.beta[x][k];
            }
        }
    }
    j["alpha"] = alpha;
    j["beta"] = beta;
    if (sol.lambda_dual) j["lambda_dual"] = *sol.lambda_dual;
    j["iterations"] = sol.lp_iterations;
    return dump_json_g17(j);
}

StationaryPolicy extract_policy(const Model& m, const GainSolution& sol) {
    if (sol.status != LpStatus::Optimal)
        throw std::invalid_argument("extract_policy requires an optimal gain solution");

    StationaryPolicy pi;
    pi.choice.resize(m.n_states);
    std::vector<char> backed(m.n_states, 0);
    for (int x = 0; x < m.n_states; ++x) {
        const auto& fs = m.feasible[x];
        double a_sum = 0.0, b_sum = 0.0;
        for (size_t k = 0; k < fs.size(); ++k) {
            a_sum += std::max(sol.alpha[x][k], 0.0);
            b_sum += std::max(sol.beta[x][k], 0.0);
        }
        const std::vector<double>* src = nullptr;
        double total = 0.0;
        if (a_sum > kMassTol) {
            src = &sol.alpha[x];
            total = a_sum;
        } else if (b_sum > kMassTol) {
            src = &sol.beta[x];
            total = b_sum;
        }
        if (src) {
            backed[x] = 1;
            SparseRow row;
            for (size_t k = 0; k < fs.size(); ++k) {
                const double w = std::max((*src)[k], 0.0);
                if (w > 0.0) row.emplace_back(fs[k], w / total);
            }
            pi.choice[x] = std::move(row);
        } else {
            // nu-null, unreachable state: greedy on v with lowest-index tie-break
            int best_k = 0;
            double best = -std::numeric_limits<double>::infinity();
            for (size_t k = 0; k < fs.size(); ++k) {
                double pv = 0.0;
                for (const auto& [to, p] : m.kernel[x][k]) pv += p * sol.v[to];
                if (pv > best) {
                    best = pv;
                    best_k = static_cast<int>(k);
                }
            }
            pi.choice[x] = {{fs[best_k], 1.0}};
        }
    }
    pi.validate(m);

    // Occupation-backed rows must leave the optimal gain invariant.
    const auto chain = induced_chain(m, pi);
    for (int x = 0; x < m.n_states; ++x) {
        if (!backed[x]) continue;
        double pv = 0.0;
        for (const auto& [to, p] : chain[x]) pv += p * sol.v[to];
        if (std::abs(pv - sol.v[x]) > kCheckTol)
            throw std::runtime_error("extracted policy does not preserve the optimal gain at state " +
                                     m.state_name(x));
    }
    return pi;
}

PolicyGain evaluate_policy_gain(const Model& m, const std::vector<IndicatorTerm>& terms,
                                const StationaryPolicy& pi, const std::vector<double>& nu) {
    PolicyGain out;
    out.per_state.assign(m.n_states, 0.0);
    for (const auto& term : terms) {
        const auto set = sorted_unique(term.set);
        if (!closed_under_all_policies(m, set))
            throw std::invalid_argument(
                "evaluate_policy_gain: reward set is not closed under every policy");
        const auto h = absorption_probability(m, pi, set);
        for (int x = 0; x < m.n_states; ++x) out.per_state[x] += term.coefficient * h[x];
    }
    for (int x = 0; x < m.n_states; ++x) out.aggregate += nu[x] * out.per_state[x];
    return out;
}

std::vector<double> absorption_probability(const Model& m, const StationaryPolicy& pi,
                                           const std::vector<int>& closed_set) {
    const auto set = sorted_unique(closed_set);
    const auto chain = induced_chain(m, pi);
    if (!closed_under_chain(chain, set))
        throw std::invalid_argument("absorption_probability: set is not closed under the policy");

    std::vector<double> h(m.n_states, 0.0);
    for (int x : set) h[x] = 1.0;
    std::vector<double> next(m.n_states, 0.0);
    const double tol = 1e-13;
    for (long it = 0; it < 2000000; ++it) {
        double diff = 0.0;
        for (int x = 0; x < m.n_states; ++x) {
            if (contains(set, x)) {
                next[x] = 1.0;
                continue;
            }
            double s = 0.0;
            for (const auto& [to, p] : chain[x]) s += p * h[to];
            diff = std::max(diff, std::abs(s - h[x]));
            next[x] = s;
        }
        h.swap(next);
        if (diff < tol) return h;
    }
    throw std::runtime_error("absorption_probability did not converge");
}

std::vector<double> value_iteration_reach(const Model& m, const std::vector<int>& target,
                                          double tol, long max_iterations) {
    const auto set = sorted_unique(target);
    if (!closed_under_all_policies(m, set))
        throw std::invalid_argument("value_iteration_reach: target must be absorbing in the model");

    std::vector<double> v(m.n_states, 0.0);
    for (int x : set) v[x] = 1.0;
    std::vector<double> next(m.n_states, 0.0);
    for (long it = 0; it < max_iterations; ++it) {
        double diff = 0.0;
        for (int x = 0; x < m.n_states; ++x) {
            if (contains(set, x)) {
                next[x] = 1.0;
                continue;
            }
            double best = 0.0;
            for (const auto& row : m.kernel[x]) {
                double s = 0.0;
                for (const auto& [to, p] : row) s += p * v[to];
                best = std::max(best, s);
            }
            diff = std::max(diff, best - v[x]);
            next[x] = best;
        }
        v.swap(next);
        if (diff < tol) return v;
    }
    throw std::runtime_error("value_iteration_reach did not converge");
}

std::vector<double> cesaro_average(const Model& m, const StationaryPolicy& pi,
                                   const std::vector<int>& set, long horizon) {
    const auto s = sorted_unique(set);
    const auto chain = induced_chain(m, pi);
    std::vector<double> w(m.n_states, 0.0);
    for (int x : s) w[x] = 1.0;  // w = P^t 1_A, starting at t = 0
    std::vector<double> acc(m.n_states, 0.0);
    std::vector<double> next(m.n_states, 0.0);
    for (long t = 0; t < horizon; ++t) {
        for (int x = 0; x < m.n_states; ++x) acc[x] += w[x];
        if (t + 1 == horizon) break;
        for (int x = 0; x < m.n_states; ++x) {
            double v = 0.0;
            for (const auto& [to, p] : chain[x]) v += p * w[to];
            next[x] = v;
        }
        w.swap(next);
    }
    if (horizon > 0)
        for (double& a : acc) a /= static_cast<double>(horizon);
    return acc;
}

}  // namespace mdpreach
