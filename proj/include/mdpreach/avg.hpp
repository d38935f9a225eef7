#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mdpreach/lp.hpp"
#include "mdpreach/model.hpp"

namespace mdpreach {

/// Reward per feasible (state, action) pair, aligned with Model::feasible.
using RewardTable = std::vector<std::vector<double>>;

/// r(x,u) = value for x in the set, 0 otherwise, for every feasible u.
RewardTable indicator_reward(const Model& m, const std::vector<int>& set, double value = 1.0);
/// r(x,u) = per_state[x] for every feasible u.
RewardTable state_reward(const Model& m, const std::vector<double>& per_state);

/// Optional cap sum over alpha mass of the given states:
/// sum_{x in states, u} alpha(x,u) <= bound.
struct EpsilonRow {
    std::vector<int> states;
    double bound = 0.0;
};

/**
 * Solution of the multichain average-reward dual LP.
 *
 * v is the optimal gain per state (read from the duals of the mixing rows),
 * h the bias (flow-row duals, determined only up to per-recurrent-class
 * constants). alpha/beta are occupation measures per feasible pair, aligned
 * with Model::feasible. lambda_dual is the multiplier of the epsilon row
 * when one was given.
 */
struct GainSolution {
    LpStatus status = LpStatus::Numerical;
    std::vector<double> v;
    std::vector<double> h;
    std::vector<std::vector<double>> alpha;
    std::vector<std::vector<double>> beta;
    double objective = 0.0;
    std::optional<double> lambda_dual;
    long lp_iterations = 0;
    double duality_gap = 0.0;  // |primal - dual| of the underlying solve, normalized
};

/**
 * Builds the dual-form average-reward LP in variables alpha(x,u),
 * beta(x,u) >= 0: maximize sum r(x,u) alpha(x,u) subject to, per state j,
 *
 *   flow(j):  sum_u alpha(j,u) - sum_{x,u} Q(j|x,u) alpha(x,u)  = 0
 *   mix(j):   sum_u alpha(j,u) + sum_u beta(j,u)
 *                              - sum_{x,u} Q(j|x,u) beta(x,u)   = nu(j)
 *
 * plus the optional epsilon row. Column tags "a(x,u)"/"b(x,u)" and row tags
 * "flow(x)"/"mix(x)"/"eps" record the mapping.
 */
LinearProgram build_gain_lp(const Model& m, const RewardTable& reward,
                            const std::vector<double>& nu,
                            const std::optional<EpsilonRow>& eps = std::nullopt);

/// Solves the gain LP and extracts v, h, alpha, beta. Infeasibility (possible
/// only with an epsilon row) is reported in the status; an unbounded or
/// numerically failed solve throws.
GainSolution solve_gain(const Model& m, const RewardTable& reward, const std::vector<double>& nu,
                        const std::optional<EpsilonRow>& eps = std::nullopt);

/// JSON form of a gain solution: v/h as arrays, alpha/beta keyed by "(x,u)".
std::string gain_solution_json(const Model& m, const GainSolution& sol);

/**
 * Optimal stationary policy from occupation measures: alpha-ratios where
 * total alpha mass exceeds 1e-9, beta-ratios where beta mass does, and at
 * states carrying neither (possible when nu has zeros) the action maximizing
 * sum_x' Q(x'|x,u) v(x') with lowest-index tie-break.
 *
 * Asserts P^pi v = v (residual <= 1e-8) at every alpha/beta-backed state.
 */
StationaryPolicy extract_policy(const Model& m, const GainSolution& sol);

/// One term of a closed-indicator reward: coefficient * 1_{set}.
struct IndicatorTerm {
    double coefficient = 0.0;
    std::vector<int> set;
};

struct PolicyGain {
    std::vector<double> per_state;
    double aggregate = 0.0;  // nu-weighted sum
};

/**
 * Gain of a stationary policy for rewards of the form
 * sum_k c_k 1_{S_k} with every S_k closed under all policies of m. Computed
 * as the matching combination of absorption probabilities; rejects rewards
 * not of this closed-indicator form.
 */
PolicyGain evaluate_policy_gain(const Model& m, const std::vector<IndicatorTerm>& terms,
                                const StationaryPolicy& pi, const std::vector<double>& nu);

/**
 * h(x) = P_x^pi(hit S eventually) for S closed under pi: the minimal
 * nonnegative fixed point of h = 1 on S, h = P^pi h off S, iterated from the
 * indicator of S to sup-norm tolerance 1e-12.
 */
std::vector<double> absorption_probability(const Model& m, const StationaryPolicy& pi,
                                           const std::vector<int>& closed_set);

/**
 * Maximal absorption probability by Bellman recursion on an already-absorbed
 * kernel: V <- max_u Q(.|x,u) V from the indicator of the target, monotone,
 * never touching the LP. Independent oracle for the gain solves.
 */
std::vector<double> value_iteration_reach(const Model& m, const std::vector<int>& target,
                                          double tol = 1e-12, long max_iterations = 1000000);

/// (1/N) sum_{t<N} P_x(X_t in A) for every start x, by exact sparse
/// matrix-vector products of the induced chain.
std::vector<double> cesaro_average(const Model& m, const StationaryPolicy& pi,
                                   const std::vector<int>& set, long horizon);

}  // namespace mdpreach
