#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace mdpreach {

/// Probability-mass tolerance used everywhere a row or distribution must sum to one.
inline constexpr double kProbTol = 1e-12;

/// Sparse vector over states: (state id, value) pairs sorted by state id,
/// no duplicate ids.
using SparseRow = std::vector<std::pair<int, double>>;

double row_sum(const SparseRow& row);

/// Merge duplicate destinations of an unsorted entry list, dropping exact zeros.
SparseRow merge_row(SparseRow entries);

/**
 * Finite Markov decision process.
 *
 * States and actions are dense integer ids (0..n-1 / 0..m-1); labels are
 * metadata only. The kernel is stored sparsely per feasible (state, action)
 * pair, rows sorted by destination, duplicates rejected by validation.
 */
struct Model {
    int n_states = 0;
    std::vector<std::string> state_labels;   // empty or size n_states
    std::vector<std::string> action_labels;  // size n_actions
    std::vector<std::vector<int>> feasible;  // per state, sorted action ids
    // kernel[x][k] is the row for (x, feasible[x][k])
    std::vector<std::vector<SparseRow>> kernel;
    // reward[x][k], parallel to kernel; empty if the model carries no reward
    std::vector<std::vector<double>> reward;

    int n_actions() const { return static_cast<int>(action_labels.size()); }
    bool has_reward() const { return !reward.empty(); }
    bool has_labels() const { return !state_labels.empty(); }

    /// Index of action u within feasible[x], or -1.
    int feasible_index(int x, int u) const;
    const SparseRow& row(int x, int u) const;

    std::string state_name(int x) const;
    std::string action_name(int u) const;
};

struct Violation {
    std::string message;
    int state = -1;   // -1 when not tied to a state
    int action = -1;  // -1 when not tied to an action
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool valid() const { return violations.empty(); }
    std::string to_string() const;
};

/// Checks every Model invariant; violations are data, not failures.
ValidationReport validate_model(const Model& m);

/// Throws std::invalid_argument with the aggregated report if m is invalid.
void require_valid(const Model& m);

/**
 * Distribution (or nonnegative weight vector) over states.
 * Strict distributions must sum to one within kProbTol.
 */
struct Distribution {
    SparseRow weights;
    bool strict = true;

    static Distribution uniform(int n_states);
    static Distribution point(int state);

    double mass(int state) const;
    double total() const;
    /// Dense weight vector of length n_states.
    std::vector<double> dense(int n_states) const;
    void validate(int n_states) const;  // throws on violation
};

/// Randomized stationary policy: one distribution over feasible actions per state.
struct StationaryPolicy {
    // choice[x]: (action id, probability), sorted by action id
    std::vector<SparseRow> choice;

    static StationaryPolicy deterministic(const Model& m, const std::vector<int>& action_per_state);
    static StationaryPolicy pure(const Model& m, int action);  // same action everywhere

    double prob(int x, int u) const;
    void validate(const Model& m) const;  // throws on violation
};

/// Policy whose action law depends on the current state and on whether the
/// avoid set has been visited: mu0 before the first visit, mu1 after.
struct TwoPhasePolicy {
    StationaryPolicy mu0;
    StationaryPolicy mu1;
    std::vector<int> avoid_set;  // sorted state ids

    void validate(const Model& m) const;
};

/// P^pi[x,x'] = sum_u pi(u|x) Q(x'|x,u); rows sorted, sum to one within kProbTol.
std::vector<SparseRow> induced_chain(const Model& m, const StationaryPolicy& pi);

/// True iff no (x in set, u) kernel row places mass outside the set, so the
/// set is closed under every policy.
bool closed_under_all_policies(const Model& m, const std::vector<int>& set);

/// True iff every row of the chain starting in `set` keeps its mass in `set`
/// within kProbTol.
bool closed_under_chain(const std::vector<SparseRow>& chain, const std::vector<int>& set);

std::vector<int> sorted_unique(std::vector<int> xs);
bool contains(const std::vector<int>& sorted_xs, int x);

}  // namespace mdpreach
