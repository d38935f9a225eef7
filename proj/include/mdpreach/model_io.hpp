#pragma once

#include <stdexcept>
#include <string>

#include "mdpreach/model.hpp"

namespace mdpreach {

/// Raised on malformed input files; message carries the offending field path.
class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Model JSON schema:
//   {"states": <int or [labels]>, "actions": [labels],
//    "feasible": {"<state>": [actions]},
//    "kernel": [{"x": s, "u": a, "to": s2, "p": float}],
//    "reward": [{"x": s, "u": a, "r": float}]}        (reward optional)
// States/actions may be referenced by label (when labels are given) or by id.
Model load_model(const std::string& text);
std::string save_model(const Model& m);

Model load_model_file(const std::string& path);
void save_model_file(const Model& m, const std::string& path);

// Policies serialize as {"mode": "stationary", "rows": {...}} or
// {"mode": "two-phase", "avoid": [states], "rows0": {...}, "rows1": {...}}
// where each rows object maps "<state>" to {"<action>": prob}.
std::string save_policy(const Model& m, const StationaryPolicy& pi);
std::string save_policy(const Model& m, const TwoPhasePolicy& tp);
StationaryPolicy load_stationary_policy(const Model& m, const std::string& text);
TwoPhasePolicy load_two_phase_policy(const Model& m, const std::string& text);

// Distributions serialize as {"<state>": weight}.
Distribution load_distribution(const Model& m, const std::string& text);
std::string save_distribution(const Model& m, const Distribution& nu);

/// Resolves a state token (label or decimal id) to a state id.
int resolve_state(const Model& m, const std::string& token);
/// Resolves an action token (label or decimal id) to an action id.
int resolve_action(const Model& m, const std::string& token);

}  // namespace mdpreach
