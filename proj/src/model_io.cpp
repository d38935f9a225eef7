#include "mdpreach/model_io.hpp"

#include <algorithm>
#include <map>

#include <json.hpp>

#include "mdpreach/util.hpp"

namespace mdpreach {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("parse error: ") + e.what());
    }
}

int lookup(const std::vector<std::string>& labels, const std::string& token, int limit,
           const std::string& what, const std::string& where) {
    if (!labels.empty()) {
        auto it = std::find(labels.begin(), labels.end(), token);
        if (it != labels.end()) return static_cast<int>(it - labels.begin());
        throw ParseError(where + ": unknown " + what + " label '" + token + "'");
    }
    try {
        size_t pos = 0;
        int id = std::stoi(token, &pos);
        if (pos != token.size() || id < 0 || id >= limit) throw std::invalid_argument("");
        return id;
    } catch (...) {
        throw ParseError(where + ": invalid " + what + " id '" + token + "'");
    }
}

int ref_from_json(const json& v, const std::vector<std::string>& labels, int limit,
                  const std::string& what, const std::string& where) {
    if (v.is_string()) return lookup(labels, v.get<std::string>(), limit, what, where);
    if (v.is_number_integer()) {
        int id = v.get<int>();
        if (id < 0 || id >= limit) throw ParseError(where + ": " + what + " id " + std::to_string(id) + " out of range");
        return id;
    }
    throw ParseError(where + ": " + what + " reference must be a label or an id");
}

}  // namespace

int resolve_state(const Model& m, const std::string& token) {
    return lookup(m.state_labels, token, m.n_states, "state", "state set");
}

int resolve_action(const Model& m, const std::string& token) {
    return lookup(m.action_labels, token, m.n_actions(), "action", "action set");
}

Model load_model(const std::string& text) {
    const json j = parse_json(text);
    if (!j.is_object()) throw ParseError("top level: expected an object");
    Model m;

    if (!j.contains("states")) throw ParseError("states: missing");
    if (j["states"].is_number_integer()) {
        m.n_states = j["states"].get<int>();
    } else if (j["states"].is_array()) {
        for (const auto& l : j["states"]) m.state_labels.push_back(l.get<std::string>());
        m.n_states = static_cast<int>(m.state_labels.size());
    } else {
        throw ParseError("states: expected an integer count or a label array");
    }
    if (m.n_states <= 0) throw ParseError("states: no states");

    if (!j.contains("actions") || !j["actions"].is_array()) throw ParseError("actions: missing label array");
    for (const auto& l : j["actions"]) m.action_labels.push_back(l.get<std::string>());
    if (m.action_labels.empty()) throw ParseError("actions: empty");

    if (!j.contains("feasible") || !j["feasible"].is_object()) throw ParseError("feasible: missing object");
    m.feasible.assign(m.n_states, {});
    for (auto it = j["feasible"].begin(); it != j["feasible"].end(); ++it) {
        const int x = lookup(m.state_labels, it.key(), m.n_states, "state", "feasible");
        std::vector<int> us;
        for (const auto& a : it.value())
            us.push_back(ref_from_json(a, m.action_labels, m.n_actions(), "action", "feasible"));
        std::sort(us.begin(), us.end());
        if (std::adjacent_find(us.begin(), us.end()) != us.end())
            throw ParseError("feasible: duplicate action at state " + it.key());
        m.feasible[x] = std::move(us);
    }

    if (!j.contains("kernel") || !j["kernel"].is_array()) throw ParseError("kernel: missing entry array");
    m.kernel.assign(m.n_states, {});
    for (int x = 0; x < m.n_states; ++x) m.kernel[x].resize(m.feasible[x].size());
    size_t idx = 0;
    for (const auto& e : j["kernel"]) {
        const std::string where = "kernel[" + std::to_string(idx++) + "]";
        if (!e.is_object()) throw ParseError(where + ": expected an object");
        const int x = ref_from_json(e.at("x"), m.state_labels, m.n_states, "state", where);
        const int u = ref_from_json(e.at("u"), m.action_labels, m.n_actions(), "action", where);
        const int to = ref_from_json(e.at("to"), m.state_labels, m.n_states, "state", where);
        if (!e.contains("p") || !e["p"].is_number()) throw ParseError(where + ".p: missing probability");
        const double p = e["p"].get<double>();
        const int k = m.feasible_index(x, u);
        if (k < 0)
            throw ParseError(where + ": action " + m.action_name(u) + " not feasible at state " + m.state_name(x));
        auto& row = m.kernel[x][k];
        for (const auto& [dst, _] : row)
            if (dst == to)
                throw ParseError(where + ": duplicate kernel entry (" + m.state_name(x) + "," +
                                 m.action_name(u) + "," + m.state_name(to) + ")");
        row.emplace_back(to, p);
    }
    for (auto& rows : m.kernel)
        for (auto& row : rows)
            std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

    if (j.contains("reward") && !j["reward"].is_null()) {
        if (!j["reward"].is_array()) throw ParseError("reward: expected an entry array");
        m.reward.assign(m.n_states, {});
        for (int x = 0; x < m.n_states; ++x) m.reward[x].assign(m.feasible[x].size(), 0.0);
        idx = 0;
        for (const auto& e : j["reward"]) {
            const std::string where = "reward[" + std::to_string(idx++) + "]";
            const int x = ref_from_json(e.at("x"), m.state_labels, m.n_states, "state", where);
            const int u = ref_from_json(e.at("u"), m.action_labels, m.n_actions(), "action", where);
            const int k = m.feasible_index(x, u);
            if (k < 0) throw ParseError(where + ": infeasible pair");
            m.reward[x][k] = e.at("r").get<double>();
        }
    }

    ValidationReport rep = validate_model(m);
    if (!rep.valid()) throw ParseError("validation failed: " + rep.to_string());
    return m;
}

std::string save_model(const Model& m) {
    ordered_json j;
    if (m.has_labels())
        j["states"] = m.state_labels;
    else
        j["states"] = m.n_states;
    j["actions"] = m.action_labels;

    ordered_json feas = ordered_json::object();
    for (int x = 0; x < m.n_states; ++x) {
        ordered_json us = ordered_json::array();
        for (int u : m.feasible[x]) us.push_back(m.action_name(u));
        feas[m.state_name(x)] = us;
    }
    j["feasible"] = feas;

    ordered_json kern = ordered_json::array();
    for (int x = 0; x < m.n_states; ++x)
        for (size_t k = 0; k < m.feasible[x].size(); ++k)
            for (const auto& [to, p] : m.kernel[x][k])
                kern.push_back(ordered_json{{"x", m.state_name(x)},
                                            {"u", m.action_name(m.feasible[x][k])},
                                            {"to", m.state_name(to)},
                                            {"p", p}});
    j["kernel"] = kern;

    if (m.has_reward()) {
        ordered_json rew = ordered_json::array();
        for (int x = 0; x < m.n_states; ++x)
            for (size_t k = 0; k < m.feasible[x].size(); ++k)
                rew.push_back(ordered_json{{"x", m.state_name(x)},
                                           {"u", m.action_name(m.feasible[x][k])},
                                           {"r", m.reward[x][k]}});
        j["reward"] = rew;
    }
    return dump_json_g17(j);
}

Model load_model_file(const std::string& path) {
    try {
        return load_model(read_text_file(path));
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void save_model_file(const Model& m, const std::string& path) {
    write_text_file(path, save_model(m));
}

namespace {

ordered_json rows_to_json(const Model& m, const StationaryPolicy& pi) {
    ordered_json rows = ordered_json::object();
    for (int x = 0; x < m.n_states; ++x) {
        ordered_json row = ordered_json::object();
        for (const auto& [u, p] : pi.choice[x]) row[m.action_name(u)] = p;
        rows[m.state_name(x)] = row;
    }
    return rows;
}

StationaryPolicy rows_from_json(const Model& m, const json& rows, const std::string& where) {
    StationaryPolicy pi;
    pi.choice.assign(m.n_states, {});
    if (!rows.is_object()) throw ParseError(where + ": expected an object of rows");
    for (auto it = rows.begin(); it != rows.end(); ++it) {
        const int x = lookup(m.state_labels, it.key(), m.n_states, "state", where);
        SparseRow row;
        for (auto jt = it.value().begin(); jt != it.value().end(); ++jt) {
            const int u = lookup(m.action_labels, jt.key(), m.n_actions(), "action", where);
            row.emplace_back(u, jt.value().get<double>());
        }
        std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        pi.choice[x] = std::move(row);
    }
    pi.validate(m);
    return pi;
}

}  // namespace

std::string save_policy(const Model& m, const StationaryPolicy& pi) {
    ordered_json j;
    j["mode"] = "stationary";
    j["rows"] = rows_to_json(m, pi);
    return dump_json_g17(j);
}

std::string save_policy(const Model& m, const TwoPhasePolicy& tp) {
    ordered_json j;
    j["mode"] = "two-phase";
    ordered_json avoid = ordered_json::array();
    for (int b : tp.avoid_set) avoid.push_back(m.state_name(b));
    j["avoid"] = avoid;
    j["rows0"] = rows_to_json(m, tp.mu0);
    j["rows1"] = rows_to_json(m, tp.mu1);
    return dump_json_g17(j);
}

StationaryPolicy load_stationary_policy(const Model& m, const std::string& text) {
    const json j = parse_json(text);
    if (j.value("mode", "") != "stationary") throw ParseError("policy: mode is not 'stationary'");
    return rows_from_json(m, j.at("rows"), "policy.rows");
}

TwoPhasePolicy load_two_phase_policy(const Model& m, const std::string& text) {
    const json j = parse_json(text);
    if (j.value("mode", "") != "two-phase") throw ParseError("policy: mode is not 'two-phase'");
    TwoPhasePolicy tp;
    tp.mu0 = rows_from_json(m, j.at("rows0"), "policy.rows0");
    tp.mu1 = rows_from_json(m, j.at("rows1"), "policy.rows1");
    std::vector<int> avoid;
    for (const auto& b : j.at("avoid"))
        avoid.push_back(ref_from_json(b, m.state_labels, m.n_states, "state", "policy.avoid"));
    tp.avoid_set = sorted_unique(std::move(avoid));
    tp.validate(m);
    return tp;
}

Distribution load_distribution(const Model& m, const std::string& text) {
    const json j = parse_json(text);
    if (!j.is_object()) throw ParseError("distribution: expected an object");
    Distribution nu;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const int x = lookup(m.state_labels, it.key(), m.n_states, "state", "distribution");
        nu.weights.emplace_back(x, it.value().get<double>());
    }
    std::sort(nu.weights.begin(), nu.weights.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    nu.validate(m.n_states);
    return nu;
}

std::string save_distribution(const Model& m, const Distribution& nu) {
    ordered_json j = ordered_json::object();
    for (const auto& [x, w] : nu.weights) j[m.state_name(x)] = w;
    return dump_json_g17(j);
}

}  // namespace mdpreach
