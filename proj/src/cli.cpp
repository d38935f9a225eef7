#include "mdpreach/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mdpreach/avg.hpp"
#include "mdpreach/exact.hpp"
#include "mdpreach/grid.hpp"
#include "mdpreach/model_io.hpp"
#include "mdpreach/reach.hpp"
#include "mdpreach/sim.hpp"
#include "mdpreach/util.hpp"

namespace mdpreach {

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;

struct CliError {
    int code;
    std::string message;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

int parse_int(const std::string& s, const std::string& what) {
    try {
        size_t pos = 0;
        int v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw CliError{kExitInput, "invalid " + what + ": '" + s + "'"};
    }
}

struct GridDims {
    int rows = 0;
    int cols = 0;
};

GridDims load_grid_dims(const std::string& path) {
    try {
        const auto j = nlohmann::json::parse(read_text_file(path));
        return {j.at("rows").get<int>(), j.at("cols").get<int>()};
    } catch (const std::exception& e) {
        throw CliError{kExitInput, std::string("grid sidecar: ") + e.what()};
    }
}

/// Inline comma list of labels/ids, a JSON array file, or (with grid dims)
/// the rectangle shorthand r0:r1,c0:c1.
std::vector<int> parse_set(const Model& m, const std::string& arg,
                           const std::optional<GridDims>& grid) {
    if (arg.empty()) return {};
    if (arg.find(':') != std::string::npos) {
        if (!grid)
            throw CliError{kExitInput,
                           "rectangle set '" + arg + "' needs --grid to supply the dimensions"};
        const auto parts = split(arg, ',');
        if (parts.size() != 2 || split(parts[0], ':').size() != 2 ||
            split(parts[1], ':').size() != 2)
            throw CliError{kExitInput, "malformed rectangle '" + arg + "', expected r0:r1,c0:c1"};
        const auto rr = split(parts[0], ':');
        const auto cc = split(parts[1], ':');
        const int r0 = parse_int(rr[0], "rectangle row"), r1 = parse_int(rr[1], "rectangle row");
        const int c0 = parse_int(cc[0], "rectangle col"), c1 = parse_int(cc[1], "rectangle col");
        if (r0 > r1 || c0 > c1 || r0 < 0 || r1 >= grid->rows || c0 < 0 || c1 >= grid->cols)
            throw CliError{kExitInput, "rectangle '" + arg + "' out of the grid"};
        std::vector<int> out;
        for (int r = r0; r <= r1; ++r)
            for (int c = c0; c <= c1; ++c) out.push_back(r * grid->cols + c);
        return sorted_unique(std::move(out));
    }
    std::vector<std::string> tokens;
    if (fs::exists(arg) && !fs::is_directory(arg)) {
        try {
            const auto j = nlohmann::json::parse(read_text_file(arg));
            for (const auto& e : j)
                tokens.push_back(e.is_string() ? e.get<std::string>()
                                               : std::to_string(e.get<long>()));
        } catch (const std::exception& e) {
            throw CliError{kExitInput, arg + ": " + e.what()};
        }
    } else {
        tokens = split(arg, ',');
    }
    std::vector<int> out;
    for (const auto& t : tokens) {
        if (t.empty()) continue;
        try {
            out.push_back(resolve_state(m, t));
        } catch (const std::exception& e) {
            throw CliError{kExitInput, e.what()};
        }
    }
    return sorted_unique(std::move(out));
}

Distribution parse_nu(const Model& m, const std::string& arg) {
    if (arg == "uniform") return Distribution::uniform(m.n_states);
    try {
        return load_distribution(m, read_text_file(arg));
    } catch (const std::exception& e) {
        throw CliError{kExitInput, std::string("--nu: ") + e.what()};
    }
}

Model load_model_checked(const std::string& path) {
    try {
        return load_model_file(path);
    } catch (const std::exception& e) {
        throw CliError{kExitInput, e.what()};
    }
}

ordered_json tolerances_json() {
    ordered_json t;
    t["probability"] = 1e-12;
    t["lp_pivot"] = 1e-10;
    t["lp_feasibility"] = 1e-9;
    t["duality_gap"] = 1e-8;
    t["zero_threshold"] = 1e-8;
    t["value_iteration"] = 1e-12;
    return t;
}

void write_manifest(const std::string& out_dir, const std::vector<std::string>& args) {
    ordered_json j;
    j["tool"] = "mdpreach";
    j["version"] = kToolVersion;
    j["command"] = args;
    j["tolerances"] = tolerances_json();
    write_text_file(out_dir + "/manifest.json", dump_json_g17(j));
}

std::string ensure_out_dir(const std::string& out) {
    std::error_code ec;
    fs::create_directories(out, ec);
    if (ec) throw CliError{kExitInput, "cannot create output directory " + out};
    return out;
}

ordered_json names_json(const Model& m, const std::vector<int>& states) {
    ordered_json arr = ordered_json::array();
    for (int x : states) arr.push_back(m.state_name(x));
    return arr;
}

ordered_json values_json(const std::vector<double>& v) {
    ordered_json arr = ordered_json::array();
    for (double x : v) arr.push_back(x);
    return arr;
}

void emit_value_csv(const std::string& out_dir, const std::string& name,
                    const std::vector<double>& values, const std::optional<GridDims>& grid) {
    if (grid) {
        std::ostringstream os;
        os << "row,col,value\n";
        for (size_t s = 0; s < values.size(); ++s)
            os << static_cast<int>(s) / grid->cols << "," << static_cast<int>(s) % grid->cols
               << "," << g17(values[s]) << "\n";
        write_text_file(out_dir + "/" + name, os.str());
    } else {
        write_text_file(out_dir + "/" + name, values_csv(values));
    }
}

// ---------------------------------------------------------------------------
// subcommand option bags

struct CommonOpts {
    std::string model_path;
    std::string target;
    std::string avoid;
    std::string nu = "uniform";
    std::string grid_sidecar;
    std::string out;
};

int cmd_validate(const CommonOpts& o, const std::vector<std::string>& args) {
    Model m;
    try {
        m = load_model_file(o.model_path);
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        if (!o.out.empty()) {
            ensure_out_dir(o.out);
            ordered_json j;
            j["valid"] = false;
            j["error"] = std::string(e.what());
            write_text_file(o.out + "/report.json", dump_json_g17(j));
            write_manifest(o.out, args);
        }
        return kExitInput;
    }
    const ValidationReport rep = validate_model(m);
    std::cout << rep.to_string() << "\n";
    if (!o.out.empty()) {
        ensure_out_dir(o.out);
        ordered_json j;
        j["valid"] = rep.valid();
        ordered_json v = ordered_json::array();
        for (const auto& viol : rep.violations) {
            ordered_json e;
            e["message"] = viol.message;
            e["state"] = viol.state;
            e["action"] = viol.action;
            v.push_back(e);
        }
        j["violations"] = v;
        write_text_file(o.out + "/report.json", dump_json_g17(j));
        write_manifest(o.out, args);
    }
    return rep.valid() ? kExitOk : kExitInput;
}

int cmd_p_domain(const CommonOpts& o, const std::string& ps_arg,
                 const std::vector<std::string>& args) {
    const Model m = load_model_checked(o.model_path);
    std::optional<GridDims> grid;
    if (!o.grid_sidecar.empty()) grid = load_grid_dims(o.grid_sidecar);
    const auto target = parse_set(m, o.target, grid);
    if (target.empty()) throw CliError{kExitInput, "--target: empty set"};
    std::vector<double> ps;
    for (const auto& t : split(ps_arg, ','))
        if (!t.empty()) ps.push_back(std::stod(t));

    const PDomainResult res = p_domain(m, target, ps);

    ensure_out_dir(o.out);
    ordered_json j;
    j["v_star"] = values_json(res.v_star);
    j["domain"] = names_json(m, res.domain);
    j["escape"] = names_json(m, res.escape);
    ordered_json lam = ordered_json::array();
    for (size_t i = 0; i < ps.size(); ++i) {
        ordered_json e;
        e["p"] = res.ps[i];
        e["states"] = names_json(m, res.lambda_sets[i]);
        lam.push_back(e);
    }
    j["lambda_sets"] = lam;
    write_text_file(o.out + "/result.json", dump_json_g17(j));
    emit_value_csv(o.out, "values.csv", res.v_star, grid);
    write_manifest(o.out, args);
    return kExitOk;
}

int cmd_reach_avoid(const CommonOpts& o, const std::vector<std::string>& args) {
    const Model m = load_model_checked(o.model_path);
    std::optional<GridDims> grid;
    if (!o.grid_sidecar.empty()) grid = load_grid_dims(o.grid_sidecar);
    const auto target = parse_set(m, o.target, grid);
    const auto avoid = parse_set(m, o.avoid, grid);
    if (target.empty()) throw CliError{kExitInput, "--target: empty set"};
    const Distribution nu = parse_nu(m, o.nu);

    const ReachAvoidResult res = reach_avoid(m, target, avoid, nu);

    ensure_out_dir(o.out);
    ordered_json j;
    j["value"] = res.value;
    j["v_tilde"] = values_json(res.v_tilde);
    write_text_file(o.out + "/result.json", dump_json_g17(j));
    write_text_file(o.out + "/policy.json", save_policy(m, res.policy));
    emit_value_csv(o.out, "values.csv", res.v_tilde, grid);
    write_manifest(o.out, args);
    return kExitOk;
}

int cmd_constrained(const CommonOpts& o, double eps, const std::vector<std::string>& args) {
    const Model m = load_model_checked(o.model_path);
    std::optional<GridDims> grid;
    if (!o.grid_sidecar.empty()) grid = load_grid_dims(o.grid_sidecar);
    const auto target = parse_set(m, o.target, grid);
    const auto avoid = parse_set(m, o.avoid, grid);
    if (target.empty()) throw CliError{kExitInput, "--target: empty set"};
    const Distribution nu = parse_nu(m, o.nu);

    const ConstrainedReachResult res = constrained_reach(m, target, avoid, nu, eps);

    ensure_out_dir(o.out);
    ordered_json j;
    j["status"] = res.status == ConstrainedStatus::Feasible ? "FEASIBLE" : "INFEASIBLE";
    j["eps"] = eps;
    if (res.status == ConstrainedStatus::Feasible) {
        j["value"] = res.value;
        j["lambda_star"] = res.lambda_star;
        j["constraint_mass"] = res.constraint_mass;
        j["slackness"] = res.slackness;
    }
    write_text_file(o.out + "/result.json", dump_json_g17(j));
    if (res.status == ConstrainedStatus::Feasible)
        write_text_file(o.out + "/policy.json", save_policy(m, res.policy));
    write_manifest(o.out, args);
    if (res.status != ConstrainedStatus::Feasible) {
        std::cerr << "constrained problem infeasible at eps=" << g17(eps) << "\n";
        return kExitInfeasible;
    }
    return kExitOk;
}

int cmd_simulate(const CommonOpts& o, const std::string& policy_path, long n, long horizon,
                 uint64_t seed, int threads, long emit_trajectories,
                 const std::vector<std::string>& args) {
    const Model m = load_model_checked(o.model_path);
    std::optional<GridDims> grid;
    if (!o.grid_sidecar.empty()) grid = load_grid_dims(o.grid_sidecar);

    std::string policy_text;
    try {
        policy_text = read_text_file(policy_path);
    } catch (const std::exception& e) {
        throw CliError{kExitInput, e.what()};
    }
    StationaryPolicy stat;
    TwoPhasePolicy tp;
    bool two_phase = false;
    try {
        const auto j = nlohmann::json::parse(policy_text);
        two_phase = j.value("mode", "") == "two-phase";
        if (two_phase)
            tp = load_two_phase_policy(m, policy_text);
        else
            stat = load_stationary_policy(m, policy_text);
    } catch (const std::exception& e) {
        throw CliError{kExitInput, policy_path + ": " + std::string(e.what())};
    }
    const RolloutPolicy rp = two_phase ? RolloutPolicy::two_phase(tp) : RolloutPolicy::stationary(stat);

    const auto target = parse_set(m, o.target, grid);
    auto avoid = parse_set(m, o.avoid, grid);
    if (avoid.empty() && two_phase) avoid = tp.avoid_set;
    const Distribution nu = parse_nu(m, o.nu);

    const HittingEstimate est = estimate_hitting(m, rp, nu, target, avoid, n, horizon, seed, threads);

    ensure_out_dir(o.out);
    ordered_json j;
    j["p_hat_target"] = est.p_hat_target;
    j["p_hat_avoid"] = est.p_hat_avoid;
    j["half_width_target"] = est.half_width_target;
    j["half_width_avoid"] = est.half_width_avoid;
    j["n"] = est.n;
    j["truncated_fraction"] = est.truncated_fraction;
    j["horizon"] = est.horizon;
    j["seed"] = est.seed;
    write_text_file(o.out + "/estimate.json", dump_json_g17(j));

    if (emit_trajectories > 0) {
        std::ostringstream os;
        os << "traj_id,t,state,action,mode\n";
        for (long i = 0; i < std::min(emit_trajectories, n); ++i) {
            RngStream stream = stream_for(seed, static_cast<uint64_t>(i));
            int start = nu.weights.back().first;
            const double u = stream.next_unit();
            double acc = 0.0;
            for (const auto& [x, w] : nu.weights) {
                acc += w;
                if (u < acc) {
                    start = x;
                    break;
                }
            }
            const Trajectory traj = sample_trajectory(m, rp, start, horizon, stream, target);
            auto mode_at = [&](long t) {
                return (traj.mode_switch && t >= *traj.mode_switch) ? 1 : 0;
            };
            long t = 0;
            for (const auto& [x, a] : traj.steps) {
                os << i << "," << t << "," << m.state_name(x) << "," << m.action_name(a) << ","
                   << mode_at(t) << "\n";
                ++t;
            }
            os << i << "," << t << "," << m.state_name(traj.final_state) << ",," << mode_at(t)
               << "\n";
        }
        write_text_file(o.out + "/trajectories.csv", os.str());
    }
    write_manifest(o.out, args);
    return kExitOk;
}

int cmd_grid_gen(int rows, int cols, double wind, const std::vector<std::string>& target_rects,
                 const std::vector<std::string>& obstacle_rects, bool absorbing_top,
                 const std::string& out, const std::vector<std::string>& args) {
    GridSpec spec;
    spec.rows = rows;
    spec.cols = cols;
    spec.wind_strength = wind;
    spec.absorbing_top = absorbing_top;
    const GridDims dims{rows, cols};
    auto rect_to_cells = [&](const std::string& r) {
        std::vector<Cell> cells;
        Model dummy;  // only dims are used by parse_set for rectangles
        dummy.n_states = rows * cols;
        for (int s : parse_set(dummy, r, dims)) cells.emplace_back(s / cols, s % cols);
        return cells;
    };
    for (const auto& r : target_rects)
        for (const auto& cell : rect_to_cells(r)) spec.target_cells.push_back(cell);
    for (const auto& r : obstacle_rects)
        for (const auto& cell : rect_to_cells(r)) spec.obstacle_cells.push_back(cell);

    GridModel g;
    try {
        g = build_grid(spec);
    } catch (const std::exception& e) {
        throw CliError{kExitInput, e.what()};
    }
    ensure_out_dir(out);
    write_text_file(out + "/model.json", save_model(g.model));
    write_text_file(out + "/grid.json", grid_sidecar_json(g));
    ordered_json sets;
    sets["target"] = names_json(g.model, g.target_states());
    sets["obstacle"] = names_json(g.model, g.obstacle_states());
    write_text_file(out + "/sets.json", dump_json_g17(sets));
    write_manifest(out, args);
    return kExitOk;
}

int cmd_oracle(const CommonOpts& o, const std::vector<std::string>& args) {
    const Model m = load_model_checked(o.model_path);
    std::optional<GridDims> grid;
    if (!o.grid_sidecar.empty()) grid = load_grid_dims(o.grid_sidecar);
    const auto target = parse_set(m, o.target, grid);
    const auto avoid = parse_set(m, o.avoid, grid);
    if (target.empty()) throw CliError{kExitInput, "--target: empty set"};

    // LP route vs value-iteration oracle on the same absorbed kernel.
    const Model absorbed =
        avoid.empty() ? make_absorbing(m, {target}) : make_absorbing(m, {target, avoid});
    const GainSolution sol = solve_gain(absorbed, indicator_reward(absorbed, target),
                                        std::vector<double>(m.n_states, 1.0));
    const auto vi = value_iteration_reach(absorbed, target);
    double reach_dev = 0.0;
    for (int x = 0; x < m.n_states; ++x)
        reach_dev = std::max(reach_dev, std::abs(sol.v[x] - vi[x]));

    // Kernel-absorption identity at horizon 20 under the extracted policy:
    // hitting target before avoid in the original model matches plain hitting
    // in the absorbed one.
    const StationaryPolicy pi = extract_policy(absorbed, sol);
    const auto lhs = hit_avoiding_by_horizon(m, pi, target, avoid, 20);
    const auto rhs = hit_by_horizon(absorbed, pi, target, 20);
    double equiv_dev = 0.0;
    for (int x = 0; x < m.n_states; ++x)
        equiv_dev = std::max(equiv_dev, std::abs(lhs[x] - rhs[x]));

    ordered_json j;
    j["max_reach_deviation"] = reach_dev;
    j["max_truncated_equivalence_deviation"] = equiv_dev;
    j["reach_tolerance"] = 1e-6;
    j["equivalence_tolerance"] = 1e-9;
    const bool ok = reach_dev <= 1e-6 && equiv_dev <= 1e-9;
    j["ok"] = ok;
    std::cout << dump_json_g17(j);
    if (!o.out.empty()) {
        ensure_out_dir(o.out);
        write_text_file(o.out + "/oracle.json", dump_json_g17(j));
        write_manifest(o.out, args);
    }
    return ok ? kExitOk : kExitNumerical;
}

int cmd_replay(const std::string& manifest_path, const std::string& out_override) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_text_file(manifest_path));
    } catch (const std::exception& e) {
        throw CliError{kExitInput, std::string("manifest: ") + e.what()};
    }
    if (!j.contains("command") || !j["command"].is_array())
        throw CliError{kExitInput, "manifest: missing command array"};
    std::vector<std::string> cmd;
    for (const auto& a : j["command"]) cmd.push_back(a.get<std::string>());
    if (!out_override.empty()) {
        for (size_t i = 0; i + 1 < cmd.size(); ++i)
            if (cmd[i] == "--out") cmd[i + 1] = out_override;
    }
    return run_cli(cmd);
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"Finite-MDP reachability via long-run average-reward linear programming"};
    app.require_subcommand(1);

    CommonOpts common;
    std::string ps_arg = "0.25,0.5,0.75,1";
    double eps = 0.0;
    std::string policy_path;
    long n = 10000, horizon = 100, emit_traj = 0;
    uint64_t seed = 0;
    int threads = 1;
    int rows = 0, cols = 0;
    double wind = 0.0;
    std::vector<std::string> target_rects, obstacle_rects;
    bool no_absorbing_top = false;
    std::string manifest_path, out_override;

    auto add_common = [&](CLI::App* sub, bool needs_out) {
        sub->add_option("--model", common.model_path, "model JSON file")->required();
        sub->add_option("--grid", common.grid_sidecar, "grid sidecar JSON (enables rectangles and heatmap CSV)");
        if (needs_out) sub->add_option("--out", common.out, "output directory")->required();
    };

    auto* validate = app.add_subcommand("validate", "check a model file");
    validate->add_option("--model", common.model_path, "model JSON file")->required();
    validate->add_option("--out", common.out, "optional output directory");

    auto* pdom = app.add_subcommand("p-domain", "domain of attraction and p-domains");
    add_common(pdom, true);
    pdom->add_option("--target", common.target, "target set")->required();
    pdom->add_option("--ps", ps_arg, "comma list of p levels");

    auto* ra = app.add_subcommand("reach-avoid", "maximal reach-avoid probability");
    add_common(ra, true);
    ra->add_option("--target", common.target, "target set")->required();
    ra->add_option("--avoid", common.avoid, "avoid set");
    ra->add_option("--nu", common.nu, "initial distribution file or 'uniform'");

    auto* con = app.add_subcommand("constrained", "reach with a hitting constraint");
    add_common(con, true);
    con->add_option("--target", common.target, "target set")->required();
    con->add_option("--avoid", common.avoid, "constrained set")->required();
    con->add_option("--nu", common.nu, "initial distribution file or 'uniform'");
    con->add_option("--eps", eps, "hitting probability bound")->required();

    auto* sim = app.add_subcommand("simulate", "Monte Carlo policy certificate");
    add_common(sim, true);
    sim->add_option("--policy", policy_path, "policy JSON file")->required();
    sim->add_option("--target", common.target, "target set")->required();
    sim->add_option("--avoid", common.avoid, "avoid set (defaults to the policy's)");
    sim->add_option("--nu", common.nu, "initial distribution file or 'uniform'");
    sim->add_option("--n", n, "trajectory count");
    sim->add_option("--horizon", horizon, "horizon");
    sim->add_option("--seed", seed, "random seed")->required();
    sim->add_option("--threads", threads, "worker threads");
    sim->add_option("--emit-trajectories", emit_traj, "also write the first K trajectories");

    auto* gridcmd = app.add_subcommand("grid", "wind-grid model tools");
    auto* gen = gridcmd->add_subcommand("gen", "generate a wind-grid model");
    gen->add_option("--rows", rows, "grid rows")->required();
    gen->add_option("--cols", cols, "grid cols")->required();
    gen->add_option("--wind", wind, "wind strength in [0,1]")->required();
    gen->add_option("--target", target_rects, "target rectangle r0:r1,c0:c1 (repeatable)");
    gen->add_option("--obstacle", obstacle_rects, "obstacle rectangle (repeatable)");
    gen->add_flag("--no-absorbing-top", no_absorbing_top, "top boundary not absorbing");
    gen->add_option("--out", common.out, "output directory")->required();

    auto* oracle = app.add_subcommand("oracle", "cross-check LP results against iteration oracles");
    oracle->add_option("--model", common.model_path, "model JSON file")->required();
    oracle->add_option("--grid", common.grid_sidecar, "grid sidecar JSON");
    oracle->add_option("--target", common.target, "target set")->required();
    oracle->add_option("--avoid", common.avoid, "avoid set");
    oracle->add_option("--out", common.out, "optional output directory");

    auto* replay = app.add_subcommand("replay", "re-run a command from its manifest");
    replay->add_option("--manifest", manifest_path, "manifest.json of a previous run")->required();
    replay->add_option("--out", out_override, "redirect outputs to a fresh directory");

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            std::cout << app.help();
            return kExitOk;
        }
        std::cerr << e.what() << "\n";
        return kExitInput;
    }

    try {
        if (validate->parsed()) return cmd_validate(common, args);
        if (pdom->parsed()) return cmd_p_domain(common, ps_arg, args);
        if (ra->parsed()) return cmd_reach_avoid(common, args);
        if (con->parsed()) return cmd_constrained(common, eps, args);
        if (sim->parsed())
            return cmd_simulate(common, policy_path, n, horizon, seed, threads, emit_traj, args);
        if (gridcmd->parsed() && gen->parsed())
            return cmd_grid_gen(rows, cols, wind, target_rects, obstacle_rects, !no_absorbing_top,
                                common.out, args);
        if (oracle->parsed()) return cmd_oracle(common, args);
        if (replay->parsed()) return cmd_replay(manifest_path, out_override);
        std::cerr << "no subcommand given\n";
        return kExitInput;
    } catch (const CliError& e) {
        std::cerr << e.message << "\n";
        return e.code;
    } catch (const ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return kExitInput;
    } catch (const std::runtime_error& e) {
        std::cerr << e.what() << "\n";
        return kExitNumerical;
    }
}

}  // namespace mdpreach
