#include "mdpreach/grid.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "mdpreach/util.hpp"

namespace mdpreach {

void GridSpec::validate() const {
    if (rows <= 0 || cols <= 0) throw std::invalid_argument("grid: rows and cols must be positive");
    if (!(wind_strength >= 0.0 && wind_strength <= 1.0))
        throw std::invalid_argument("grid: wind_strength must lie in [0, 1]");
    auto check_cells = [&](const std::vector<Cell>& cells, const char* what) {
        for (const auto& [r, c] : cells)
            if (r < 0 || r >= rows || c < 0 || c >= cols)
                throw std::invalid_argument(std::string("grid: ") + what + " cell out of range");
    };
    check_cells(target_cells, "target");
    check_cells(obstacle_cells, "obstacle");
    for (const auto& cell : target_cells)
        if (std::find(obstacle_cells.begin(), obstacle_cells.end(), cell) != obstacle_cells.end())
            throw std::invalid_argument("grid: target and obstacle cells overlap");
}

std::vector<int> GridModel::target_states() const {
    std::vector<int> out;
    for (const auto& [r, c] : spec.target_cells) out.push_back(state_of(r, c));
    return sorted_unique(std::move(out));
}

std::vector<int> GridModel::obstacle_states() const {
    std::vector<int> out;
    for (const auto& [r, c] : spec.obstacle_cells) out.push_back(state_of(r, c));
    return sorted_unique(std::move(out));
}

GridModel build_grid(const GridSpec& spec) {
    spec.validate();
    GridModel g;
    g.spec = spec;

    Model& m = g.model;
    m.n_states = spec.rows * spec.cols;
    m.action_labels = {"UL", "U", "UR"};
    m.feasible.assign(m.n_states, {0, 1, 2});
    m.kernel.assign(m.n_states, std::vector<SparseRow>(3));

    const auto targets = g.target_states();
    auto clamp = [&](int r, int c) -> int {
        r = std::min(std::max(r, 0), spec.rows - 1);
        c = std::min(std::max(c, 0), spec.cols - 1);
        return g.state_of(r, c);
    };
    const double w = spec.wind_strength;

    for (int r = 0; r < spec.rows; ++r) {
        for (int c = 0; c < spec.cols; ++c) {
            const int s = g.state_of(r, c);
            const bool absorbing = contains(targets, s) || (spec.absorbing_top && r == 0);
            for (int a = 0; a < 3; ++a) {
                if (absorbing) {
                    m.kernel[s][a] = {{s, 1.0}};
                    continue;
                }
                const int dc = a - 1;  // UL, U, UR
                const int nominal = clamp(r - 1, c + dc);
                const auto [nr, nc] = g.cell_of(nominal);
                const int pushed = clamp(nr + 1, nc + 1);
                SparseRow row;
                if (1.0 - w > 0.0) row.emplace_back(nominal, 1.0 - w);
                if (w > 0.0) row.emplace_back(pushed, w);
                m.kernel[s][a] = merge_row(std::move(row));
            }
        }
    }
    require_valid(m);
    return g;
}

std::vector<Cell> rect_cells(int r0, int r1, int c0, int c1) {
    std::vector<Cell> cells;
    for (int r = r0; r <= r1; ++r)
        for (int c = c0; c <= c1; ++c) cells.emplace_back(r, c);
    return cells;
}

std::string grid_sidecar_json(const GridModel& g) {
    nlohmann::ordered_json j;
    j["rows"] = g.spec.rows;
    j["cols"] = g.spec.cols;
    nlohmann::ordered_json cells = nlohmann::ordered_json::object();
    for (int s = 0; s < g.model.n_states; ++s) {
        const auto [r, c] = g.cell_of(s);
        cells[std::to_string(s)] = {r, c};
    }
    j["cell"] = cells;
    return dump_json_g17(j);
}

std::string grid_values_csv(const GridModel& g, const std::vector<double>& values) {
    std::ostringstream os;
    os << "row,col,value\n";
    for (int s = 0; s < g.model.n_states; ++s) {
        const auto [r, c] = g.cell_of(s);
        os << r << "," << c << "," << g17(values[s]) << "\n";
    }
    return os.str();
}

std::string values_csv(const std::vector<double>& values) {
    std::ostringstream os;
    os << "state,value\n";
    for (size_t s = 0; s < values.size(); ++s) os << s << "," << g17(values[s]) << "\n";
    return os.str();
}

std::vector<bool> can_reach_target(const Model& m, const std::vector<int>& target) {
    // Backward BFS over reversed positive-probability edges.
    std::vector<std::vector<int>> rev(m.n_states);
    for (int x = 0; x < m.n_states; ++x)
        for (const auto& row : m.kernel[x])
            for (const auto& [to, p] : row)
                if (p > 0.0 && to != x) rev[to].push_back(x);

    std::vector<bool> reach(m.n_states, false);
    std::deque<int> queue;
    for (int t : sorted_unique(target)) {
        reach[t] = true;
        queue.push_back(t);
    }
    while (!queue.empty()) {
        const int x = queue.front();
        queue.pop_front();
        for (int from : rev[x]) {
            if (!reach[from]) {
                reach[from] = true;
                queue.push_back(from);
            }
        }
    }
    return reach;
}

}  // namespace mdpreach
