#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mdpreach/model.hpp"

namespace mdpreach {

using Cell = std::pair<int, int>;  // (row, col); row 0 is the top boundary

/**
 * Wind-navigation grid. Three controls steer one cell up-left, up, or
 * up-right; with probability wind_strength the outcome is pushed one cell
 * south-east from the nominal destination. Moves are clamped to the grid with
 * the folded mass merged. Top-boundary cells absorb when absorbing_top is
 * set, and target cells always absorb so the target is a closed set.
 */
struct GridSpec {
    int rows = 0;
    int cols = 0;
    double wind_strength = 0.0;  // in [0, 1]
    std::vector<Cell> target_cells;
    std::vector<Cell> obstacle_cells;
    bool absorbing_top = true;

    void validate() const;  // throws std::invalid_argument
};

struct GridModel {
    GridSpec spec;
    Model model;  // state id = row * cols + col

    int state_of(int r, int c) const { return r * spec.cols + c; }
    Cell cell_of(int s) const { return {s / spec.cols, s % spec.cols}; }
    std::vector<int> target_states() const;
    std::vector<int> obstacle_states() const;
};

GridModel build_grid(const GridSpec& spec);

/// All cells of the rectangle [r0, r1] x [c0, c1], inclusive.
std::vector<Cell> rect_cells(int r0, int r1, int c0, int c1);

/// Sidecar map: {"rows": R, "cols": C, "cell": {"<state>": [r, c]}}.
std::string grid_sidecar_json(const GridModel& g);

/// One line per state: `row,col,value` (17 significant digits).
std::string grid_values_csv(const GridModel& g, const std::vector<double>& values);

/// One line per state: `state,value`, for models without grid structure.
std::string values_csv(const std::vector<double>& values);

/// States with a directed path to the target in the union graph of all
/// actions' positive-probability edges. Oracle for escape-set checks.
std::vector<bool> can_reach_target(const Model& m, const std::vector<int>& target);

}  // namespace mdpreach
