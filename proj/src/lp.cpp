#include "mdpreach/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "mdpreach/util.hpp"

namespace mdpreach {

std::string to_string(LpStatus s) {
    switch (s) {
        case LpStatus::Optimal: return "OPTIMAL";
        case LpStatus::Infeasible: return "INFEASIBLE";
        case LpStatus::Unbounded: return "UNBOUNDED";
        case LpStatus::Numerical: return "NUMERICAL";
    }
    return "?";
}

std::string to_string(Rel r) {
    switch (r) {
        case Rel::Le: return "<=";
        case Rel::Eq: return "=";
        case Rel::Ge: return ">=";
    }
    return "?";
}

int LinearProgram::add_column(bool is_free, std::string tag) {
    columns.push_back({is_free, std::move(tag)});
    return static_cast<int>(columns.size()) - 1;
}

void LinearProgram::set_objective(int col, double coef) {
    if (coef != 0.0) objective.emplace_back(col, coef);
}

int LinearProgram::add_row(Rel rel, double rhs, std::vector<std::pair<int, double>> coeffs,
                           std::string tag) {
    std::sort(coeffs.begin(), coeffs.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    rows.push_back({std::move(coeffs), rel, rhs, std::move(tag)});
    return static_cast<int>(rows.size()) - 1;
}

void LinearProgram::check_well_formed() const {
    const int n = static_cast<int>(columns.size());
    for (const auto& [j, c] : objective) {
        if (j < 0 || j >= n) throw std::invalid_argument("lp: objective column out of range");
        if (!std::isfinite(c)) throw std::invalid_argument("lp: objective coefficient not finite");
    }
    for (size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        if (!std::isfinite(r.rhs))
            throw std::invalid_argument("lp: row " + std::to_string(i) + " rhs not finite");
        int prev = -1;
        for (const auto& [j, c] : r.coeffs) {
            if (j < 0 || j >= n)
                throw std::invalid_argument("lp: row " + std::to_string(i) + " column out of range");
            if (j == prev)
                throw std::invalid_argument("lp: duplicate coefficient in row " + std::to_string(i));
            prev = j;
            if (!std::isfinite(c))
                throw std::invalid_argument("lp: coefficient not finite in row " + std::to_string(i));
        }
    }
}

std::string LinearProgram::dump() const {
    std::ostringstream os;
    os << "sense " << (sense == LpSense::Max ? "max" : "min") << "\n";
    std::vector<double> obj(columns.size(), 0.0);
    for (const auto& [j, c] : objective) obj[j] += c;
    for (size_t j = 0; j < columns.size(); ++j)
        os << "col " << j << " " << (columns[j].is_free ? "-inf" : "0") << " inf " << g17(obj[j])
           << "\n";
    for (const auto& r : rows) {
        os << "row " << to_string(r.rel) << " " << g17(r.rhs);
        for (const auto& [j, c] : r.coeffs) os << " " << j << ":" << g17(c);
        os << "\n";
    }
    return os.str();
}

namespace {

// Column kinds in the internal standard form max{c.x : Ax = b}.
enum class VarKind { Structural, Slack, Artificial };

struct Eta {
    int pivot_row;
    double pivot_val;
    std::vector<std::pair<int, double>> entries;  // nonzeros of the FTRAN column
};

class Simplex {
  public:
    Simplex(const LinearProgram& p, const LpOptions& opts) : p_(p), opts_(opts) { build(); }

    LpSolution run();

  private:
    const LinearProgram& p_;
    LpOptions opts_;

    int m_ = 0;        // rows
    int n_all_ = 0;    // structural + slack + artificial columns
    int n_ext_ = 0;    // structural columns
    int n_real_ = 0;   // structural + slack (artificials excluded from pricing)
    std::vector<std::vector<std::pair<int, double>>> cols_;  // column-wise A
    std::vector<VarKind> kind_;
    std::vector<bool> free_;
    std::vector<double> b_;
    std::vector<double> cost_;        // phase-2 objective (internal max form)
    std::vector<double> phase_cost_;  // active objective
    double sense_sign_ = 1.0;         // +1 max, -1 min

    std::vector<int> basis_;      // basic column per row
    std::vector<int> pos_in_basis_;  // column -> row index or -1
    std::vector<double> xb_;      // basic values

    Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu_;
    std::vector<Eta> etas_;
    std::vector<double> y_;  // pricing and pivot work vectors, reused
    std::vector<double> w_;
    bool in_phase_one_ = true;
    long iters_ = 0;
    long bland_after_ = 0;
    long max_iters_ = 0;

    void build();
    bool refactorize();  // false on singular basis
    void ftran(std::vector<double>& v);
    void btran(std::vector<double>& v);
    double reduced_cost(int j, const std::vector<double>& y) const;
    LpStatus iterate();  // runs the current phase to optimality
    LpSolution finish(LpStatus status);
};

void Simplex::build() {
    m_ = static_cast<int>(p_.rows.size());
    n_ext_ = static_cast<int>(p_.columns.size());
    sense_sign_ = (p_.sense == LpSense::Max) ? 1.0 : -1.0;

    cols_.assign(n_ext_, {});
    kind_.assign(n_ext_, VarKind::Structural);
    free_.assign(n_ext_, false);
    for (int j = 0; j < n_ext_; ++j) free_[j] = p_.columns[j].is_free;
    b_.resize(m_);
    for (int i = 0; i < m_; ++i) {
        b_[i] = p_.rows[i].rhs;
        for (const auto& [j, c] : p_.rows[i].coeffs)
            if (c != 0.0) cols_[j].emplace_back(i, c);
    }
    cost_.assign(n_ext_, 0.0);
    for (const auto& [j, c] : p_.objective) cost_[j] += sense_sign_ * c;

    // Slacks: <= rows get +1, >= rows get -1.
    std::vector<int> slack_of(m_, -1);
    for (int i = 0; i < m_; ++i) {
        if (p_.rows[i].rel == Rel::Eq) continue;
        const double coef = (p_.rows[i].rel == Rel::Le) ? 1.0 : -1.0;
        slack_of[i] = static_cast<int>(cols_.size());
        cols_.push_back({{i, coef}});
        kind_.push_back(VarKind::Slack);
        free_.push_back(false);
        cost_.push_back(0.0);
    }
    n_real_ = static_cast<int>(cols_.size());

    // Initial basis: slack where it starts feasible, artificial otherwise.
    basis_.assign(m_, -1);
    xb_.assign(m_, 0.0);
    bool any_artificial = false;
    for (int i = 0; i < m_; ++i) {
        const Rel rel = p_.rows[i].rel;
        const bool slack_ok = (rel == Rel::Le && b_[i] >= 0.0) || (rel == Rel::Ge && b_[i] <= 0.0);
        if (slack_ok) {
            basis_[i] = slack_of[i];
            xb_[i] = std::abs(b_[i]);
        } else {
            const double coef = (b_[i] >= 0.0) ? 1.0 : -1.0;
            const int j = static_cast<int>(cols_.size());
            cols_.push_back({{i, coef}});
            kind_.push_back(VarKind::Artificial);
            free_.push_back(false);
            cost_.push_back(0.0);
            basis_[i] = j;
            xb_[i] = std::abs(b_[i]);
            any_artificial = true;
        }
    }
    n_all_ = static_cast<int>(cols_.size());
    pos_in_basis_.assign(n_all_, -1);
    for (int i = 0; i < m_; ++i) pos_in_basis_[basis_[i]] = i;

    phase_cost_.assign(n_all_, 0.0);
    if (any_artificial) {
        for (int j = n_real_; j < n_all_; ++j) phase_cost_[j] = -1.0;
        in_phase_one_ = true;
    } else {
        in_phase_one_ = false;
        phase_cost_ = cost_;
        phase_cost_.resize(n_all_, 0.0);
    }

    bland_after_ = opts_.bland_after > 0 ? opts_.bland_after : 5L * (m_ + n_all_);
    max_iters_ = opts_.max_iterations > 0 ? opts_.max_iterations : 10000L + 20L * (m_ + n_all_);
}

bool Simplex::refactorize() {
    etas_.clear();
    if (m_ == 0) return true;
    Eigen::SparseMatrix<double> B(m_, m_);
    std::vector<Eigen::Triplet<double>> trip;
    for (int i = 0; i < m_; ++i)
        for (const auto& [r, c] : cols_[basis_[i]]) trip.emplace_back(r, i, c);
    B.setFromTriplets(trip.begin(), trip.end());
    lu_.compute(B);
    if (lu_.info() != Eigen::Success) return false;
    // Recompute basic values from scratch to shed accumulated drift.
    Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(b_.data(), m_);
    Eigen::VectorXd x = lu_.solve(rhs);
    for (int i = 0; i < m_; ++i) xb_[i] = x[i];
    return true;
}

void Simplex::ftran(std::vector<double>& v) {
    if (m_ == 0) return;
    Eigen::Map<Eigen::VectorXd> vm(v.data(), m_);
    Eigen::VectorXd x = lu_.solve(vm);
    for (int i = 0; i < m_; ++i) v[i] = x[i];
    for (const Eta& e : etas_) {
        const double zr = v[e.pivot_row] / e.pivot_val;
        for (const auto& [i, w] : e.entries)
            if (i != e.pivot_row) v[i] -= w * zr;
        v[e.pivot_row] = zr;
    }
}

void Simplex::btran(std::vector<double>& v) {
    if (m_ == 0) return;
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
        double dot = 0.0;
        for (const auto& [i, w] : it->entries)
            if (i != it->pivot_row) dot += w * v[i];
        v[it->pivot_row] = (v[it->pivot_row] - dot) / it->pivot_val;
    }
    Eigen::Map<Eigen::VectorXd> vm(v.data(), m_);
    Eigen::VectorXd y = lu_.adjoint().solve(vm);
    for (int i = 0; i < m_; ++i) v[i] = y[i];
}

double Simplex::reduced_cost(int j, const std::vector<double>& y) const {
    double d = phase_cost_[j];
    for (const auto& [i, c] : cols_[j]) d -= y[i] * c;
    return d;
}

LpStatus Simplex::iterate() {
    const double d_tol = opts_.feas_tol;
    while (true) {
        if (iters_ >= max_iters_) return LpStatus::Numerical;
        const bool bland = iters_ >= bland_after_;

        // Pricing: y = B^-T c_B, then reduced costs of nonbasic real columns.
        std::vector<double>& y = y_;
        y.assign(m_, 0.0);
        for (int i = 0; i < m_; ++i) y[i] = phase_cost_[basis_[i]];
        btran(y);

        int enter = -1;
        double enter_score = d_tol;
        double enter_dir = 1.0;
        const int limit = in_phase_one_ ? n_all_ : n_real_;
        for (int j = 0; j < limit; ++j) {
            if (pos_in_basis_[j] >= 0) continue;
            if (kind_[j] == VarKind::Artificial) continue;  // artificials never re-enter
            const double d = reduced_cost(j, y);
            double score;
            double dir;
            if (free_[j]) {
                score = std::abs(d);
                dir = (d >= 0.0) ? 1.0 : -1.0;
            } else {
                score = d;
                dir = 1.0;
            }
            if (score > (bland ? d_tol : enter_score)) {
                enter = j;
                enter_score = score;
                enter_dir = dir;
                if (bland) break;  // lowest eligible index
            }
        }
        if (enter < 0) return LpStatus::Optimal;

        // FTRAN the entering column.
        std::vector<double>& w = w_;
        w.assign(m_, 0.0);
        for (const auto& [i, c] : cols_[enter]) w[i] = c;
        ftran(w);

        // Two-pass ratio test. Pass one finds the largest step every bound
        // tolerates within feas_tol; pass two picks the largest pivot among
        // rows blocking at or below that step, which keeps the basis well
        // conditioned on degenerate programs. Basic artificials outside
        // phase one are pinned at zero. Bland mode uses the exact minimum
        // ratio with smallest-index tie-breaks so termination stays
        // guaranteed.
        double t_best = 0.0;
        int leave = -1;
        {
            double t_max = std::numeric_limits<double>::infinity();
            bool any_block = false;
            auto blocking = [&](int i, double& step, double& ratio) {
                const int bj = basis_[i];
                step = enter_dir * w[i];
                if (free_[bj]) return false;
                const bool pinned = (!in_phase_one_ && kind_[bj] == VarKind::Artificial);
                if (pinned ? std::abs(step) <= opts_.pivot_tol : step <= opts_.pivot_tol)
                    return false;
                ratio = pinned ? 0.0 : std::max(xb_[i], 0.0) / std::abs(step);
                return true;
            };
            for (int i = 0; i < m_; ++i) {
                double step, ratio;
                if (!blocking(i, step, ratio)) continue;
                any_block = true;
                const double cap = ratio + opts_.feas_tol / std::abs(step);
                t_max = std::min(t_max, cap);
            }
            if (any_block) {
                double leave_piv = 0.0;
                double exact_min = std::numeric_limits<double>::infinity();
                for (int i = 0; i < m_; ++i) {
                    double step, ratio;
                    if (!blocking(i, step, ratio)) continue;
                    if (bland) {
                        if (ratio < exact_min - 1e-12 ||
                            (ratio <= exact_min + 1e-12 &&
                             (leave < 0 || basis_[i] < basis_[leave]))) {
                            if (ratio < exact_min) exact_min = ratio;
                            leave = i;
                            t_best = ratio;
                        }
                    } else if (ratio <= t_max && std::abs(w[i]) > leave_piv) {
                        leave = i;
                        leave_piv = std::abs(w[i]);
                        t_best = ratio;
                    }
                }
            }
        }
        if (leave < 0) {
            if (in_phase_one_) return LpStatus::Numerical;  // phase-1 objective is bounded
            return LpStatus::Unbounded;
        }
        // Pivot.
        const double t = t_best;
        for (int i = 0; i < m_; ++i) {
            if (w[i] == 0.0) continue;
            xb_[i] -= t * enter_dir * w[i];
            if (!free_[basis_[i]] && xb_[i] < 0.0 && xb_[i] > -opts_.feas_tol) xb_[i] = 0.0;
        }
        Eta eta{leave, w[leave], {}};
        for (int i = 0; i < m_; ++i)
            if (w[i] != 0.0) eta.entries.emplace_back(i, w[i]);
        etas_.push_back(std::move(eta));

        pos_in_basis_[basis_[leave]] = -1;
        basis_[leave] = enter;
        pos_in_basis_[enter] = leave;
        xb_[leave] = enter_dir * t;
        ++iters_;

        if (static_cast<int>(etas_.size()) >= opts_.refactor_every) {
            if (!refactorize()) return LpStatus::Numerical;
        }
    }
}

LpSolution Simplex::finish(LpStatus status) {
    LpSolution sol;
    sol.status = status;
    sol.iterations = iters_;
    if (status != LpStatus::Optimal) return sol;

    // Fresh factorization so reported values carry no update drift.
    if (!refactorize()) {
        sol.status = LpStatus::Numerical;
        return sol;
    }
    sol.primal.assign(n_ext_, 0.0);
    for (int i = 0; i < m_; ++i)
        if (basis_[i] < n_ext_) sol.primal[basis_[i]] = xb_[i];

    std::vector<double> y(m_);
    for (int i = 0; i < m_; ++i) y[i] = cost_[basis_[i]];
    btran(y);
    sol.dual.assign(m_, 0.0);
    for (int i = 0; i < m_; ++i) sol.dual[i] = sense_sign_ * y[i];

    double obj = 0.0;
    for (int j = 0; j < n_ext_; ++j) obj += cost_[j] * sol.primal[j];
    sol.objective = sense_sign_ * obj;

    // Certify the solution: feasibility, dual feasibility, strong duality.
    double pres = 0.0;
    for (int i = 0; i < m_; ++i) {
        double ax = 0.0;
        double scale = 1.0 + std::abs(b_[i]);
        for (const auto& [j, c] : p_.rows[i].coeffs) {
            ax += c * sol.primal[j];
            scale = std::max(scale, std::abs(c));
        }
        double viol = 0.0;
        switch (p_.rows[i].rel) {
            case Rel::Eq: viol = std::abs(ax - b_[i]); break;
            case Rel::Le: viol = std::max(0.0, ax - b_[i]); break;
            case Rel::Ge: viol = std::max(0.0, b_[i] - ax); break;
        }
        pres = std::max(pres, viol / scale);
    }
    for (int j = 0; j < n_ext_; ++j)
        if (!free_[j] && sol.primal[j] < 0.0)
            pres = std::max(pres, -sol.primal[j]);
    sol.primal_residual = pres;

    double dres = 0.0;
    for (int j = 0; j < n_real_; ++j) {
        const double d = reduced_cost(j, y);  // phase_cost_ == cost_ here
        const double scale = 1.0 + std::abs(cost_[j]);
        if (pos_in_basis_[j] >= 0 || free_[j])
            dres = std::max(dres, std::abs(d) / scale);
        else
            dres = std::max(dres, std::max(0.0, d) / scale);
    }
    sol.dual_residual = dres;

    double ydotb = 0.0;
    for (int i = 0; i < m_; ++i) ydotb += y[i] * b_[i];
    sol.duality_gap = std::abs(obj - ydotb) / (1.0 + std::abs(obj));

    if (pres > opts_.feas_tol || dres > opts_.feas_tol || sol.duality_gap > 1e-8)
        sol.status = LpStatus::Numerical;
    return sol;
}

LpSolution Simplex::run() {
    if (!refactorize()) return finish(LpStatus::Numerical);

    if (in_phase_one_) {
        const LpStatus s1 = iterate();
        if (s1 != LpStatus::Optimal) return finish(s1 == LpStatus::Unbounded ? LpStatus::Numerical : s1);
        double infeas = 0.0;
        for (int i = 0; i < m_; ++i)
            if (kind_[basis_[i]] == VarKind::Artificial) infeas += std::abs(xb_[i]);
        double scale = 1.0;
        for (int i = 0; i < m_; ++i) scale = std::max(scale, std::abs(b_[i]));
        if (infeas > opts_.feas_tol * scale) {
            LpSolution sol;
            sol.status = LpStatus::Infeasible;
            sol.iterations = iters_;
            return sol;
        }
        in_phase_one_ = false;
        phase_cost_ = cost_;
        phase_cost_.resize(n_all_, 0.0);
    }
    return finish(iterate());
}

}  // namespace

LpSolution solve_lp(const LinearProgram& p, const LpOptions& opts) {
    p.check_well_formed();
    Simplex s(p, opts);
    return s.run();
}

}  // namespace mdpreach
