#include "mdpreach/exact.hpp"

#include <algorithm>

namespace mdpreach {

std::vector<double> hit_by_horizon(const Model& m, const StationaryPolicy& pi,
                                   const std::vector<int>& target, long horizon) {
    return hit_avoiding_by_horizon(m, pi, target, {}, horizon);
}

std::vector<double> hit_avoiding_by_horizon(const Model& m, const StationaryPolicy& pi,
                                            const std::vector<int>& target,
                                            const std::vector<int>& avoid, long horizon) {
    const auto tgt = sorted_unique(target);
    const auto avd = sorted_unique(avoid);
    const auto chain = induced_chain(m, pi);

    // q_k(x) = P_x(hit target within k steps, not touching avoid first)
    std::vector<double> q(m.n_states, 0.0);
    for (int x : tgt) q[x] = 1.0;
    std::vector<double> next(m.n_states, 0.0);
    for (long k = 0; k < horizon; ++k) {
        for (int x = 0; x < m.n_states; ++x) {
            if (contains(tgt, x)) {
                next[x] = 1.0;
            } else if (contains(avd, x)) {
                next[x] = 0.0;
            } else {
                double s = 0.0;
                for (const auto& [to, p] : chain[x]) s += p * q[to];
                next[x] = s;
            }
        }
        q.swap(next);
    }
    return q;
}

TwoPhaseHit two_phase_hit_by_horizon(const Model& m, const TwoPhasePolicy& tp,
                                     const std::vector<int>& target, long horizon) {
    const auto tgt = sorted_unique(target);
    const auto avd = sorted_unique(tp.avoid_set);
    const auto chain0 = induced_chain(m, tp.mu0);
    const auto chain1 = induced_chain(m, tp.mu1);

    // qt[mode][x] = P(tau_target <= k from x in the given mode); mode flips
    // to 1 on entering the avoid set, target states freeze at 1.
    std::vector<std::vector<double>> qt(2, std::vector<double>(m.n_states, 0.0));
    for (int x : tgt) qt[0][x] = qt[1][x] = 1.0;
    // qa0[x] = P(avoid visited within k steps and strictly before the first
    // target visit, from x in mode 0). From mode 1 that event already holds.
    std::vector<double> qa0(m.n_states, 0.0);

    std::vector<std::vector<double>> nt(2, std::vector<double>(m.n_states, 0.0));
    std::vector<double> na0(m.n_states, 0.0);
    for (long k = 0; k < horizon; ++k) {
        for (int mode = 0; mode < 2; ++mode) {
            const auto& chain = (mode == 1) ? chain1 : chain0;
            for (int x = 0; x < m.n_states; ++x) {
                if (contains(tgt, x)) {
                    nt[mode][x] = 1.0;
                    continue;
                }
                double s = 0.0;
                for (const auto& [to, p] : chain[x]) {
                    const int to_mode = (mode == 1 || contains(avd, to)) ? 1 : 0;
                    s += p * qt[to_mode][to];
                }
                nt[mode][x] = s;
            }
        }
        for (int x = 0; x < m.n_states; ++x) {
            if (contains(tgt, x) || contains(avd, x)) {
                na0[x] = 0.0;  // never read at these states
                continue;
            }
            double s = 0.0;
            for (const auto& [to, p] : chain0[x]) {
                if (contains(avd, to))
                    s += p;
                else if (!contains(tgt, to))
                    s += p * qa0[to];
            }
            na0[x] = s;
        }
        qt.swap(nt);
        qa0.swap(na0);
    }

    TwoPhaseHit out;
    out.target_prob.resize(m.n_states);
    out.avoid_prob.resize(m.n_states);
    for (int x = 0; x < m.n_states; ++x) {
        const int mode = contains(avd, x) ? 1 : 0;
        out.target_prob[x] = qt[mode][x];
        out.avoid_prob[x] = contains(tgt, x) ? 0.0 : (mode == 1 ? 1.0 : qa0[x]);
    }
    return out;
}

std::vector<double> marginal_in_set(const Model& m, const StationaryPolicy& pi,
                                    const std::vector<int>& set, long horizon) {
    const auto s = sorted_unique(set);
    const auto chain = induced_chain(m, pi);
    std::vector<double> w(m.n_states, 0.0);
    for (int x : s) w[x] = 1.0;
    std::vector<double> next(m.n_states, 0.0);
    for (long t = 0; t < horizon; ++t) {
        for (int x = 0; x < m.n_states; ++x) {
            double v = 0.0;
            for (const auto& [to, p] : chain[x]) v += p * w[to];
            next[x] = v;
        }
        w.swap(next);
    }
    return w;
}

}  // namespace mdpreach
