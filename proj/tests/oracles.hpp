// Independent reference computations used by the test suites. Everything in
// this header is deliberately brute force and shares no code path with the
// library implementations it checks.
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "frontier/dea.hpp"
#include "frontier/lp.hpp"

namespace oracle {

// Minimum objective over all basic solutions of the slack-augmented system.
// Assumes lower bounds 0 and no upper bounds. Returns nullopt when no basic
// feasible solution exists.
inline std::optional<double> lp_enumerate(const frontier::lp::StandardFormLp& p) {
    using namespace frontier::lp;
    const Eigen::Index n = p.objective.size();
    const Eigen::Index m = p.constraints.rows();

    Eigen::Index extra = 0;
    for (auto s : p.senses)
        if (s != Sense::Eq) ++extra;
    const Eigen::Index total = n + extra;

    Eigen::MatrixXd aug = Eigen::MatrixXd::Zero(m, total);
    Eigen::VectorXd cost = Eigen::VectorXd::Zero(total);
    aug.leftCols(n) = p.constraints;
    cost.head(n) = p.objective;
    Eigen::Index col = n;
    for (Eigen::Index i = 0; i < m; ++i) {
        if (p.senses[static_cast<std::size_t>(i)] == Sense::Le) aug(i, col++) = 1.0;
        else if (p.senses[static_cast<std::size_t>(i)] == Sense::Ge) aug(i, col++) = -1.0;
    }

    std::optional<double> best;
    std::vector<Eigen::Index> pick(static_cast<std::size_t>(m));
    // T..TF..F is the lexicographically largest arrangement; prev_permutation
    // then walks every m-subset exactly once.
    std::vector<bool> mask(static_cast<std::size_t>(total), false);
    std::fill(mask.begin(), mask.begin() + m, true);

    do {
        Eigen::Index k = 0;
        for (Eigen::Index j = 0; j < total; ++j)
            if (mask[static_cast<std::size_t>(j)]) pick[static_cast<std::size_t>(k++)] = j;

        Eigen::MatrixXd basis(m, m);
        for (Eigen::Index i = 0; i < m; ++i) basis.col(i) = aug.col(pick[static_cast<std::size_t>(i)]);
        Eigen::FullPivLU<Eigen::MatrixXd> lu(basis);
        if (!lu.isInvertible()) continue;
        Eigen::VectorXd xb = lu.solve(p.rhs);
        if ((xb.array() < -1e-9).any()) continue;

        double v = 0.0;
        for (Eigen::Index i = 0; i < m; ++i) v += cost(pick[static_cast<std::size_t>(i)]) * xb(i);
        if (!best || v < *best) best = v;
    } while (std::prev_permutation(mask.begin(), mask.end()));

    return best;
}

// ---------------------------------------------------------------------------
// SBM brute force: evaluate the slack ratio of the fractional program
// directly at intensity vectors on a simplex grid, with local refinement for
// reference sets too large for a fine global grid. The optimum of a
// linear-fractional objective over a polytope sits at a vertex, so grid
// descent around the best coarse points converges to it.
// ---------------------------------------------------------------------------

struct SbmPoint {
    Eigen::VectorXd inputs, goods, bads;
};

// Ratio of Eq-1 form at a given lambda, or +inf when infeasible (any slack
// would need to go negative).
inline double sbm_ratio_at(const frontier::dea::DeaInstance& inst, const SbmPoint& pt,
                           const Eigen::VectorXd& lambda) {
    const Eigen::VectorXd xl = inst.inputs * lambda;
    const Eigen::VectorXd gl = inst.goods * lambda;
    const Eigen::VectorXd bl = inst.bads * lambda;
    const double eps = 1e-9;
    double in_term = 0.0;
    for (Eigen::Index i = 0; i < xl.size(); ++i) {
        const double s = pt.inputs(i) - xl(i);
        if (s < -eps) return std::numeric_limits<double>::infinity();
        in_term += std::max(s, 0.0) / pt.inputs(i);
    }
    double out_term = 0.0;
    for (Eigen::Index r = 0; r < gl.size(); ++r) {
        const double s = gl(r) - pt.goods(r);
        if (s < -eps) return std::numeric_limits<double>::infinity();
        out_term += std::max(s, 0.0) / pt.goods(r);
    }
    for (Eigen::Index r = 0; r < bl.size(); ++r) {
        const double s = pt.bads(r) - bl(r);
        if (s < -eps) return std::numeric_limits<double>::infinity();
        out_term += std::max(s, 0.0) / pt.bads(r);
    }
    const double m = static_cast<double>(xl.size());
    const double s12 = static_cast<double>(gl.size() + bl.size());
    return (1.0 - in_term / m) / (1.0 + out_term / s12);
}

namespace detail {

template <typename Fn>
void walk_simplex(Eigen::VectorXd& lambda, Eigen::Index dim, int remaining, int steps, Fn&& fn) {
    if (dim + 1 == lambda.size()) {
        lambda(dim) = static_cast<double>(remaining) / steps;
        fn(lambda);
        return;
    }
    for (int k = 0; k <= remaining; ++k) {
        lambda(dim) = static_cast<double>(k) / steps;
        walk_simplex(lambda, dim + 1, remaining - k, steps, fn);
    }
}

}  // namespace detail

template <typename Fn>
void for_each_simplex_point(Eigen::Index n, int steps, Fn&& fn) {
    Eigen::VectorXd lambda(n);
    detail::walk_simplex(lambda, 0, steps, steps, fn);
}

// Stage-1 rho via grid search over the lambda simplex. Exact grid at the
// requested step for n <= 3; coarse grid plus multi-start zooming above that.
inline double sbm_grid_rho(const frontier::dea::DeaInstance& inst, Eigen::Index dmu) {
    const Eigen::Index n = static_cast<Eigen::Index>(inst.dmu_ids.size());
    SbmPoint pt{inst.inputs.col(dmu), inst.goods.col(dmu), inst.bads.col(dmu)};

    double best = 1.0;  // lambda = e_dmu is always feasible with ratio 1
    Eigen::VectorXd best_lambda = Eigen::VectorXd::Unit(n, dmu);

    if (n <= 3) {
        for_each_simplex_point(n, 1000, [&](const Eigen::VectorXd& l) {
            const double v = sbm_ratio_at(inst, pt, l);
            if (v < best) {
                best = v;
                best_lambda = l;
            }
        });
        return best;
    }

    struct Seed {
        double value;
        Eigen::VectorXd lambda;
    };
    std::vector<Seed> seeds;
    for_each_simplex_point(n, 24, [&](const Eigen::VectorXd& l) {
        const double v = sbm_ratio_at(inst, pt, l);
        if (std::isfinite(v)) seeds.push_back({v, l});
    });
    seeds.push_back({1.0, Eigen::VectorXd::Unit(n, dmu)});
    std::sort(seeds.begin(), seeds.end(), [](const Seed& a, const Seed& b) { return a.value < b.value; });
    if (seeds.size() > 40) seeds.resize(40);

    // Zoom: rescan a shrinking box around the incumbent, projected back onto
    // the simplex via the last coordinate.
    for (auto& seed : seeds) {
        Eigen::VectorXd center = seed.lambda;
        double radius = 2.0 / 24.0;
        double local = seed.value;
        for (int round = 0; round < 9; ++round) {
            const int steps = 8;
            Eigen::VectorXd probe(n);
            std::vector<int> idx(static_cast<std::size_t>(n - 1), 0);
            bool carry = false;
            while (!carry) {
                double head = 0.0;
                for (Eigen::Index d = 0; d + 1 < n; ++d) {
                    const double lo = std::max(0.0, center(d) - radius);
                    const double hi = std::min(1.0, center(d) + radius);
                    probe(d) = lo + (hi - lo) * idx[static_cast<std::size_t>(d)] / steps;
                    head += probe(d);
                }
                probe(n - 1) = 1.0 - head;
                if (probe(n - 1) >= -1e-12) {
                    probe(n - 1) = std::max(probe(n - 1), 0.0);
                    const double v = sbm_ratio_at(inst, pt, probe);
                    if (v < local) {
                        local = v;
                        center = probe;
                    }
                }
                carry = true;
                for (auto& k : idx) {
                    if (++k <= steps) {
                        carry = false;
                        break;
                    }
                    k = 0;
                }
            }
            radius /= 3.0;
        }
        if (local < best) best = local;
    }
    return best;
}

// Super-SBM ratio under the bad-as-input convention at a given lambda over
// the reduced reference set: the projection is componentwise analytic.
inline double super_ratio_at(const frontier::dea::DeaInstance& ref, const SbmPoint& pt,
                             const Eigen::VectorXd& lambda) {
    const Eigen::VectorXd xl = ref.inputs * lambda;
    const Eigen::VectorXd gl = ref.goods * lambda;
    const Eigen::VectorXd bl = ref.bads * lambda;
    double num = 0.0;
    for (Eigen::Index i = 0; i < xl.size(); ++i)
        num += std::max(xl(i), pt.inputs(i)) / pt.inputs(i);
    for (Eigen::Index r = 0; r < bl.size(); ++r)
        num += std::max(bl(r), pt.bads(r)) / pt.bads(r);
    num /= static_cast<double>(xl.size() + bl.size());
    double den = 0.0;
    for (Eigen::Index r = 0; r < gl.size(); ++r)
        den += std::min(gl(r), pt.goods(r)) / pt.goods(r);
    den /= static_cast<double>(gl.size());
    if (den <= 0.0) return std::numeric_limits<double>::infinity();
    return num / den;
}

// Exhaustive grid over the excluded-DMU simplex.
inline double super_grid_delta(const frontier::dea::DeaInstance& inst, Eigen::Index dmu, int steps = 1000) {
    const Eigen::Index n = static_cast<Eigen::Index>(inst.dmu_ids.size());
    frontier::dea::DeaInstance ref = inst;
    ref.dmu_ids.erase(ref.dmu_ids.begin() + dmu);
    Eigen::MatrixXd x(inst.inputs.rows(), n - 1), g(inst.goods.rows(), n - 1), b(inst.bads.rows(), n - 1);
    Eigen::Index k = 0;
    for (Eigen::Index j = 0; j < n; ++j) {
        if (j == dmu) continue;
        x.col(k) = inst.inputs.col(j);
        g.col(k) = inst.goods.col(j);
        b.col(k) = inst.bads.col(j);
        ++k;
    }
    ref.inputs = x;
    ref.goods = g;
    ref.bads = b;

    SbmPoint pt{inst.inputs.col(dmu), inst.goods.col(dmu), inst.bads.col(dmu)};
    double best = std::numeric_limits<double>::infinity();
    for_each_simplex_point(n - 1, steps, [&](const Eigen::VectorXd& l) {
        best = std::min(best, super_ratio_at(ref, pt, l));
    });
    return best;
}

}  // namespace oracle
