#include "frontier/dea.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace frontier::dea {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument("dea: " + msg);
}

// Variable layout shared by the stage-1 LP builder and the recovery step:
// [t | lambda (n_ref) | s- (m) | sg (s1) | sb (s2)].
struct SbmLayout {
    Eigen::Index n_ref, m, s1, s2;
    Eigen::Index t() const { return 0; }
    Eigen::Index lambda(Eigen::Index j) const { return 1 + j; }
    Eigen::Index in_slack(Eigen::Index i) const { return 1 + n_ref + i; }
    Eigen::Index good_slack(Eigen::Index r) const { return 1 + n_ref + m + r; }
    Eigen::Index bad_slack(Eigen::Index r) const { return 1 + n_ref + m + s1 + r; }
    Eigen::Index total() const { return 1 + n_ref + m + s1 + s2; }
};

ExternalPoint point_of(const DeaInstance& inst, std::size_t dmu) {
    const auto j = static_cast<Eigen::Index>(dmu);
    return {inst.inputs.col(j), inst.goods.col(j), inst.bads.col(j)};
}

lp::StandardFormLp build_sbm_lp(const DeaInstance& ref, const ExternalPoint& pt) {
    SbmLayout ly{static_cast<Eigen::Index>(ref.num_dmus()), static_cast<Eigen::Index>(ref.num_inputs()),
                 static_cast<Eigen::Index>(ref.num_goods()), static_cast<Eigen::Index>(ref.num_bads())};

    // Zero observed values (drop-term policy) leave the constraint rows in
    // place but drop the corresponding ratio terms; divisors count only the
    // terms kept so the objective stays an average.
    Eigen::Index m_eff = 0;
    for (Eigen::Index i = 0; i < ly.m; ++i)
        if (pt.inputs(i) > 0.0) ++m_eff;
    Eigen::Index s_eff = 0;
    for (Eigen::Index r = 0; r < ly.s1; ++r)
        if (pt.goods(r) > 0.0) ++s_eff;
    for (Eigen::Index r = 0; r < ly.s2; ++r)
        if (pt.bads(r) > 0.0) ++s_eff;
    require(m_eff > 0, "every input of the evaluated DMU is zero");
    require(s_eff > 0, "every output of the evaluated DMU is zero");

    const Eigen::Index rows = 1 + ly.m + ly.s1 + ly.s2 + (ref.rts == Rts::Vrs ? 1 : 0);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(rows, ly.total());
    Eigen::VectorXd b = Eigen::VectorXd::Zero(rows);
    Eigen::VectorXd c = Eigen::VectorXd::Zero(ly.total());
    std::vector<lp::Sense> senses(static_cast<std::size_t>(rows), lp::Sense::Eq);

    c(ly.t()) = 1.0;
    for (Eigen::Index i = 0; i < ly.m; ++i)
        if (pt.inputs(i) > 0.0) c(ly.in_slack(i)) = -1.0 / (static_cast<double>(m_eff) * pt.inputs(i));

    // normalization: t + (1/s_eff) * (sum sg/yg0 + sum sb/yb0) = 1
    Eigen::Index row = 0;
    a(row, ly.t()) = 1.0;
    for (Eigen::Index r = 0; r < ly.s1; ++r)
        if (pt.goods(r) > 0.0) a(row, ly.good_slack(r)) = 1.0 / (static_cast<double>(s_eff) * pt.goods(r));
    for (Eigen::Index r = 0; r < ly.s2; ++r)
        if (pt.bads(r) > 0.0) a(row, ly.bad_slack(r)) = 1.0 / (static_cast<double>(s_eff) * pt.bads(r));
    b(row) = 1.0;
    ++row;

    for (Eigen::Index i = 0; i < ly.m; ++i, ++row) {
        a(row, ly.t()) = -pt.inputs(i);
        a.block(row, ly.lambda(0), 1, ly.n_ref) = ref.inputs.row(i);
        a(row, ly.in_slack(i)) = 1.0;
    }
    for (Eigen::Index r = 0; r < ly.s1; ++r, ++row) {
        a(row, ly.t()) = -pt.goods(r);
        a.block(row, ly.lambda(0), 1, ly.n_ref) = ref.goods.row(r);
        a(row, ly.good_slack(r)) = -1.0;
    }
    for (Eigen::Index r = 0; r < ly.s2; ++r, ++row) {
        a(row, ly.t()) = -pt.bads(r);
        a.block(row, ly.lambda(0), 1, ly.n_ref) = ref.bads.row(r);
        a(row, ly.bad_slack(r)) = 1.0;
    }
    if (ref.rts == Rts::Vrs) {
        a(row, ly.t()) = -1.0;
        a.block(row, ly.lambda(0), 1, ly.n_ref).setOnes();
    }

    return lp::StandardFormLp::make(std::move(c), std::move(a), std::move(b), std::move(senses));
}

// Variable layout for the super-efficiency LP:
// [t | lambda (n_ref) | xbar (m) | ygbar (s1) | ybbar (s2)].
struct SuperLayout {
    Eigen::Index n_ref, m, s1, s2;
    Eigen::Index t() const { return 0; }
    Eigen::Index lambda(Eigen::Index j) const { return 1 + j; }
    Eigen::Index xbar(Eigen::Index i) const { return 1 + n_ref + i; }
    Eigen::Index gbar(Eigen::Index r) const { return 1 + n_ref + m + r; }
    Eigen::Index bbar(Eigen::Index r) const { return 1 + n_ref + m + s1 + r; }
    Eigen::Index total() const { return 1 + n_ref + m + s1 + s2; }
};

lp::StandardFormLp build_super_lp(const DeaInstance& ref, const ExternalPoint& pt,
                                  BadConvention convention) {
    SuperLayout ly{static_cast<Eigen::Index>(ref.num_dmus()), static_cast<Eigen::Index>(ref.num_inputs()),
                   static_cast<Eigen::Index>(ref.num_goods()), static_cast<Eigen::Index>(ref.num_bads())};

    Eigen::Index num_in_terms = 0;  // terms on the input side of the ratio
    for (Eigen::Index i = 0; i < ly.m; ++i)
        if (pt.inputs(i) > 0.0) ++num_in_terms;
    Eigen::Index good_terms = 0;
    for (Eigen::Index r = 0; r < ly.s1; ++r)
        if (pt.goods(r) > 0.0) ++good_terms;
    Eigen::Index bad_terms = 0;
    for (Eigen::Index r = 0; r < ly.s2; ++r)
        if (pt.bads(r) > 0.0) ++bad_terms;
    require(num_in_terms > 0, "every input of the evaluated DMU is zero");
    require(good_terms > 0, "every good output of the evaluated DMU is zero");

    const bool bad_as_input = convention == BadConvention::BadAsInput;
    const Eigen::Index num_terms_numer = bad_as_input ? num_in_terms + bad_terms : num_in_terms;
    const Eigen::Index num_terms_denom = bad_as_input ? good_terms : good_terms + bad_terms;

    const Eigen::Index cap_rows = bad_as_input ? 0 : ly.s2;
    const Eigen::Index rows = 1 + 2 * (ly.m + ly.s1 + ly.s2) + cap_rows + (ref.rts == Rts::Vrs ? 1 : 0);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(rows, ly.total());
    Eigen::VectorXd b = Eigen::VectorXd::Zero(rows);
    Eigen::VectorXd c = Eigen::VectorXd::Zero(ly.total());
    std::vector<lp::Sense> senses(static_cast<std::size_t>(rows), lp::Sense::Le);

    for (Eigen::Index i = 0; i < ly.m; ++i)
        if (pt.inputs(i) > 0.0) c(ly.xbar(i)) = 1.0 / (static_cast<double>(num_terms_numer) * pt.inputs(i));
    if (bad_as_input)
        for (Eigen::Index r = 0; r < ly.s2; ++r)
            if (pt.bads(r) > 0.0) c(ly.bbar(r)) = 1.0 / (static_cast<double>(num_terms_numer) * pt.bads(r));

    Eigen::Index row = 0;
    // normalization over the denominator terms = 1
    senses[static_cast<std::size_t>(row)] = lp::Sense::Eq;
    for (Eigen::Index r = 0; r < ly.s1; ++r)
        if (pt.goods(r) > 0.0) a(row, ly.gbar(r)) = 1.0 / (static_cast<double>(num_terms_denom) * pt.goods(r));
    if (!bad_as_input)
        for (Eigen::Index r = 0; r < ly.s2; ++r)
            if (pt.bads(r) > 0.0) a(row, ly.bbar(r)) = 1.0 / (static_cast<double>(num_terms_denom) * pt.bads(r));
    b(row) = 1.0;
    ++row;

    // production-set side: X lambda <= xbar, Yb lambda <= ybbar, ygbar <= Yg lambda
    for (Eigen::Index i = 0; i < ly.m; ++i, ++row) {
        a.block(row, ly.lambda(0), 1, ly.n_ref) = ref.inputs.row(i);
        a(row, ly.xbar(i)) = -1.0;
    }
    for (Eigen::Index r = 0; r < ly.s2; ++r, ++row) {
        a.block(row, ly.lambda(0), 1, ly.n_ref) = ref.bads.row(r);
        a(row, ly.bbar(r)) = -1.0;
    }
    for (Eigen::Index r = 0; r < ly.s1; ++r, ++row) {
        a(row, ly.gbar(r)) = 1.0;
        a.block(row, ly.lambda(0), 1, ly.n_ref) = -ref.goods.row(r);
    }
    // dominance side: xbar >= t*x0, ybbar >= t*yb0, ygbar <= t*yg0
    for (Eigen::Index i = 0; i < ly.m; ++i, ++row) {
        a(row, ly.t()) = pt.inputs(i);
        a(row, ly.xbar(i)) = -1.0;
    }
    for (Eigen::Index r = 0; r < ly.s2; ++r, ++row) {
        a(row, ly.t()) = pt.bads(r);
        a(row, ly.bbar(r)) = -1.0;
    }
    for (Eigen::Index r = 0; r < ly.s1; ++r, ++row) {
        a(row, ly.gbar(r)) = 1.0;
        a(row, ly.t()) = -pt.goods(r);
    }
    if (!bad_as_input) {
        // keep the printed objective bounded: ybbar_r <= t * max observed bad r
        for (Eigen::Index r = 0; r < ly.s2; ++r, ++row) {
            double cap = pt.bads(r);
            if (ly.n_ref > 0) cap = std::max(cap, ref.bads.row(r).maxCoeff());
            a(row, ly.bbar(r)) = 1.0;
            a(row, ly.t()) = -cap;
        }
    }
    if (ref.rts == Rts::Vrs) {
        senses[static_cast<std::size_t>(row)] = lp::Sense::Eq;
        a(row, ly.t()) = -1.0;
        a.block(row, ly.lambda(0), 1, ly.n_ref).setOnes();
    }

    return lp::StandardFormLp::make(std::move(c), std::move(a), std::move(b), std::move(senses));
}

bool slacks_negligible(const SbmSolution& s, const ExternalPoint& pt) {
    for (Eigen::Index i = 0; i < s.input_slacks.size(); ++i)
        if (s.input_slacks(i) > kSlackRelTol * std::max(pt.inputs(i), 1e-300)) return false;
    for (Eigen::Index r = 0; r < s.good_slacks.size(); ++r)
        if (s.good_slacks(r) > kSlackRelTol * std::max(pt.goods(r), 1e-300)) return false;
    for (Eigen::Index r = 0; r < s.bad_slacks.size(); ++r)
        if (s.bad_slacks(r) > kSlackRelTol * std::max(pt.bads(r), 1e-300)) return false;
    return true;
}

}  // namespace

void DeaInstance::validate() const {
    const auto n = static_cast<Eigen::Index>(dmu_ids.size());
    require(n >= 1, "instance needs at least one DMU");
    require(inputs.cols() == n && goods.cols() == n && bads.cols() == n,
            "matrix column counts must equal the DMU count");
    require(inputs.rows() >= 1, "instance needs at least one input");
    require(goods.rows() >= 1, "instance needs at least one good output");
    require(static_cast<std::size_t>(inputs.rows()) == input_names.size() &&
                static_cast<std::size_t>(goods.rows()) == good_names.size() &&
                static_cast<std::size_t>(bads.rows()) == bad_names.size(),
            "variable name lists must match matrix rows");

    std::vector<std::string> all = input_names;
    all.insert(all.end(), good_names.begin(), good_names.end());
    all.insert(all.end(), bad_names.begin(), bad_names.end());
    std::sort(all.begin(), all.end());
    require(std::adjacent_find(all.begin(), all.end()) == all.end(), "variable names must be unique");

    const double floor = allow_zero ? 0.0 : std::numeric_limits<double>::min();
    auto check = [&](const Eigen::MatrixXd& mat, const char* what) {
        if (mat.size() > 0 && mat.minCoeff() < floor)
            throw std::invalid_argument(std::string("dea: ") + what +
                                        (allow_zero ? " contains negative entries"
                                                    : " contains nonpositive entries; run a zero policy first"));
    };
    check(inputs, "input matrix");
    check(goods, "good-output matrix");
    check(bads, "bad-output matrix");
}

lp::StandardFormLp linearize_sbm(const DeaInstance& instance, std::size_t dmu_index) {
    instance.validate();
    require(dmu_index < instance.num_dmus(), "dmu index out of range");
    return build_sbm_lp(instance, point_of(instance, dmu_index));
}

namespace {

std::optional<SbmSolution> solve_sbm(const DeaInstance& ref, const ExternalPoint& pt,
                                     const lp::SolverSettings& settings) {
    const auto lp_problem = build_sbm_lp(ref, pt);
    const auto sol = lp::solve_lp(lp_problem, settings);
    if (sol.status == lp::LpStatus::Infeasible) return std::nullopt;
    if (sol.status != lp::LpStatus::Optimal)
        throw std::runtime_error("dea: stage-1 LP terminated " +
                                 std::string(sol.status == lp::LpStatus::Unbounded ? "unbounded" : "abnormally"));

    SbmLayout ly{static_cast<Eigen::Index>(ref.num_dmus()), static_cast<Eigen::Index>(ref.num_inputs()),
                 static_cast<Eigen::Index>(ref.num_goods()), static_cast<Eigen::Index>(ref.num_bads())};
    const double t = sol.primal(ly.t());
    if (t < 1e-10) throw std::runtime_error("dea: degenerate normalization in stage-1 recovery");

    SbmSolution out;
    out.rho = sol.value;
    out.lambda = sol.primal.segment(ly.lambda(0), ly.n_ref) / t;
    out.input_slacks = sol.primal.segment(ly.in_slack(0), ly.m) / t;
    out.good_slacks = ly.s1 > 0 ? sol.primal.segment(ly.good_slack(0), ly.s1) / t : Eigen::VectorXd(0);
    out.bad_slacks = ly.s2 > 0 ? sol.primal.segment(ly.bad_slack(0), ly.s2) / t : Eigen::VectorXd(0);
    out.efficient = out.rho >= 1.0 - kEfficiencyTol && slacks_negligible(out, pt);
    return out;
}

SuperSolution solve_super(const DeaInstance& ref, const ExternalPoint& pt,
                          BadConvention convention, const lp::SolverSettings& settings) {
    SuperSolution out;
    if (ref.num_dmus() == 0) return out;  // empty reference set: Infeasible

    const auto lp_problem = build_super_lp(ref, pt, convention);
    const auto sol = lp::solve_lp(lp_problem, settings);
    if (sol.status == lp::LpStatus::Infeasible) return out;
    if (sol.status != lp::LpStatus::Optimal)
        throw std::runtime_error("dea: super-efficiency LP terminated abnormally");

    SuperLayout ly{static_cast<Eigen::Index>(ref.num_dmus()), static_cast<Eigen::Index>(ref.num_inputs()),
                   static_cast<Eigen::Index>(ref.num_goods()), static_cast<Eigen::Index>(ref.num_bads())};
    const double t = sol.primal(ly.t());
    if (t < 1e-10) throw std::runtime_error("dea: degenerate normalization in super recovery");

    out.status = SuperSolution::Status::Feasible;
    out.delta = sol.value;
    out.lambda = sol.primal.segment(ly.lambda(0), ly.n_ref) / t;
    out.projected_inputs = sol.primal.segment(ly.xbar(0), ly.m) / t;
    out.projected_goods = ly.s1 > 0 ? sol.primal.segment(ly.gbar(0), ly.s1) / t : Eigen::VectorXd(0);
    out.projected_bads = ly.s2 > 0 ? sol.primal.segment(ly.bbar(0), ly.s2) / t : Eigen::VectorXd(0);
    return out;
}

}  // namespace

SbmSolution sbm_score(const DeaInstance& instance, std::size_t dmu_index,
                      const lp::SolverSettings& settings) {
    instance.validate();
    require(dmu_index < instance.num_dmus(), "dmu index out of range");
    auto sol = solve_sbm(instance, point_of(instance, dmu_index), settings);
    if (!sol)
        // lambda = e_0 is always feasible when the DMU is in its own reference set
        throw std::runtime_error("dea: stage-1 LP infeasible for a member DMU; solver invariant violated");
    return *sol;
}

DeaInstance exclude_dmu(const DeaInstance& instance, std::size_t dmu_index) {
    require(dmu_index < instance.num_dmus(), "dmu index out of range");
    DeaInstance out = instance;
    const auto n = static_cast<Eigen::Index>(instance.num_dmus());
    const auto cut = static_cast<Eigen::Index>(dmu_index);
    out.dmu_ids.erase(out.dmu_ids.begin() + cut);
    auto drop_col = [&](const Eigen::MatrixXd& mat) {
        Eigen::MatrixXd r(mat.rows(), n - 1);
        r.leftCols(cut) = mat.leftCols(cut);
        r.rightCols(n - 1 - cut) = mat.rightCols(n - 1 - cut);
        return r;
    };
    out.inputs = drop_col(instance.inputs);
    out.goods = drop_col(instance.goods);
    out.bads = drop_col(instance.bads);
    return out;
}

SuperSolution super_sbm_score(const DeaInstance& instance, std::size_t dmu_index,
                              BadConvention convention, const lp::SolverSettings& settings) {
    instance.validate();
    require(dmu_index < instance.num_dmus(), "dmu index out of range");
    if (instance.num_dmus() < 2)
        throw std::invalid_argument("dea: no reference set; super-efficiency needs at least two DMUs");
    return solve_super(exclude_dmu(instance, dmu_index), point_of(instance, dmu_index), convention,
                       settings);
}

std::optional<SbmSolution> sbm_score_against(const DeaInstance& reference, const ExternalPoint& point,
                                             const lp::SolverSettings& settings) {
    reference.validate();
    require(point.inputs.size() == reference.inputs.rows() &&
                point.goods.size() == reference.goods.rows() &&
                point.bads.size() == reference.bads.rows(),
            "point variables do not match the reference instance");
    return solve_sbm(reference, point, settings);
}

SuperSolution super_score_against(const DeaInstance& reference, const ExternalPoint& point,
                                  BadConvention convention, const lp::SolverSettings& settings) {
    reference.validate();
    require(point.inputs.size() == reference.inputs.rows() &&
                point.goods.size() == reference.goods.rows() &&
                point.bads.size() == reference.bads.rows(),
            "point variables do not match the reference instance");
    return solve_super(reference, point, convention, settings);
}

namespace {

double safe_share(double slack, double observed) {
    return observed > 0.0 ? slack / observed : 0.0;
}

void fill_stage1_slacks(EfficiencyRecord& rec, const DeaInstance& inst, const SbmSolution& sol) {
    for (std::size_t i = 0; i < inst.input_names.size(); ++i)
        rec.slacks[inst.input_names[i]] = sol.input_slacks(static_cast<Eigen::Index>(i));
    for (std::size_t r = 0; r < inst.good_names.size(); ++r)
        rec.slacks[inst.good_names[r]] = sol.good_slacks(static_cast<Eigen::Index>(r));
    for (std::size_t r = 0; r < inst.bad_names.size(); ++r)
        rec.slacks[inst.bad_names[r]] = sol.bad_slacks(static_cast<Eigen::Index>(r));
}

void fill_super_slacks(EfficiencyRecord& rec, const DeaInstance& inst, std::size_t dmu,
                       const SuperSolution& sol) {
    const auto j = static_cast<Eigen::Index>(dmu);
    for (std::size_t i = 0; i < inst.input_names.size(); ++i) {
        const auto k = static_cast<Eigen::Index>(i);
        rec.slacks[inst.input_names[i]] = std::max(sol.projected_inputs(k) - inst.inputs(k, j), 0.0);
    }
    for (std::size_t r = 0; r < inst.good_names.size(); ++r) {
        const auto k = static_cast<Eigen::Index>(r);
        rec.slacks[inst.good_names[r]] = std::max(inst.goods(k, j) - sol.projected_goods(k), 0.0);
    }
    for (std::size_t r = 0; r < inst.bad_names.size(); ++r) {
        const auto k = static_cast<Eigen::Index>(r);
        rec.slacks[inst.bad_names[r]] = std::max(sol.projected_bads(k) - inst.bads(k, j), 0.0);
    }
}

void fill_zero_slacks(EfficiencyRecord& rec, const DeaInstance& inst) {
    for (const auto& name : inst.input_names) rec.slacks[name] = 0.0;
    for (const auto& name : inst.good_names) rec.slacks[name] = 0.0;
    for (const auto& name : inst.bad_names) rec.slacks[name] = 0.0;
}

}  // namespace

EfficiencyRecord two_stage_se(const DeaInstance& instance, std::size_t dmu_index,
                              BadConvention convention, const lp::SolverSettings& settings) {
    const auto stage1 = sbm_score(instance, dmu_index, settings);
    const auto j = static_cast<Eigen::Index>(dmu_index);
    const double m = static_cast<double>(instance.num_inputs());
    const double k = static_cast<double>(instance.num_bads());

    EfficiencyRecord rec;
    rec.dmu_id = instance.dmu_ids[dmu_index];
    rec.year = instance.period;
    rec.rho = stage1.rho;

    if (!stage1.efficient) {
        double in_term = 0.0;
        for (Eigen::Index i = 0; i < stage1.input_slacks.size(); ++i)
            in_term += safe_share(stage1.input_slacks(i), instance.inputs(i, j));
        double bad_term = 0.0;
        for (Eigen::Index r = 0; r < stage1.bad_slacks.size(); ++r)
            bad_term += safe_share(stage1.bad_slacks(r), instance.bads(r, j));
        rec.se = 1.0 - in_term / m - (k > 0 ? bad_term / k : 0.0);
        rec.status = DmuStatus::Inefficient;
        fill_stage1_slacks(rec, instance, stage1);
    } else if (instance.num_dmus() < 2) {
        rec.se = 1.0;
        rec.status = DmuStatus::FrontierInfeasible;
        fill_zero_slacks(rec, instance);
    } else {
        const auto super = super_sbm_score(instance, dmu_index, convention, settings);
        if (super.status == SuperSolution::Status::Infeasible) {
            rec.se = 1.0;
            rec.status = DmuStatus::FrontierInfeasible;
            fill_zero_slacks(rec, instance);
        } else {
            double in_term = 0.0;
            for (Eigen::Index i = 0; i < super.projected_inputs.size(); ++i)
                in_term += safe_share(std::max(super.projected_inputs(i) - instance.inputs(i, j), 0.0),
                                      instance.inputs(i, j));
            double bad_term = 0.0;
            for (Eigen::Index r = 0; r < super.projected_bads.size(); ++r)
                bad_term += safe_share(std::max(super.projected_bads(r) - instance.bads(r, j), 0.0),
                                       instance.bads(r, j));
            rec.se = 1.0 + in_term / m + (k > 0 ? bad_term / k : 0.0);
            rec.delta = super.delta;
            rec.status = DmuStatus::SuperEfficient;
            fill_super_slacks(rec, instance, dmu_index, super);
        }
    }
    rec.shares = inefficiency_decomposition(rec, instance);
    return rec;
}

std::map<std::string, double> inefficiency_decomposition(const EfficiencyRecord& record,
                                                         const DeaInstance& instance) {
    const auto it = std::find(instance.dmu_ids.begin(), instance.dmu_ids.end(), record.dmu_id);
    require(it != instance.dmu_ids.end(), "record DMU not present in the instance");
    const auto j = static_cast<Eigen::Index>(it - instance.dmu_ids.begin());

    auto observed = [&](const std::string& name) -> double {
        for (std::size_t i = 0; i < instance.input_names.size(); ++i)
            if (instance.input_names[i] == name) return instance.inputs(static_cast<Eigen::Index>(i), j);
        for (std::size_t r = 0; r < instance.good_names.size(); ++r)
            if (instance.good_names[r] == name) return instance.goods(static_cast<Eigen::Index>(r), j);
        for (std::size_t r = 0; r < instance.bad_names.size(); ++r)
            if (instance.bad_names[r] == name) return instance.bads(static_cast<Eigen::Index>(r), j);
        throw std::invalid_argument("dea: unknown variable " + name);
    };

    std::map<std::string, double> shares;
    for (const auto& [name, slack] : record.slacks)
        shares[name + "_slack"] = safe_share(slack, observed(name));
    return shares;
}

std::vector<EfficiencyRecord> score_all(const DeaInstance& instance, BadConvention convention,
                                        const lp::SolverSettings& settings) {
    instance.validate();
    std::vector<EfficiencyRecord> records;
    records.reserve(instance.num_dmus());
    std::ostringstream failures;
    bool failed = false;
    for (std::size_t k = 0; k < instance.num_dmus(); ++k) {
        try {
            records.push_back(two_stage_se(instance, k, convention, settings));
        } catch (const std::exception& e) {
            if (failed) failures << "; ";
            failed = true;
            failures << "dmu " << instance.dmu_ids[k] << ": " << e.what();
        }
    }
    if (failed) throw std::runtime_error("dea: score_all failed for " + failures.str());
    return records;
}

double ratio_score(const EfficiencyRecord& record) {
    switch (record.status) {
        case DmuStatus::Inefficient: return record.rho;
        case DmuStatus::SuperEfficient: return record.delta.value_or(1.0);
        case DmuStatus::FrontierInfeasible: return 1.0;
    }
    return 1.0;
}

}  // namespace frontier::dea
