#include "frontier/malmquist.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace frontier::malmquist {

using dea::DeaInstance;
using dea::ExternalPoint;

DistanceScore cross_period_score(const DeaInstance& frontier, const ExternalPoint& point,
                                 dea::BadConvention convention,
                                 std::optional<std::size_t> member_index,
                                 const lp::SolverSettings& settings) {
    const DeaInstance reference =
        member_index ? dea::exclude_dmu(frontier, *member_index) : frontier;

    DistanceScore out;
    if (reference.num_dmus() == 0) {
        // the excluded DMU was alone on its frontier
        out.value = 1.0;
        out.frontier_infeasible = true;
        return out;
    }

    const auto stage1 = dea::sbm_score_against(reference, point, settings);
    if (stage1 && !stage1->efficient) {
        out.value = stage1->rho;
        return out;
    }

    // on the frontier boundary or outside the production set
    const auto super = dea::super_score_against(reference, point, convention, settings);
    if (super.status == dea::SuperSolution::Status::Feasible) {
        out.value = super.delta;
    } else {
        out.value = 1.0;
        out.frontier_infeasible = true;
    }
    return out;
}

namespace {

ExternalPoint point_from_instance(const DeaInstance& inst, std::size_t j) {
    const auto c = static_cast<Eigen::Index>(j);
    return {inst.inputs.col(c), inst.goods.col(c), inst.bads.col(c)};
}

std::optional<double> ratio(const DistanceScore& num, const DistanceScore& den) {
    if (!num.value || !den.value || *den.value <= 0.0) return std::nullopt;
    return *num.value / *den.value;
}

}  // namespace

std::vector<MalmquistRecord> malmquist_decompose(const data::Panel& panel, const data::ModelSpec& spec,
                                                 int year1, int year2, const data::ZeroPolicy& policy,
                                                 dea::BadConvention convention) {
    const auto build1 = data::build_instance(panel, year1, spec, policy);
    const auto build2 = data::build_instance(panel, year2, spec, policy);
    const DeaInstance& inst1 = build1.instance;
    const DeaInstance& inst2 = build2.instance;

    std::vector<MalmquistRecord> records;
    for (std::size_t j1 = 0; j1 < inst1.num_dmus(); ++j1) {
        const auto& id = inst1.dmu_ids[j1];
        const auto it = std::find(inst2.dmu_ids.begin(), inst2.dmu_ids.end(), id);
        if (it == inst2.dmu_ids.end()) continue;
        const auto j2 = static_cast<std::size_t>(it - inst2.dmu_ids.begin());

        MalmquistRecord rec;
        rec.dmu_id = id;
        rec.year1 = year1;
        rec.year2 = year2;

        const auto p1 = point_from_instance(inst1, j1);
        const auto p2 = point_from_instance(inst2, j2);
        rec.d11 = cross_period_score(inst1, p1, convention, j1);
        rec.d12 = cross_period_score(inst1, p2, convention);
        rec.d21 = cross_period_score(inst2, p1, convention);
        rec.d22 = cross_period_score(inst2, p2, convention);

        rec.catch_up = ratio(rec.d22, rec.d11);
        const auto own = ratio(rec.d11, rec.d21);
        const auto other = ratio(rec.d12, rec.d22);
        if (own && other && *own > 0.0 && *other > 0.0)
            rec.frontier_shift = std::sqrt(*own * *other);
        if (rec.catch_up && rec.frontier_shift) rec.mi = *rec.catch_up * *rec.frontier_shift;

        const bool all_scored = rec.d11.value && rec.d12.value && rec.d21.value && rec.d22.value;
        const bool all_positive = all_scored && *rec.d11.value > 0.0 && *rec.d12.value > 0.0 &&
                                  *rec.d21.value > 0.0 && *rec.d22.value > 0.0;
        rec.validity = all_positive && rec.mi ? RecordValidity::Complete
                                              : RecordValidity::PartialInfeasible;
        records.push_back(std::move(rec));
    }
    if (records.empty())
        throw std::invalid_argument("malmquist: no common DMUs between years " +
                                    std::to_string(year1) + " and " + std::to_string(year2));
    return records;
}

std::vector<YearPairSummary> frontier_shift_series(const data::Panel& panel, const data::ModelSpec& spec,
                                                   const data::ZeroPolicy& policy,
                                                   dea::BadConvention convention) {
    const auto years = panel.distinct_years();
    if (years.size() < 2)
        throw std::invalid_argument("malmquist: frontier-shift series needs at least two years");

    std::vector<YearPairSummary> series;
    for (std::size_t k = 0; k + 1 < years.size(); ++k) {
        YearPairSummary s;
        s.year1 = years[k];
        s.year2 = years[k + 1];
        const auto records = malmquist_decompose(panel, spec, s.year1, s.year2, policy, convention);

        double log_f = 0.0, log_mi = 0.0, log_c = 0.0, sum_f = 0.0, sum_mi = 0.0;
        for (const auto& rec : records) {
            if (rec.validity != RecordValidity::Complete) {
                ++s.excluded_count;
                continue;
            }
            ++s.complete_count;
            log_f += std::log(*rec.frontier_shift);
            log_mi += std::log(*rec.mi);
            log_c += std::log(*rec.catch_up);
            sum_f += *rec.frontier_shift;
            sum_mi += *rec.mi;
        }
        if (s.complete_count > 0) {
            const double n = static_cast<double>(s.complete_count);
            s.frontier_shift_geomean = std::exp(log_f / n);
            s.mi_geomean = std::exp(log_mi / n);
            s.catch_up_geomean = std::exp(log_c / n);
            s.frontier_shift_mean = sum_f / n;
            s.mi_mean = sum_mi / n;
        }
        series.push_back(s);
    }
    return series;
}

}  // namespace frontier::malmquist
