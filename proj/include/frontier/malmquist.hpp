#pragma once

#include <optional>
#include <string>
#include <vector>

#include "frontier/dea.hpp"
#include "frontier/model_spec.hpp"
#include "frontier/panel.hpp"

namespace frontier::malmquist {

/// One two-stage distance value. A frontier-infeasible evaluation still
/// scores 1 (and is flagged); value is absent only when the super stage
/// itself has no feasible program.
struct DistanceScore {
    std::optional<double> value;
    bool frontier_infeasible = false;
};

enum class RecordValidity { Complete, PartialInfeasible };

struct MalmquistRecord {
    std::string dmu_id;
    int year1 = 0;
    int year2 = 0;
    DistanceScore d11;  // period-1 frontier, period-1 point
    DistanceScore d12;  // period-1 frontier, period-2 point
    DistanceScore d21;  // period-2 frontier, period-1 point
    DistanceScore d22;  // period-2 frontier, period-2 point
    std::optional<double> catch_up;        // C = d22 / d11
    std::optional<double> frontier_shift;  // F = sqrt((d11/d21) * (d12/d22))
    std::optional<double> mi;              // MI = C * F
    RecordValidity validity = RecordValidity::PartialInfeasible;
};

/// Two-stage ratio score of a point against a frontier instance. When the
/// point is drawn from the frontier period, pass its index so it is excluded
/// from its own reference set.
DistanceScore cross_period_score(const dea::DeaInstance& frontier, const dea::ExternalPoint& point,
                                 dea::BadConvention convention = dea::BadConvention::BadAsInput,
                                 std::optional<std::size_t> member_index = std::nullopt,
                                 const lp::SolverSettings& settings = {});

/// MI = C * F records for every DMU present in both years of the pair.
/// Throws when a year is absent or no DMU is common to both.
std::vector<MalmquistRecord> malmquist_decompose(const data::Panel& panel, const data::ModelSpec& spec,
                                                 int year1, int year2,
                                                 const data::ZeroPolicy& policy = {},
                                                 dea::BadConvention convention = dea::BadConvention::BadAsInput);

struct YearPairSummary {
    int year1 = 0;
    int year2 = 0;
    std::optional<double> frontier_shift_geomean;
    std::optional<double> mi_geomean;
    std::optional<double> catch_up_geomean;
    std::optional<double> frontier_shift_mean;  // arithmetic, for comparison
    std::optional<double> mi_mean;
    std::size_t complete_count = 0;
    std::size_t excluded_count = 0;  // PartialInfeasible records
};

/// Geometric means of F and MI over Complete records for each consecutive
/// year pair of the panel. Pairs with zero Complete records carry empty
/// means rather than fabricated values.
std::vector<YearPairSummary> frontier_shift_series(const data::Panel& panel, const data::ModelSpec& spec,
                                                   const data::ZeroPolicy& policy = {},
                                                   dea::BadConvention convention = dea::BadConvention::BadAsInput);

}  // namespace frontier::malmquist
