#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "frontier/lp.hpp"

namespace frontier::dea {

enum class Rts { Vrs, Crs };

/// How undesirable outputs enter the super-efficiency objective. The printed
/// form of the model puts their ratios in the denominator, which leaves the
/// program unbounded; BadAsInput moves them next to the inputs instead and is
/// the default. Literal keeps the printed objective and caps each bad-output
/// variable at the largest value observed for it.
enum class BadConvention { BadAsInput, Literal };

enum class DmuStatus { Inefficient, SuperEfficient, FrontierInfeasible };

/// A DMU is treated as efficient when rho >= 1 - kEfficiencyTol and every
/// slack is below kSlackRelTol relative to its observed value.
inline constexpr double kEfficiencyTol = 1e-6;
inline constexpr double kSlackRelTol = 1e-7;

/// One period's technology: columns are DMUs, rows are variables.
struct DeaInstance {
    std::vector<std::string> dmu_ids;
    Eigen::MatrixXd inputs;  // m x n
    Eigen::MatrixXd goods;   // s1 x n
    Eigen::MatrixXd bads;    // s2 x n, s2 may be 0
    Rts rts = Rts::Vrs;
    std::vector<std::string> input_names;
    std::vector<std::string> good_names;
    std::vector<std::string> bad_names;
    int period = 0;           // year label propagated into records
    bool allow_zero = false;  // set by the drop-term zero policy

    std::size_t num_dmus() const { return dmu_ids.size(); }
    std::size_t num_inputs() const { return static_cast<std::size_t>(inputs.rows()); }
    std::size_t num_goods() const { return static_cast<std::size_t>(goods.rows()); }
    std::size_t num_bads() const { return static_cast<std::size_t>(bads.rows()); }

    /// Throws std::invalid_argument when shapes, names or signs are off.
    void validate() const;
};

/// A single observation evaluated against some reference technology; variable
/// order must match the reference instance.
struct ExternalPoint {
    Eigen::VectorXd inputs;
    Eigen::VectorXd goods;
    Eigen::VectorXd bads;
};

struct SbmSolution {
    double rho = 1.0;
    Eigen::VectorXd input_slacks;
    Eigen::VectorXd good_slacks;
    Eigen::VectorXd bad_slacks;
    Eigen::VectorXd lambda;  // over the reference set
    bool efficient = false;
};

struct SuperSolution {
    enum class Status { Feasible, Infeasible };
    Status status = Status::Infeasible;
    double delta = 1.0;
    Eigen::VectorXd projected_inputs;
    Eigen::VectorXd projected_goods;
    Eigen::VectorXd projected_bads;
    Eigen::VectorXd lambda;  // over the reference set (DMU under test excluded)
};

struct EfficiencyRecord {
    std::string dmu_id;
    int year = 0;
    double rho = 1.0;                 // stage-1 objective
    double se = 1.0;                  // two-stage combined score
    std::optional<double> delta;      // ratio super score, present when stage 2 ran
    DmuStatus status = DmuStatus::Inefficient;
    std::map<std::string, double> slacks;  // raw slack per variable (stage 1 or super)
    std::map<std::string, double> shares;  // slack / observed value, keys suffixed _slack
};

/// Charnes-Cooper linearization of the stage-1 fractional program for one DMU
/// against the full instance. Variables are (t, t*lambda, t*s-, t*sg, t*sb).
lp::StandardFormLp linearize_sbm(const DeaInstance& instance, std::size_t dmu_index);

SbmSolution sbm_score(const DeaInstance& instance, std::size_t dmu_index,
                      const lp::SolverSettings& settings = {});

SuperSolution super_sbm_score(const DeaInstance& instance, std::size_t dmu_index,
                              BadConvention convention = BadConvention::BadAsInput,
                              const lp::SolverSettings& settings = {});

EfficiencyRecord two_stage_se(const DeaInstance& instance, std::size_t dmu_index,
                              BadConvention convention = BadConvention::BadAsInput,
                              const lp::SolverSettings& settings = {});

/// Per-variable slack shares (slack / observed value) with keys suffixed
/// "_slack"; stage-1 slacks for inefficient DMUs, super slacks otherwise.
std::map<std::string, double> inefficiency_decomposition(const EfficiencyRecord& record,
                                                         const DeaInstance& instance);

std::vector<EfficiencyRecord> score_all(const DeaInstance& instance,
                                        BadConvention convention = BadConvention::BadAsInput,
                                        const lp::SolverSettings& settings = {});

/// The score the two-stage machinery assigns on a ratio scale: rho for
/// inefficient DMUs, delta for super-efficient ones, 1 when the super stage
/// was infeasible. Always positive; this is the Malmquist distance.
double ratio_score(const EfficiencyRecord& record);

/// Copy of the instance with one DMU removed.
DeaInstance exclude_dmu(const DeaInstance& instance, std::size_t dmu_index);

/// Stage-1 evaluation of an arbitrary point against a reference technology.
/// Returns nullopt when the point lies outside the reference production set.
std::optional<SbmSolution> sbm_score_against(const DeaInstance& reference, const ExternalPoint& point,
                                             const lp::SolverSettings& settings = {});

/// Super-SBM evaluation of an arbitrary point against a reference technology
/// that must not contain the point itself.
SuperSolution super_score_against(const DeaInstance& reference, const ExternalPoint& point,
                                  BadConvention convention = BadConvention::BadAsInput,
                                  const lp::SolverSettings& settings = {});

}  // namespace frontier::dea
