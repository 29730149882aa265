#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

#include "frontier/panel.hpp"

namespace frontier::stats {

// --- distribution CDFs -----------------------------------------------------

double normal_cdf(double z);
double student_t_cdf(double t, double df);
double chi_squared_cdf(double x, double df);

// --- descriptives ----------------------------------------------------------

struct Descriptives {
    std::size_t count = 0;
    double mean = 0.0;
    double sd = 0.0;  // sample standard deviation
    double min = 0.0;
    double p25 = 0.0;
    double p50 = 0.0;
    double p75 = 0.0;
    double max = 0.0;
    bool empty = true;
};

/// Missing values (NaN) are skipped; quantiles interpolate linearly between
/// order statistics.
Descriptives describe(std::span<const double> values);

/// Linear-interpolation quantile of already-sorted data, p in [0, 1].
double quantile_sorted(std::span<const double> sorted, double p);

// --- two-sample tests ------------------------------------------------------

enum class Tail { Less, Greater, TwoSided };

struct TestResult {
    double statistic = 0.0;
    std::string null_hypothesis;
    std::string alternative_hypothesis;
    Tail tail = Tail::TwoSided;
    double p_value = 1.0;
    std::size_t n1 = 0;
    std::size_t n2 = 0;
    bool degenerate = false;  // all-tied rank sums, zero-variance t inputs
};

/// Wilcoxon-Mann-Whitney. The statistic is the rank sum of group A with
/// midranks for ties; the p-value uses the normal approximation with tie and
/// continuity corrections. Tail::Less tests the alternative "A below B".
TestResult rank_sum_test(std::span<const double> group_a, std::span<const double> group_b, Tail tail);

/// Welch two-sample t test with Welch-Satterthwaite degrees of freedom.
TestResult t_test(std::span<const double> group_a, std::span<const double> group_b, Tail tail);

// --- correlation -----------------------------------------------------------

struct NamedSeries {
    std::string name;
    std::vector<double> values;  // NaN = missing
};

struct CorrelationMatrix {
    std::vector<std::string> names;
    Eigen::MatrixXd r;               // symmetric, unit diagonal
    Eigen::MatrixXi pair_counts;     // complete pairs behind each coefficient
};

/// Pearson coefficients with pairwise-complete handling; series must share a
/// common index (same length).
CorrelationMatrix correlogram(const std::vector<NamedSeries>& series);

// --- kernel density ----------------------------------------------------------

struct DensityCurve {
    std::vector<double> grid;
    std::vector<double> density;
    double bandwidth = 0.0;
};

/// Gaussian KDE with the Silverman bandwidth on a 512-point grid spanning the
/// data range plus three bandwidths on each side.
DensityCurve gaussian_density(std::span<const double> values, std::size_t grid_points = 512);

}  // namespace frontier::stats
