#include "frontier/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace frontier::stats {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument("stats: " + msg); }

std::vector<double> drop_missing(std::span<const double> values) {
    std::vector<double> out;
    out.reserve(values.size());
    for (double v : values)
        if (!data::is_missing(v)) out.push_back(v);
    return out;
}

double sample_sd(const std::vector<double>& v, double mean) {
    if (v.size() < 2) return 0.0;
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

// Regularized incomplete gamma P(a, x) by series / continued fraction.
double gammp(double a, double x) {
    if (x < 0.0 || a <= 0.0) fail("gammp domain");
    if (x == 0.0) return 0.0;
    const double gln = std::lgamma(a);
    if (x < a + 1.0) {
        double ap = a, sum = 1.0 / a, del = sum;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::abs(del) < std::abs(sum) * 1e-15) break;
        }
        return sum * std::exp(-x + a * std::log(x) - gln);
    }
    // Lentz continued fraction for Q(a, x)
    const double tiny = 1e-300;
    double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-15) break;
    }
    const double q = std::exp(-x + a * std::log(x) - gln) * h;
    return 1.0 - q;
}

// Regularized incomplete beta I_x(a, b) by Lentz continued fraction.
double betacf(double a, double b, double x) {
    const double tiny = 1e-300;
    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0, d = 1.0 - qab * x / qap;
    if (std::abs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 500; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-15) break;
    }
    return h;
}

double betai(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double front =
        std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x));
    if (x < (a + 1.0) / (a + b + 2.0)) return front * betacf(a, b, x) / a;
    return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

}  // namespace

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double student_t_cdf(double t, double df) {
    if (df <= 0.0) fail("t distribution needs positive degrees of freedom");
    const double p = 0.5 * betai(df / 2.0, 0.5, df / (df + t * t));
    return t >= 0.0 ? 1.0 - p : p;
}

double chi_squared_cdf(double x, double df) {
    if (df <= 0.0) fail("chi-squared distribution needs positive degrees of freedom");
    if (x <= 0.0) return 0.0;
    return gammp(df / 2.0, x / 2.0);
}

double quantile_sorted(std::span<const double> sorted, double p) {
    if (sorted.empty()) fail("quantile of empty data");
    if (sorted.size() == 1) return sorted[0];
    const double h = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

Descriptives describe(std::span<const double> values) {
    Descriptives d;
    auto v = drop_missing(values);
    if (v.empty()) return d;
    std::sort(v.begin(), v.end());

    d.empty = false;
    d.count = v.size();
    d.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    d.sd = sample_sd(v, d.mean);
    d.min = v.front();
    d.max = v.back();
    d.p25 = quantile_sorted(v, 0.25);
    d.p50 = quantile_sorted(v, 0.50);
    d.p75 = quantile_sorted(v, 0.75);
    return d;
}

TestResult rank_sum_test(std::span<const double> group_a, std::span<const double> group_b, Tail tail) {
    const auto a = drop_missing(group_a);
    const auto b = drop_missing(group_b);
    if (a.empty() || b.empty()) fail("rank-sum test needs nonempty groups");

    const std::size_t na = a.size(), nb = b.size(), n = na + nb;
    std::vector<std::pair<double, bool>> pooled;  // value, is_group_a
    pooled.reserve(n);
    for (double v : a) pooled.emplace_back(v, true);
    for (double v : b) pooled.emplace_back(v, false);
    std::sort(pooled.begin(), pooled.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });

    // midranks and the tie correction term sum(t^3 - t)
    double rank_sum_a = 0.0;
    double tie_term = 0.0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && pooled[j + 1].first == pooled[i].first) ++j;
        const double midrank = 0.5 * static_cast<double>(i + 1 + j + 1);
        const double t = static_cast<double>(j - i + 1);
        tie_term += t * t * t - t;
        for (std::size_t k = i; k <= j; ++k)
            if (pooled[k].second) rank_sum_a += midrank;
        i = j + 1;
    }

    TestResult out;
    out.statistic = rank_sum_a;
    out.tail = tail;
    out.n1 = na;
    out.n2 = nb;

    const double dn = static_cast<double>(n);
    const double mean = static_cast<double>(na) * (dn + 1.0) / 2.0;
    const double var = static_cast<double>(na) * static_cast<double>(nb) / 12.0 *
                       ((dn + 1.0) - tie_term / (dn * (dn - 1.0)));
    if (var <= 0.0) {
        // every pooled value identical
        out.degenerate = true;
        out.p_value = tail == Tail::TwoSided ? 1.0 : 0.5;
    } else {
        const double sd = std::sqrt(var);
        const double p_less = normal_cdf((rank_sum_a - mean + 0.5) / sd);
        const double p_greater = 1.0 - normal_cdf((rank_sum_a - mean - 0.5) / sd);
        switch (tail) {
            case Tail::Less: out.p_value = p_less; break;
            case Tail::Greater: out.p_value = p_greater; break;
            case Tail::TwoSided: out.p_value = std::min(1.0, 2.0 * std::min(p_less, p_greater)); break;
        }
    }

    out.null_hypothesis = tail == Tail::Less ? "A >= B" : tail == Tail::Greater ? "A <= B" : "A = B";
    out.alternative_hypothesis = tail == Tail::Less ? "A < B" : tail == Tail::Greater ? "A > B" : "A != B";
    return out;
}

TestResult t_test(std::span<const double> group_a, std::span<const double> group_b, Tail tail) {
    const auto a = drop_missing(group_a);
    const auto b = drop_missing(group_b);
    if (a.size() < 2 || b.size() < 2) fail("t test needs at least two values per group");

    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    const double ma = std::accumulate(a.begin(), a.end(), 0.0) / na;
    const double mb = std::accumulate(b.begin(), b.end(), 0.0) / nb;
    const double sa = sample_sd(a, ma), sb = sample_sd(b, mb);
    const double va = sa * sa / na, vb = sb * sb / nb;

    TestResult out;
    out.tail = tail;
    out.n1 = a.size();
    out.n2 = b.size();
    out.null_hypothesis = tail == Tail::Less ? "A >= B" : tail == Tail::Greater ? "A <= B" : "A = B";
    out.alternative_hypothesis = tail == Tail::Less ? "A < B" : tail == Tail::Greater ? "A > B" : "A != B";

    if (va + vb <= 0.0) {
        out.degenerate = true;
        if (ma == mb) {
            out.statistic = 0.0;
            out.p_value = tail == Tail::TwoSided ? 1.0 : 0.5;
        } else {
            out.statistic = ma > mb ? std::numeric_limits<double>::infinity()
                                    : -std::numeric_limits<double>::infinity();
            const bool favors_alt = (tail == Tail::Less && ma < mb) || (tail == Tail::Greater && ma > mb);
            out.p_value = tail == Tail::TwoSided ? 0.0 : (favors_alt ? 0.0 : 1.0);
        }
        return out;
    }

    const double t = (ma - mb) / std::sqrt(va + vb);
    const double df = (va + vb) * (va + vb) /
                      (va * va / (na - 1.0) + vb * vb / (nb - 1.0));
    out.statistic = t;
    switch (tail) {
        case Tail::Less: out.p_value = student_t_cdf(t, df); break;
        case Tail::Greater: out.p_value = 1.0 - student_t_cdf(t, df); break;
        case Tail::TwoSided: out.p_value = 2.0 * (1.0 - student_t_cdf(std::abs(t), df)); break;
    }
    return out;
}

CorrelationMatrix correlogram(const std::vector<NamedSeries>& series) {
    if (series.size() < 2) fail("correlogram needs at least two series");
    const std::size_t len = series.front().values.size();
    for (const auto& s : series)
        if (s.values.size() != len) fail("correlogram series lengths differ");

    const auto k = static_cast<Eigen::Index>(series.size());
    CorrelationMatrix out;
    out.names.reserve(series.size());
    for (const auto& s : series) out.names.push_back(s.name);
    out.r = Eigen::MatrixXd::Identity(k, k);
    out.pair_counts = Eigen::MatrixXi::Zero(k, k);

    for (Eigen::Index i = 0; i < k; ++i) {
        const auto& x = series[static_cast<std::size_t>(i)].values;
        out.pair_counts(i, i) = static_cast<int>(std::count_if(
            x.begin(), x.end(), [](double v) { return !data::is_missing(v); }));
        for (Eigen::Index j = i + 1; j < k; ++j) {
            const auto& y = series[static_cast<std::size_t>(j)].values;
            double sx = 0, sy = 0;
            int n = 0;
            for (std::size_t r = 0; r < len; ++r) {
                if (data::is_missing(x[r]) || data::is_missing(y[r])) continue;
                sx += x[r];
                sy += y[r];
                ++n;
            }
            if (n < 2) fail("fewer than two complete observations for pair " + out.names[static_cast<std::size_t>(i)] +
                            "/" + out.names[static_cast<std::size_t>(j)]);
            const double mx = sx / n, my = sy / n;
            double cxy = 0, cxx = 0, cyy = 0;
            for (std::size_t r = 0; r < len; ++r) {
                if (data::is_missing(x[r]) || data::is_missing(y[r])) continue;
                cxy += (x[r] - mx) * (y[r] - my);
                cxx += (x[r] - mx) * (x[r] - mx);
                cyy += (y[r] - my) * (y[r] - my);
            }
            const double denom = std::sqrt(cxx * cyy);
            const double r_ij = denom > 0.0 ? cxy / denom : 0.0;
            out.r(i, j) = out.r(j, i) = r_ij;
            out.pair_counts(i, j) = out.pair_counts(j, i) = n;
        }
    }
    return out;
}

DensityCurve gaussian_density(std::span<const double> values, std::size_t grid_points) {
    auto v = drop_missing(values);
    std::sort(v.begin(), v.end());
    if (v.size() < 2 || v.front() == v.back())
        fail("density estimation needs at least two distinct values");

    const double n = static_cast<double>(v.size());
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
    const double sd = sample_sd(v, mean);
    const double iqr = quantile_sorted(v, 0.75) - quantile_sorted(v, 0.25);
    double spread = std::min(sd, iqr / 1.34);
    if (spread <= 0.0) spread = sd;  // IQR can collapse on clustered data
    const double bandwidth = 0.9 * spread * std::pow(n, -0.2);

    DensityCurve curve;
    curve.bandwidth = bandwidth;
    curve.grid.resize(grid_points);
    curve.density.resize(grid_points);
    const double lo = v.front() - 3.0 * bandwidth;
    const double hi = v.back() + 3.0 * bandwidth;
    const double step = (hi - lo) / static_cast<double>(grid_points - 1);
    const double norm = 1.0 / (n * bandwidth * std::sqrt(2.0 * std::numbers::pi));
    for (std::size_t g = 0; g < grid_points; ++g) {
        const double x = lo + step * static_cast<double>(g);
        double sum = 0.0;
        for (double xi : v) {
            const double z = (x - xi) / bandwidth;
            sum += std::exp(-0.5 * z * z);
        }
        curve.grid[g] = x;
        curve.density[g] = norm * sum;
    }
    return curve;
}

}  // namespace frontier::stats
