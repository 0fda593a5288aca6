#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace newsflow::stats {

/// Raised when the data cannot support an estimator: constant series,
/// collinear regressors, degenerate correlation structure.
class StatsError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

[[nodiscard]] double mean(std::span<const double> values);
/// Population variance (denominator T).
[[nodiscard]] double variance(std::span<const double> values);
/// Sample standard deviation (denominator T - 1).
[[nodiscard]] double sample_stddev(std::span<const double> values);

/// Zero mean, unit population variance. Needs T >= 2 and a nonconstant series.
[[nodiscard]] std::vector<double> standardize(std::span<const double> values);

/// Product-moment correlation. Throws StatsError on a constant input and
/// std::invalid_argument on mismatched or too-short inputs.
[[nodiscard]] double pearson(std::span<const double> x, std::span<const double> y);

/// Nearest-rank quantile: the ceil(p * n)-th smallest value (the minimum for p = 0).
/// `sorted` must be ascending and nonempty.
[[nodiscard]] double quantile_nearest_rank(std::span<const double> sorted, double p);

/// Inverse of the standard normal CDF, p in (0, 1).
[[nodiscard]] double normal_quantile(double p);

/// Response y with two regressors sampled on the same T days.
struct AlignedTriple {
    std::vector<double> y;
    std::vector<double> x1;
    std::vector<double> x2;

    [[nodiscard]] std::size_t size() const noexcept { return y.size(); }
    /// Throws std::invalid_argument unless the three series have equal length >= 3.
    void validate() const;
};

/// Pairs up three partially-defined series, dropping every row where any
/// entry is missing.
struct ListwiseAlignment {
    AlignedTriple triple;
    std::size_t dropped = 0;
};

[[nodiscard]] ListwiseAlignment align_listwise(std::span<const std::optional<double>> y,
                                               std::span<const std::optional<double>> x1,
                                               std::span<const std::optional<double>> x2);

/// Pairwise correlations of an aligned triple.
struct Correlations {
    double rho12 = 0.0;
    double rho1y = 0.0;
    double rho2y = 0.0;
};

[[nodiscard]] Correlations correlations(const AlignedTriple& triple);

/// Determinant of the 3x3 correlation matrix of (x1, x2, y).
[[nodiscard]] double correlation_determinant(const Correlations& c) noexcept;

inline constexpr double kCollinearityTolerance = 1e-12;

struct Ols2Fit {
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    /// Unexplained variance fraction |Gamma| / (1 - rho12^2).
    double beta_sq = 0.0;
    Correlations corr;
};

/// Standardized two-regressor least squares y = a1 x1 + a2 x2 + e solved from
/// the pairwise correlations:
///   a1 = (r1y - r2y r12) / (1 - r12^2),  a2 = (r2y - r1y r12) / (1 - r12^2).
/// Throws StatsError when |r12| >= 1 - 1e-12.
[[nodiscard]] Ols2Fit ols2_from_correlations(const Correlations& c);
[[nodiscard]] Ols2Fit ols2_closed_form(const AlignedTriple& triple);

/// Partial correlations rho(y, x1 | x2) and rho(y, x2 | x1).
struct PartialCorrelations {
    double pc1 = 0.0;
    double pc2 = 0.0;
};

[[nodiscard]] PartialCorrelations partial_from_correlations(const Correlations& c);
[[nodiscard]] PartialCorrelations partial_correlations(const AlignedTriple& triple);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    [[nodiscard]] bool contains(double v) const noexcept { return lo <= v && v <= hi; }
    [[nodiscard]] double width() const noexcept { return hi - lo; }
};

struct CoefficientIntervals {
    Interval alpha1;
    Interval alpha2;
};

inline constexpr double kDefaultLevel = 0.90;

/// Coefficient +/- z * SE on the standardized triple, SE taken from
/// s^2 (X'X)^-1 with s^2 = RSS / (T - 2). Needs T > 3.
[[nodiscard]] CoefficientIntervals gaussian_ci(const AlignedTriple& triple,
                                               double level = kDefaultLevel);

inline constexpr std::size_t kMinBootstrapReplicates = 1000;
inline constexpr std::size_t kDefaultBootstrapReplicates = 10000;
inline constexpr int kBootstrapRedrawCap = 100;

/// Pairs bootstrap with percentile intervals. Replicate i draws from
/// Rng(seed + i), so the result does not depend on evaluation order.
/// A resample with a constant series or collinear regressors is redrawn, at
/// most 100 times per replicate before StatsError is raised.
[[nodiscard]] CoefficientIntervals bootstrap_ci(const AlignedTriple& triple, std::size_t replicates,
                                                std::uint64_t seed, double level = kDefaultLevel);

struct AcfPoint {
    std::size_t lag = 0;
    double value = 0.0;
    bool significant = false;
};

/// Sample autocorrelation for lags 0..max_lag; significant means |acf| > 2/sqrt(T).
[[nodiscard]] std::vector<AcfPoint> autocorrelation(std::span<const double> series,
                                                    std::size_t max_lag);

struct NullSummary {
    double mean = 0.0;
    double stddev = 0.0;
};

/// Correlation of x with uniformly shuffled copies of y.
[[nodiscard]] NullSummary permutation_null(std::span<const double> x, std::span<const double> y,
                                           std::size_t n_shuffles, std::uint64_t seed);

struct RegressOptions {
    /// Zero skips the bootstrap; otherwise at least kMinBootstrapReplicates.
    std::size_t bootstrap_replicates = kDefaultBootstrapReplicates;
    std::uint64_t seed = 42;
    double level = kDefaultLevel;
};

struct RegressionReport {
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    double beta_sq = 0.0;
    /// Mean squared residual of the standardized fit; equals beta_sq.
    double residual_variance = 0.0;
    double rho12 = 0.0;
    double rho1y = 0.0;
    double rho2y = 0.0;
    double pc1 = 0.0;
    double pc2 = 0.0;
    Interval ci_gauss_1;
    Interval ci_gauss_2;
    std::optional<Interval> ci_boot_1;
    std::optional<Interval> ci_boot_2;
    std::size_t T = 0;
    std::size_t dropped = 0;
};

/// Full fit of one (response, regressor pair): closed-form coefficients,
/// partial correlations and both interval constructions.
[[nodiscard]] RegressionReport regress(const AlignedTriple& triple, const RegressOptions& options = {});

/// |a1/a2 - (pc1/pc2) sqrt((1 - r2y^2) / (1 - r1y^2))|. Throws StatsError if
/// alpha2 or pc2 is zero.
[[nodiscard]] double duality_check(const RegressionReport& report);

}  // namespace newsflow::stats
