#include "newsflow/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "newsflow/rng.hpp"

namespace newsflow::stats {

namespace {

void require_same_length(std::span<const double> x, std::span<const double> y, std::size_t min) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("series lengths differ (" + std::to_string(x.size()) + " vs " +
                                    std::to_string(y.size()) + ")");
    }
    if (x.size() < min) {
        throw std::invalid_argument("series too short: need at least " + std::to_string(min) +
                                    " points");
    }
}

double centered_sum_of_squares(std::span<const double> values, double m) {
    double ss = 0.0;
    for (const double v : values) {
        ss += (v - m) * (v - m);
    }
    return ss;
}

// Percentile index with a small guard so that p * n landing a rounding error
// above an integer does not skip a rank.
std::size_t nearest_rank(std::size_t n, double p) {
    const double rank = std::ceil(p * static_cast<double>(n) - 1e-9);
    if (rank < 1.0) {
        return 0;
    }
    return std::min(n, static_cast<std::size_t>(rank)) - 1;
}

}  // namespace

double mean(std::span<const double> values) {
    if (values.empty()) {
        throw std::invalid_argument("mean of an empty series");
    }
    return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double variance(std::span<const double> values) {
    const double m = mean(values);
    return centered_sum_of_squares(values, m) / static_cast<double>(values.size());
}

double sample_stddev(std::span<const double> values) {
    if (values.size() < 2) {
        return 0.0;
    }
    const double m = mean(values);
    return std::sqrt(centered_sum_of_squares(values, m) / static_cast<double>(values.size() - 1));
}

std::vector<double> standardize(std::span<const double> values) {
    if (values.size() < 2) {
        throw std::invalid_argument("standardize: need at least 2 points");
    }
    const double m = mean(values);
    const double var = centered_sum_of_squares(values, m) / static_cast<double>(values.size());
    if (!(var > 0.0) || !std::isfinite(var)) {
        throw StatsError("standardize: series has zero variance");
    }
    const double sd = std::sqrt(var);
    std::vector<double> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        out[i] = (values[i] - m) / sd;
    }
    return out;
}

double pearson(std::span<const double> x, std::span<const double> y) {
    require_same_length(x, y, 2);
    const double mx = mean(x);
    const double my = mean(y);
    double sxx = 0.0;
    double syy = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (!(sxx > 0.0) || !(syy > 0.0)) {
        throw StatsError("pearson: constant input series");
    }
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double quantile_nearest_rank(std::span<const double> sorted, double p) {
    if (sorted.empty()) {
        throw std::invalid_argument("quantile of an empty series");
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("quantile probability must lie in [0, 1]");
    }
    return sorted[nearest_rank(sorted.size(), p)];
}

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::invalid_argument("normal_quantile: p must lie in (0, 1)");
    }
    // Acklam's rational approximation followed by one Halley step.
    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                   -2.759285104469687e+02, 1.383577518672690e+02,
                                   -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                   -1.556989798598866e+02, 6.680131188771972e+01,
                                   -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                   -2.400758277161838e+00, -2.549732539343734e+00,
                                   4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                   2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;
    double x = 0.0;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log1p(-p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
    const double u = e * std::sqrt(2.0 * M_PI) * std::exp(x * x / 2.0);
    return x - u / (1.0 + x * u / 2.0);
}

void AlignedTriple::validate() const {
    if (y.size() != x1.size() || y.size() != x2.size()) {
        throw std::invalid_argument("aligned triple: series lengths differ");
    }
    if (y.size() < 3) {
        throw std::invalid_argument("aligned triple: need at least 3 observations");
    }
}

ListwiseAlignment align_listwise(std::span<const std::optional<double>> y,
                                 std::span<const std::optional<double>> x1,
                                 std::span<const std::optional<double>> x2) {
    if (y.size() != x1.size() || y.size() != x2.size()) {
        throw std::invalid_argument("align_listwise: series lengths differ");
    }
    ListwiseAlignment out;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (y[i] && x1[i] && x2[i]) {
            out.triple.y.push_back(*y[i]);
            out.triple.x1.push_back(*x1[i]);
            out.triple.x2.push_back(*x2[i]);
        } else {
            ++out.dropped;
        }
    }
    return out;
}

Correlations correlations(const AlignedTriple& triple) {
    triple.validate();
    return Correlations{pearson(triple.x1, triple.x2), pearson(triple.x1, triple.y),
                        pearson(triple.x2, triple.y)};
}

double correlation_determinant(const Correlations& c) noexcept {
    return 1.0 - c.rho12 * c.rho12 - c.rho1y * c.rho1y - c.rho2y * c.rho2y +
           2.0 * c.rho12 * c.rho1y * c.rho2y;
}

Ols2Fit ols2_from_correlations(const Correlations& c) {
    if (std::abs(c.rho12) >= 1.0 - kCollinearityTolerance) {
        throw StatsError("ols2: regressors are collinear (|rho12| = " +
                         std::to_string(std::abs(c.rho12)) + ")");
    }
    const double den = 1.0 - c.rho12 * c.rho12;
    Ols2Fit fit;
    fit.alpha1 = (c.rho1y - c.rho2y * c.rho12) / den;
    fit.alpha2 = (c.rho2y - c.rho1y * c.rho12) / den;
    fit.beta_sq = correlation_determinant(c) / den;
    fit.corr = c;
    return fit;
}

Ols2Fit ols2_closed_form(const AlignedTriple& triple) {
    return ols2_from_correlations(correlations(triple));
}

PartialCorrelations partial_from_correlations(const Correlations& c) {
    const double one_minus_12 = 1.0 - c.rho12 * c.rho12;
    const double one_minus_1y = 1.0 - c.rho1y * c.rho1y;
    const double one_minus_2y = 1.0 - c.rho2y * c.rho2y;
    if (!(one_minus_12 > 0.0) || !(one_minus_1y > 0.0) || !(one_minus_2y > 0.0)) {
        throw StatsError("partial correlations: a pairwise correlation has magnitude 1");
    }
    PartialCorrelations pc;
    pc.pc1 = (c.rho1y - c.rho2y * c.rho12) / std::sqrt(one_minus_2y * one_minus_12);
    pc.pc2 = (c.rho2y - c.rho1y * c.rho12) / std::sqrt(one_minus_1y * one_minus_12);
    return pc;
}

PartialCorrelations partial_correlations(const AlignedTriple& triple) {
    return partial_from_correlations(correlations(triple));
}

CoefficientIntervals gaussian_ci(const AlignedTriple& triple, double level) {
    triple.validate();
    if (triple.size() <= 3) {
        throw std::invalid_argument("gaussian_ci: need T > 3");
    }
    if (!(level > 0.0 && level < 1.0)) {
        throw std::invalid_argument("gaussian_ci: level must lie in (0, 1)");
    }
    const auto y = standardize(triple.y);
    const auto x1 = standardize(triple.x1);
    const auto x2 = standardize(triple.x2);
    double s11 = 0.0;
    double s12 = 0.0;
    double s22 = 0.0;
    double s1y = 0.0;
    double s2y = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        s11 += x1[i] * x1[i];
        s12 += x1[i] * x2[i];
        s22 += x2[i] * x2[i];
        s1y += x1[i] * y[i];
        s2y += x2[i] * y[i];
    }
    const double det = s11 * s22 - s12 * s12;
    if (!(det > kCollinearityTolerance * s11 * s22)) {
        throw StatsError("gaussian_ci: degenerate design matrix");
    }
    const double a1 = (s22 * s1y - s12 * s2y) / det;
    const double a2 = (s11 * s2y - s12 * s1y) / det;
    double rss = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double e = y[i] - a1 * x1[i] - a2 * x2[i];
        rss += e * e;
    }
    const double s2 = rss / static_cast<double>(y.size() - 2);
    const double se1 = std::sqrt(s2 * s22 / det);
    const double se2 = std::sqrt(s2 * s11 / det);
    const double z = normal_quantile(0.5 + level / 2.0);
    return CoefficientIntervals{Interval{a1 - z * se1, a1 + z * se1},
                                Interval{a2 - z * se2, a2 + z * se2}};
}

CoefficientIntervals bootstrap_ci(const AlignedTriple& triple, std::size_t replicates,
                                  std::uint64_t seed, double level) {
    triple.validate();
    if (replicates < kMinBootstrapReplicates) {
        throw std::invalid_argument("bootstrap_ci: need at least " +
                                    std::to_string(kMinBootstrapReplicates) + " replicates");
    }
    if (!(level > 0.0 && level < 1.0)) {
        throw std::invalid_argument("bootstrap_ci: level must lie in (0, 1)");
    }
    const std::size_t n = triple.size();
    std::vector<double> a1(replicates);
    std::vector<double> a2(replicates);
    AlignedTriple resample;
    resample.y.resize(n);
    resample.x1.resize(n);
    resample.x2.resize(n);
    for (std::size_t r = 0; r < replicates; ++r) {
        Rng rng(seed + r);
        bool fitted = false;
        for (int attempt = 0; attempt < kBootstrapRedrawCap && !fitted; ++attempt) {
            for (std::size_t i = 0; i < n; ++i) {
                const std::size_t k = rng.index(n);
                resample.y[i] = triple.y[k];
                resample.x1[i] = triple.x1[k];
                resample.x2[i] = triple.x2[k];
            }
            try {
                AlignedTriple standardized{standardize(resample.y), standardize(resample.x1),
                                           standardize(resample.x2)};
                const auto fit = ols2_closed_form(standardized);
                a1[r] = fit.alpha1;
                a2[r] = fit.alpha2;
                fitted = true;
            } catch (const StatsError&) {
                // degenerate resample; redraw
            }
        }
        if (!fitted) {
            throw StatsError("bootstrap_ci: replicate " + std::to_string(r) + " degenerate after " +
                             std::to_string(kBootstrapRedrawCap) + " redraws");
        }
    }
    std::sort(a1.begin(), a1.end());
    std::sort(a2.begin(), a2.end());
    const double tail = (1.0 - level) / 2.0;
    return CoefficientIntervals{
        Interval{quantile_nearest_rank(a1, tail), quantile_nearest_rank(a1, 1.0 - tail)},
        Interval{quantile_nearest_rank(a2, tail), quantile_nearest_rank(a2, 1.0 - tail)}};
}

std::vector<AcfPoint> autocorrelation(std::span<const double> series, std::size_t max_lag) {
    if (series.size() <= max_lag + 2) {
        throw std::invalid_argument("autocorrelation: series must be longer than max_lag + 2");
    }
    const double m = mean(series);
    const double denom = centered_sum_of_squares(series, m);
    if (!(denom > 0.0)) {
        throw StatsError("autocorrelation: constant series");
    }
    const double band = 2.0 / std::sqrt(static_cast<double>(series.size()));
    std::vector<AcfPoint> out;
    out.reserve(max_lag + 1);
    for (std::size_t lag = 0; lag <= max_lag; ++lag) {
        double num = 0.0;
        for (std::size_t t = 0; t + lag < series.size(); ++t) {
            num += (series[t] - m) * (series[t + lag] - m);
        }
        const double value = num / denom;
        out.push_back(AcfPoint{lag, value, std::abs(value) > band});
    }
    return out;
}

NullSummary permutation_null(std::span<const double> x, std::span<const double> y,
                             std::size_t n_shuffles, std::uint64_t seed) {
    require_same_length(x, y, 2);
    if (n_shuffles < 2) {
        throw std::invalid_argument("permutation_null: need at least 2 shuffles");
    }
    Rng rng(seed);
    std::vector<double> shuffled(y.begin(), y.end());
    std::vector<double> values;
    values.reserve(n_shuffles);
    for (std::size_t s = 0; s < n_shuffles; ++s) {
        rng.shuffle(std::span<double>(shuffled));
        values.push_back(pearson(x, shuffled));
    }
    return NullSummary{mean(values), sample_stddev(values)};
}

RegressionReport regress(const AlignedTriple& triple, const RegressOptions& options) {
    triple.validate();
    const AlignedTriple z{standardize(triple.y), standardize(triple.x1), standardize(triple.x2)};
    const auto fit = ols2_closed_form(z);
    const auto pc = partial_from_correlations(fit.corr);

    RegressionReport report;
    report.alpha1 = fit.alpha1;
    report.alpha2 = fit.alpha2;
    report.beta_sq = fit.beta_sq;
    report.rho12 = fit.corr.rho12;
    report.rho1y = fit.corr.rho1y;
    report.rho2y = fit.corr.rho2y;
    report.pc1 = pc.pc1;
    report.pc2 = pc.pc2;
    report.T = z.size();

    double rss = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        const double e = z.y[i] - fit.alpha1 * z.x1[i] - fit.alpha2 * z.x2[i];
        rss += e * e;
    }
    report.residual_variance = rss / static_cast<double>(z.size());

    const auto gauss = gaussian_ci(z, options.level);
    report.ci_gauss_1 = gauss.alpha1;
    report.ci_gauss_2 = gauss.alpha2;
    if (options.bootstrap_replicates > 0) {
        const auto boot = bootstrap_ci(triple, options.bootstrap_replicates, options.seed,
                                       options.level);
        report.ci_boot_1 = boot.alpha1;
        report.ci_boot_2 = boot.alpha2;
    }
    return report;
}

double duality_check(const RegressionReport& report) {
    if (report.alpha2 == 0.0 || report.pc2 == 0.0) {
        throw StatsError("duality_check: alpha2 and pc2 must be nonzero");
    }
    const double lhs = report.alpha1 / report.alpha2;
    const double rhs = report.pc1 / report.pc2 *
                       std::sqrt((1.0 - report.rho2y * report.rho2y) /
                                 (1.0 - report.rho1y * report.rho1y));
    return std::abs(lhs - rhs);
}

}  // namespace newsflow::stats
