#pragma once

// Independent reference computations used to check the library. Nothing here
// calls into newsflow::stats or newsflow::classify.

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace oracle {

/// Least squares of y on [1, x1, x2] by column-pivoted QR, rescaled to
/// standardized coefficients b_j * sd(x_j) / sd(y).
std::array<double, 2> standardized_ols(std::span<const double> y, std::span<const double> x1,
                                       std::span<const double> x2);

/// Correlation between the residuals of y and of x after regressing each on [1, z].
double residual_partial(std::span<const double> y, std::span<const double> x,
                        std::span<const double> z);

/// Standard errors of the standardized coefficients from s^2 (X'X)^-1, with
/// s^2 = RSS / (T - 2) on z-scored data.
std::array<double, 2> standardized_se(std::span<const double> y, std::span<const double> x1,
                                      std::span<const double> x2);

enum class Label { B, S, BS, Inactive };

/// The classification rule written out literally on integers, with theta
/// given as the decimal string it was typed as (e.g. "0.01").
Label classify_literal(long long vb, long long vs, std::string_view theta);

/// Plain two-pass Pearson correlation.
double pearson(std::span<const double> a, std::span<const double> b);

/// Population variance.
double pop_variance(std::span<const double> v);

}  // namespace oracle

namespace oracle {

/// Large-T coverage of the interval alpha_j +/- z * SE_ols for standardized
/// coefficients of jointly Gaussian data, using the delta method on the
/// Pearson-Filon asymptotic covariance of the sample correlations.
std::array<double, 2> predicted_gaussian_coverage(double alpha1, double alpha2, double rho12,
                                                  double level);

}  // namespace oracle
