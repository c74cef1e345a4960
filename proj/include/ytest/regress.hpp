#pragma once

#include <Eigen/Core>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ytest/dataset.hpp"

namespace ytest {

/// Relative pivot tolerance for the rank-deficiency check of the Gram matrix.
inline constexpr double kPivotTolerance = 1e-10;
/// A residual sum of squares at or below this fraction of the response's
/// centered sum of squares is treated as a perfect fit.
inline constexpr double kPerfectFitTolerance = 1e-12;

/// Ordinary least squares fit. The intercept term is always included and
/// always listed first.
struct OlsFit {
    std::vector<std::string> terms;
    Eigen::VectorXd coefficients;
    Eigen::VectorXd standard_errors;
    double residual_variance = 0.0;
    long degrees_of_freedom = 0;

    [[nodiscard]] Eigen::Index term_index(std::string_view term) const;
    [[nodiscard]] double coefficient(std::string_view term) const;
    [[nodiscard]] double standard_error(std::string_view term) const;
    [[nodiscard]] double t_statistic(std::string_view term) const;
    [[nodiscard]] double p_value(std::string_view term) const;
};

/// Name under which the intercept appears in OlsFit::terms.
inline constexpr std::string_view kInterceptTerm = "(intercept)";

/// Fits response ~ intercept + predictors by normal equations (LDLT on the
/// Gram matrix with a relative pivot check).
///
/// Throws InsufficientData when n_rows <= predictors + 2, DegenerateDesign on
/// collinear predictors, DegenerateFit when residuals vanish or the response
/// is constant.
OlsFit ols_fit(const Dataset& data, std::string_view response,
               std::span<const std::string> predictors);

/// Two-sided Student-t tail probability P(|T_df| >= |t|).
double t_two_sided_p(double t, long degrees_of_freedom);

/// Two-sided critical value: P(|T_df| <= value) = confidence.
double t_critical_value(long degrees_of_freedom, double confidence);

}  // namespace ytest
