#include "ytest/regress.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>

#include "ytest/errors.hpp"
#include "ytest/special_functions.hpp"

namespace ytest {

Eigen::Index OlsFit::term_index(std::string_view term) const {
    const auto it = std::find(terms.begin(), terms.end(), term);
    if (it == terms.end()) throw ValidationError("unknown regression term: " + std::string(term));
    return static_cast<Eigen::Index>(it - terms.begin());
}

double OlsFit::coefficient(std::string_view term) const {
    return coefficients[term_index(term)];
}

double OlsFit::standard_error(std::string_view term) const {
    return standard_errors[term_index(term)];
}

double OlsFit::t_statistic(std::string_view term) const {
    const Eigen::Index i = term_index(term);
    return coefficients[i] / standard_errors[i];
}

double OlsFit::p_value(std::string_view term) const {
    return t_two_sided_p(t_statistic(term), degrees_of_freedom);
}

OlsFit ols_fit(const Dataset& data, std::string_view response,
               std::span<const std::string> predictors) {
    const Eigen::VectorXd& y = data.col(response);
    const Eigen::Index n = data.n_rows();
    const Eigen::Index k = static_cast<Eigen::Index>(predictors.size());

    if (n <= k + 2) {
        throw InsufficientData("ols_fit needs more than " + std::to_string(k + 2) +
                               " rows for " + std::to_string(k) + " predictors, got " +
                               std::to_string(n));
    }
    if (y.maxCoeff() == y.minCoeff()) {
        throw DegenerateFit("response " + std::string(response) + " is constant");
    }

    Eigen::MatrixXd design(n, k + 1);
    design.col(0).setOnes();
    for (Eigen::Index j = 0; j < k; ++j) design.col(j + 1) = data.col(predictors[j]);

    const Eigen::MatrixXd gram = design.transpose() * design;
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
    const Eigen::VectorXd pivots = ldlt.vectorD();
    const double max_pivot = pivots.cwiseAbs().maxCoeff();
    if (ldlt.info() != Eigen::Success || max_pivot <= 0.0 ||
        pivots.minCoeff() <= kPivotTolerance * max_pivot) {
        throw DegenerateDesign("collinear predictors: design matrix is rank deficient");
    }

    const Eigen::VectorXd beta = ldlt.solve(design.transpose() * y);
    const double rss = (y - design * beta).squaredNorm();
    const double tss = (y.array() - y.mean()).matrix().squaredNorm();
    if (rss <= kPerfectFitTolerance * tss) {
        throw DegenerateFit("residual variance vanished (perfect fit)");
    }

    OlsFit fit;
    fit.degrees_of_freedom = static_cast<long>(n - (k + 1));
    fit.residual_variance = rss / static_cast<double>(fit.degrees_of_freedom);
    fit.coefficients = beta;
    const Eigen::MatrixXd gram_inverse =
        ldlt.solve(Eigen::MatrixXd::Identity(k + 1, k + 1));
    fit.standard_errors = (fit.residual_variance * gram_inverse.diagonal()).cwiseSqrt();
    fit.terms.reserve(k + 1);
    fit.terms.emplace_back(kInterceptTerm);
    for (const auto& p : predictors) fit.terms.push_back(p);
    return fit;
}

double t_two_sided_p(double t, long degrees_of_freedom) {
    return special::student_t_two_sided_p(t, degrees_of_freedom);
}

double t_critical_value(long degrees_of_freedom, double confidence) {
    if (!(confidence > 0.0 && confidence < 1.0)) {
        throw ValidationError("confidence level outside (0, 1)");
    }
    return special::student_t_quantile(0.5 + confidence / 2.0, degrees_of_freedom);
}

}  // namespace ytest
