#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ytest/dataset.hpp"

namespace ytest {

enum class Verdict { dependent, independent, inconclusive };

std::string_view to_string(Verdict v);

/// p-value bands for the three-way dependence verdict: p below dependent_p
/// counts as dependence, p above independent_p as independence, and the band
/// in between is inconclusive.
struct Thresholds {
    double dependent_p = 0.05;
    double independent_p = 0.10;

    /// Requires 0 < dependent_p < independent_p < 1.
    void validate() const;
};

Verdict classify(double p_value, const Thresholds& thresholds);

/// One conditional-association query: the coefficient of b in the least
/// squares regression of a on {b} union given (plus intercept).
struct AssocRecord {
    std::string a;
    std::string b;
    std::vector<std::string> given;
    double coefficient = 0.0;
    double standard_error = 0.0;
    double p_value = 1.0;
    long degrees_of_freedom = 0;
    Verdict verdict = Verdict::inconclusive;

    [[nodiscard]] double t_statistic() const { return coefficient / standard_error; }
};

/// Runs the conditional-association regression and applies the verdict bands.
/// Throws RoleConflict when a == b or either overlaps `given`; propagates
/// regression errors (DegenerateDesign, DegenerateFit, InsufficientData).
AssocRecord assoc(const Dataset& data, std::string_view a, std::string_view b,
                  std::span<const std::string> given, const Thresholds& thresholds = {});

}  // namespace ytest
