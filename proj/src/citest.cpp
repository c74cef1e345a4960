#include "ytest/citest.hpp"

#include <algorithm>
#include <unordered_set>

#include "ytest/errors.hpp"
#include "ytest/regress.hpp"

namespace ytest {

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::dependent: return "dependent";
        case Verdict::independent: return "independent";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

void Thresholds::validate() const {
    if (!(0.0 < dependent_p && dependent_p < independent_p && independent_p < 1.0)) {
        throw ValidationError("thresholds must satisfy 0 < dependent_p < independent_p < 1");
    }
}

Verdict classify(double p_value, const Thresholds& thresholds) {
    thresholds.validate();
    if (p_value < thresholds.dependent_p) return Verdict::dependent;
    if (p_value > thresholds.independent_p) return Verdict::independent;
    return Verdict::inconclusive;
}

AssocRecord assoc(const Dataset& data, std::string_view a, std::string_view b,
                  std::span<const std::string> given, const Thresholds& thresholds) {
    thresholds.validate();
    if (a == b) throw RoleConflict("assoc requires two distinct variables, got " + std::string(a));
    std::unordered_set<std::string_view> seen;
    for (const auto& name : given) {
        if (name == a || name == b) {
            throw RoleConflict("conditioning set must not contain " + name);
        }
        if (!seen.insert(name).second) {
            throw RoleConflict("conditioning set lists " + name + " twice");
        }
    }

    std::vector<std::string> predictors;
    predictors.reserve(given.size() + 1);
    predictors.emplace_back(b);
    predictors.insert(predictors.end(), given.begin(), given.end());

    const OlsFit fit = ols_fit(data, a, predictors);

    AssocRecord record;
    record.a = std::string(a);
    record.b = std::string(b);
    record.given.assign(given.begin(), given.end());
    record.coefficient = fit.coefficient(b);
    record.standard_error = fit.standard_error(b);
    record.p_value = fit.p_value(b);
    record.degrees_of_freedom = fit.degrees_of_freedom;
    record.verdict = classify(record.p_value, thresholds);
    return record;
}

}  // namespace ytest
