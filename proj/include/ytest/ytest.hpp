#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ytest/citest.hpp"
#include "ytest/dataset.hpp"

namespace ytest {

struct LikelihoodReport;  // study.hpp

/// Variable roles for one test run: exposure X, outcome Y, instruments Z and
/// W, and the context S of controls.
struct Roles {
    std::string exposure;
    std::string outcome;
    std::string instrument_z;
    std::string instrument_w;
    std::vector<std::string> controls;

    /// Requires the five role names distinct and controls disjoint from them.
    void validate() const;
};

/// The five regressions, in table order:
///   1a: Z ~ W | S      1b: Z ~ W | X, S
///   2a: Y ~ Z | S      2b: Y ~ Z | X, S
///   3:  Y ~ X | S
enum class StepId { s1a, s1b, s2a, s2b, s3 };

std::string_view to_string(StepId step);

struct StepResult {
    StepId step = StepId::s1a;
    std::string regression;
    /// Empty when the step's regression degenerated; `failure` then says why.
    std::optional<AssocRecord> record;
    std::string failure;
};

/// Strengthening / reversal indicator comparing the instrument association
/// before (1a) and after (1b) conditioning on the exposure.
struct IndicatorE {
    double p_before = 1.0;
    double p_after = 1.0;
    double r_before = 0.0;
    double r_after = 0.0;
    bool strengthening = false;  // p_after < p_before, strictly
    bool reversal = false;       // sign flip between two nonzero coefficients
    bool e = false;              // strengthening || reversal
};

/// Builds the indicator from two association records for the same pair whose
/// conditioning sets differ by exactly one added variable. Throws RoleConflict
/// on mismatched records. An exactly-zero coefficient never counts toward a
/// reversal.
IndicatorE indicator_e(const AssocRecord& before, const AssocRecord& after);

enum class TestMode { classic, heuristic };
enum class TestOutcome { pass, fail, inconclusive };

std::string_view to_string(TestMode mode);
std::string_view to_string(TestOutcome outcome);

/// Step-3 effect estimate with its two-sided confidence interval at the
/// fit's exact t quantile.
struct EffectEstimate {
    double estimate = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
};

struct YTestReport {
    TestMode mode = TestMode::classic;
    std::array<StepResult, 5> steps;
    std::optional<IndicatorE> indicator;  // heuristic mode only
    TestOutcome overall = TestOutcome::inconclusive;
    std::optional<EffectEstimate> effect;  // absent when step 3 degenerated
    std::vector<std::string> notes;
};

/// Classic decision rule: Pass requires 1a independent, 1b dependent,
/// 2a dependent, 2b independent. Any inconclusive step makes the overall
/// outcome inconclusive; a degenerate step is reported in place and also
/// makes the outcome inconclusive.
YTestReport classic_y_test(const Dataset& data, const Roles& roles,
                           const Thresholds& thresholds = {});

/// Heuristic decision rule: Pass requires the indicator E negative (no
/// strengthening and no reversal), 2a dependent, and 2b independent. The
/// report's notes carry the indicator's evidential reading; when `reference`
/// likelihoods are supplied the reading includes the likelihood ratios.
YTestReport heuristic_y_test(const Dataset& data, const Roles& roles,
                             const Thresholds& thresholds = {},
                             const LikelihoodReport* reference = nullptr);

/// Before/after association summary for one instrument pair.
struct InstrumentPair {
    std::size_t first = 0;   // indices into the instruments list
    std::size_t second = 0;
    double r_before = 0.0;
    double r_after = 0.0;
    double change = 0.0;  // |r_after - r_before|
    bool degenerate = false;
    std::string note;
};

struct InstrumentPairSelection {
    std::vector<InstrumentPair> pairs;
    std::size_t selected = 0;  // index into `pairs`
};

/// Evaluates every pairing of the given instruments and selects the one whose
/// association coefficient changes the most after additionally conditioning
/// on the exposure. Ties break to the earliest pair; pairs with degenerate
/// regressions are skipped. Throws ValidationError when no pair is usable.
InstrumentPairSelection select_instrument_pair(const Dataset& data, std::string_view exposure,
                                               std::span<const std::string> instruments,
                                               std::span<const std::string> controls,
                                               const Thresholds& thresholds = {});

}  // namespace ytest
