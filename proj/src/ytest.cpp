#include "ytest/ytest.hpp"

#include <algorithm>
#include <cstdio>
#include <unordered_set>

#include "ytest/errors.hpp"
#include "ytest/regress.hpp"
#include "ytest/study.hpp"

namespace ytest {

namespace {

std::string format_ratio(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.2f", value);
    return buffer;
}

std::string regression_label(std::string_view a, std::string_view b,
                             std::span<const std::string> given) {
    std::string out = std::string(a) + " ~ " + std::string(b);
    if (given.empty()) return out;
    out += " | ";
    for (std::size_t i = 0; i < given.size(); ++i) {
        if (i > 0) out += ", ";
        out += given[i];
    }
    return out;
}

StepResult run_step(const Dataset& data, StepId step, std::string_view a, std::string_view b,
                    std::span<const std::string> given, const Thresholds& thresholds) {
    StepResult result;
    result.step = step;
    result.regression = regression_label(a, b, given);
    try {
        result.record = assoc(data, a, b, given, thresholds);
    } catch (const DegenerateDesign& e) {
        result.failure = e.what();
    } catch (const DegenerateFit& e) {
        result.failure = e.what();
    } catch (const InsufficientData& e) {
        result.failure = e.what();
    }
    return result;
}

bool verdict_is(const StepResult& step, Verdict v) {
    return step.record.has_value() && step.record->verdict == v;
}

void append_requirement_note(std::vector<std::string>& notes, const StepResult& step,
                             Verdict expected) {
    if (!verdict_is(step, expected)) {
        notes.push_back(std::string("violated: step ") + std::string(to_string(step.step)) +
                        " expected " + std::string(to_string(expected)) + ", got " +
                        std::string(step.record ? to_string(step.record->verdict) : "no fit"));
    }
}

YTestReport run_y_test(const Dataset& data, const Roles& roles, const Thresholds& thresholds,
                       TestMode mode, const LikelihoodReport* reference) {
    roles.validate();
    thresholds.validate();
    for (const std::string& name :
         {roles.exposure, roles.outcome, roles.instrument_z, roles.instrument_w}) {
        data.col(name);  // unknown columns fail here, before any regression
    }
    for (const std::string& name : roles.controls) data.col(name);

    const Eigen::Index largest_fit = static_cast<Eigen::Index>(roles.controls.size()) + 2;
    if (data.n_rows() <= largest_fit + 2) {
        throw InsufficientData("dataset has " + std::to_string(data.n_rows()) +
                               " rows; the largest step regression needs more than " +
                               std::to_string(largest_fit + 2));
    }

    const std::vector<std::string>& context = roles.controls;
    std::vector<std::string> context_with_exposure;
    context_with_exposure.reserve(context.size() + 1);
    context_with_exposure.push_back(roles.exposure);
    context_with_exposure.insert(context_with_exposure.end(), context.begin(), context.end());

    YTestReport report;
    report.mode = mode;
    report.steps[0] = run_step(data, StepId::s1a, roles.instrument_z, roles.instrument_w,
                               context, thresholds);
    report.steps[1] = run_step(data, StepId::s1b, roles.instrument_z, roles.instrument_w,
                               context_with_exposure, thresholds);
    report.steps[2] = run_step(data, StepId::s2a, roles.outcome, roles.instrument_z,
                               context, thresholds);
    report.steps[3] = run_step(data, StepId::s2b, roles.outcome, roles.instrument_z,
                               context_with_exposure, thresholds);
    report.steps[4] = run_step(data, StepId::s3, roles.outcome, roles.exposure,
                               context, thresholds);

    if (const auto& s3 = report.steps[4].record) {
        const double margin =
            t_critical_value(s3->degrees_of_freedom, 0.95) * s3->standard_error;
        report.effect = EffectEstimate{s3->coefficient, s3->coefficient - margin,
                                       s3->coefficient + margin};
    }

    bool any_degenerate = false;
    for (const StepResult& step : report.steps) {
        if (!step.record) {
            any_degenerate = true;
            report.notes.push_back("step " + std::string(to_string(step.step)) +
                                   " degenerate: " + step.failure);
        }
    }

    if (mode == TestMode::heuristic && report.steps[0].record && report.steps[1].record) {
        report.indicator = indicator_e(*report.steps[0].record, *report.steps[1].record);
        const IndicatorE& ind = *report.indicator;
        std::string note;
        if (ind.e) {
            note = "indicator fired (";
            note += ind.strengthening && ind.reversal ? "strengthening and reversal"
                    : ind.strengthening              ? "strengthening"
                                                     : "reversal";
            note += "): weak evidence for both instruments causing the exposure";
            if (reference != nullptr) {
                note += " (likelihood ratio both-cause-exposure : exposure-causes-an-instrument = " +
                        format_ratio(reference->lr_e_a_vs_b) + ")";
            }
        } else {
            note = "indicator did not fire: evidence against both instruments causing the exposure";
            if (reference != nullptr) {
                note += " (likelihood ratio both-cause-exposure : exposure-causes-an-instrument = " +
                        format_ratio(reference->lr_not_e_a_vs_b) + ")";
            }
        }
        report.notes.push_back(std::move(note));
    }

    const bool any_inconclusive = std::any_of(
        report.steps.begin(), report.steps.end(),
        [](const StepResult& s) { return verdict_is(s, Verdict::inconclusive); });

    if (any_degenerate || any_inconclusive) {
        report.overall = TestOutcome::inconclusive;
        return report;
    }

    bool pass = false;
    if (mode == TestMode::classic) {
        pass = verdict_is(report.steps[0], Verdict::independent) &&
               verdict_is(report.steps[1], Verdict::dependent) &&
               verdict_is(report.steps[2], Verdict::dependent) &&
               verdict_is(report.steps[3], Verdict::independent);
        if (!pass) {
            append_requirement_note(report.notes, report.steps[0], Verdict::independent);
            append_requirement_note(report.notes, report.steps[1], Verdict::dependent);
            append_requirement_note(report.notes, report.steps[2], Verdict::dependent);
            append_requirement_note(report.notes, report.steps[3], Verdict::independent);
        }
    } else {
        const bool indicator_quiet = report.indicator && !report.indicator->e;
        pass = indicator_quiet && verdict_is(report.steps[2], Verdict::dependent) &&
               verdict_is(report.steps[3], Verdict::independent);
        if (!pass) {
            if (!indicator_quiet) {
                report.notes.emplace_back(
                    "violated: the heuristic requires no strengthening and no reversal");
            }
            append_requirement_note(report.notes, report.steps[2], Verdict::dependent);
            append_requirement_note(report.notes, report.steps[3], Verdict::independent);
        }
    }
    report.overall = pass ? TestOutcome::pass : TestOutcome::fail;
    return report;
}

}  // namespace

void Roles::validate() const {
    const std::array<const std::string*, 4> singles = {&exposure, &outcome, &instrument_z,
                                                       &instrument_w};
    std::unordered_set<std::string> seen;
    for (const std::string* name : singles) {
        if (name->empty()) throw ValidationError("every role name must be non-empty");
        if (!seen.insert(*name).second) {
            throw RoleConflict("role name used twice: " + *name);
        }
    }
    for (const std::string& control : controls) {
        if (control.empty()) throw ValidationError("control names must be non-empty");
        if (!seen.insert(control).second) {
            throw RoleConflict("control overlaps another role: " + control);
        }
    }
}

std::string_view to_string(StepId step) {
    switch (step) {
        case StepId::s1a: return "1a";
        case StepId::s1b: return "1b";
        case StepId::s2a: return "2a";
        case StepId::s2b: return "2b";
        case StepId::s3: return "3";
    }
    return "?";
}

std::string_view to_string(TestMode mode) {
    return mode == TestMode::classic ? "classic" : "heuristic";
}

std::string_view to_string(TestOutcome outcome) {
    switch (outcome) {
        case TestOutcome::pass: return "pass";
        case TestOutcome::fail: return "fail";
        case TestOutcome::inconclusive: return "inconclusive";
    }
    return "?";
}

IndicatorE indicator_e(const AssocRecord& before, const AssocRecord& after) {
    if (before.a != after.a || before.b != after.b) {
        throw RoleConflict("indicator records concern different pairs: " + before.a + "~" +
                           before.b + " vs " + after.a + "~" + after.b);
    }
    if (after.given.size() != before.given.size() + 1) {
        throw RoleConflict("indicator requires conditioning sets S and S plus one variable");
    }
    for (const std::string& name : before.given) {
        if (std::find(after.given.begin(), after.given.end(), name) == after.given.end()) {
            throw RoleConflict("conditioning sets are not nested: missing " + name);
        }
    }

    IndicatorE out;
    out.p_before = before.p_value;
    out.p_after = after.p_value;
    out.r_before = before.coefficient;
    out.r_after = after.coefficient;
    out.strengthening = out.p_after < out.p_before;
    out.reversal = out.r_before * out.r_after < 0.0;
    out.e = out.strengthening || out.reversal;
    return out;
}

YTestReport classic_y_test(const Dataset& data, const Roles& roles,
                           const Thresholds& thresholds) {
    return run_y_test(data, roles, thresholds, TestMode::classic, nullptr);
}

YTestReport heuristic_y_test(const Dataset& data, const Roles& roles,
                             const Thresholds& thresholds, const LikelihoodReport* reference) {
    return run_y_test(data, roles, thresholds, TestMode::heuristic, reference);
}

InstrumentPairSelection select_instrument_pair(const Dataset& data, std::string_view exposure,
                                               std::span<const std::string> instruments,
                                               std::span<const std::string> controls,
                                               const Thresholds& thresholds) {
    if (instruments.size() < 2) {
        throw ValidationError("instrument pairing needs at least two instruments");
    }
    std::vector<std::string> with_exposure;
    with_exposure.reserve(controls.size() + 1);
    with_exposure.emplace_back(exposure);
    with_exposure.insert(with_exposure.end(), controls.begin(), controls.end());

    InstrumentPairSelection out;
    bool have_selection = false;
    double best_change = -1.0;
    for (std::size_t i = 0; i < instruments.size(); ++i) {
        for (std::size_t j = i + 1; j < instruments.size(); ++j) {
            InstrumentPair pair;
            pair.first = i;
            pair.second = j;
            try {
                const AssocRecord before =
                    assoc(data, instruments[i], instruments[j], controls, thresholds);
                const AssocRecord after =
                    assoc(data, instruments[i], instruments[j], with_exposure, thresholds);
                pair.r_before = before.coefficient;
                pair.r_after = after.coefficient;
                pair.change = std::abs(pair.r_after - pair.r_before);
            } catch (const Error& e) {
                pair.degenerate = true;
                pair.note = e.what();
            }
            if (!pair.degenerate && pair.change > best_change) {
                best_change = pair.change;
                out.selected = out.pairs.size();
                have_selection = true;
            }
            out.pairs.push_back(std::move(pair));
        }
    }
    if (!have_selection) {
        throw ValidationError("no usable instrument pairing: every pair regression degenerated");
    }
    return out;
}

}  // namespace ytest
