#pragma once

#include "cusp/foliation.hpp"
#include "cusp/singular.hpp"

#include <nlohmann/json_fwd.hpp>

#include <optional>
#include <string>
#include <vector>

namespace cusp {

enum class CaseTag { EvenEven, EvenOdd, OddOdd };

std::string case_tag_name(CaseTag c);

enum class StepKind { Line, Point };

struct ScheduledStep {
  StepKind kind = StepKind::Line;
  /// Line: free variable of the blown-up axis (0: x-axis, 1: y-axis).
  /// Point: chart followed afterwards.
  std::size_t axis = 0;
  LineChart chart = LineChart::Main;
  /// -1 continues in the last followed chart; j >= 0 starts from chart j of
  /// the most recent point blow-up.
  int branch = -1;
  std::string component;
  std::string label;
};

struct BlowupSchedule {
  CaseTag case_tag = CaseTag::EvenEven;
  /// "k>d'", "k=d'", "k<d'" in the even-even case, "2k>d" or "2k<d" otherwise.
  std::string regime;
  bool swapped = false;  ///< (p, q) was swapped so that p is even when only one is
  int p = 0;
  int q = 0;
  int k = 0;
  std::vector<ScheduledStep> steps;
  int expected_component_count = 0;
  /// Even-even with 2k = d: reduction depends on h(0).
  bool needs_trace_check = false;
};

/// Swaps (p, q) first when p is odd and q is even.
BlowupSchedule schedule(int p, int q, int k);

struct TraceExclusionVerdict {
  enum class Status { Allowed, ExcludedAt, SaddleNodeBoundary };
  GaussianRational h0;
  Status status = Status::Allowed;
  std::optional<Rational> r;  ///< the nonnegative rational root when excluded
  /// Set when h0^2 is not a real rational; the verdict is then Allowed.
  bool complex_caveat = false;
  std::string explanation;
};

std::string trace_status_name(TraceExclusionVerdict::Status s);

/// Decides whether h0^2 = (16 + r)^2 / (16 + 2r) for some rational r >= 0.
TraceExclusionVerdict check_excluded_trace(const GaussianRational& h0);

/// Same decision from h0^2 alone (h0 itself may be irrational); v.h0 is left zero.
TraceExclusionVerdict check_excluded_trace_squared(const GaussianRational& h0_squared);

class ExcludedTrace : public Error {
public:
  explicit ExcludedTrace(TraceExclusionVerdict v)
      : Error("excluded trace: " + trace_status_name(v.status)), verdict_(std::move(v)) {}
  const TraceExclusionVerdict& verdict() const { return verdict_; }

private:
  TraceExclusionVerdict verdict_;
};

/// The schedule (plus the allowed extra steps) was exhausted with a NotSimple
/// point remaining.
class InternalNotReduced : public Error {
public:
  using Error::Error;
};

struct StageSummary {
  BlowupStep step;
  int node = 0;  ///< followed chart created by the step
  std::string form;
  Exponent exceptional_monomial{};
  bool integrable = false;
};

struct ResolvedModel {
  CuspidalFoliation foliation;  ///< after the (p, q) swap, if any
  BlowupSchedule schedule;
  ChartTree tree;
  std::vector<StageSummary> stages;
  std::vector<SingularLine> lines;
  std::vector<SingularPointRecord> points;
  std::vector<std::string> incomplete;
  std::optional<TraceExclusionVerdict> trace;
  int final_node = 0;
  int extra_steps = 0;
  bool reduced = false;
  /// w ∧ dw = 0 on every chart of the tree.
  bool integrable_everywhere = false;
  bool has_saddle_node = false;
};

struct ResolveOptions {
  int order = kDefaultTruncation;
  /// Throw InternalNotReduced instead of returning an unreduced model.
  bool require_reduced = false;
};

/// Executes the schedule, censuses every leaf chart and classifies.
/// Throws ExcludedTrace when the even-even k = d' case hits the excluded set.
ResolvedModel resolve(const CuspidalFoliation& f, const ResolveOptions& opts = {});

nlohmann::json schedule_to_json(const BlowupSchedule& s);
nlohmann::json trace_to_json(const TraceExclusionVerdict& v);

}  // namespace cusp
