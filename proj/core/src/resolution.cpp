#include "cusp/resolution.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <numeric>

namespace cusp {

std::string case_tag_name(CaseTag c) {
  switch (c) {
    case CaseTag::EvenEven: return "EvenEven";
    case CaseTag::EvenOdd: return "EvenOdd";
    case CaseTag::OddOdd: return "OddOdd";
  }
  return "?";
}

std::string trace_status_name(TraceExclusionVerdict::Status s) {
  switch (s) {
    case TraceExclusionVerdict::Status::Allowed: return "Allowed";
    case TraceExclusionVerdict::Status::ExcludedAt: return "ExcludedAt";
    case TraceExclusionVerdict::Status::SaddleNodeBoundary: return "SaddleNodeBoundary";
  }
  return "?";
}

namespace {

ScheduledStep line_step(std::size_t axis, LineChart chart, std::string component, int branch = -1) {
  ScheduledStep s;
  s.kind = StepKind::Line;
  s.axis = axis;
  s.chart = chart;
  s.branch = branch;
  s.component = std::move(component);
  s.label = std::string(axis == 0 ? "x-axis" : "y-axis") + (chart == LineChart::Side ? " (side chart)" : "");
  return s;
}

std::string d_name(int i) { return "D" + std::to_string(i); }

}  // namespace

BlowupSchedule schedule(int p, int q, int k) {
  if (p < 1 || q < 1 || k < 1) throw ContractViolation("p, q and k must be positive");
  BlowupSchedule s;
  if (p % 2 == 1 && q % 2 == 0) {
    std::swap(p, q);
    s.swapped = true;
  }
  s.p = p;
  s.q = q;
  s.k = k;
  const int d = std::gcd(p, q);
  const int pp = p / d;
  const int qp = q / d;
  s.case_tag = p % 2 == 0 ? (q % 2 == 0 ? CaseTag::EvenEven : CaseTag::EvenOdd) : CaseTag::OddOdd;
  int n = 0;
  auto axis_run = [&](std::size_t axis, int count) {
    for (int i = 0; i < count; ++i) s.steps.push_back(line_step(axis, LineChart::Main, d_name(++n)));
  };
  if (2 * k < d) {
    // Same shape in every parity case: the separatrix splits after kp' + kq' steps.
    s.regime = s.case_tag == CaseTag::EvenEven ? "k<d'" : "2k<d";
    axis_run(1, k * pp);
    axis_run(0, k * qp);
    s.expected_component_count = k * (pp + qp);
    return s;
  }
  switch (s.case_tag) {
    case CaseTag::EvenEven:
      s.regime = 2 * k == d ? "k=d'" : "k>d'";
      s.needs_trace_check = 2 * k == d;
      axis_run(1, p / 2);
      axis_run(0, q / 2);
      s.expected_component_count = (p + q) / 2;
      break;
    case CaseTag::EvenOdd:
      s.regime = "2k>d";
      axis_run(1, p / 2);
      axis_run(0, (q - 1) / 2);
      // Break the tangency of t^2 + y with the divisor, then separate.
      s.steps.push_back(line_step(0, LineChart::Side, "D'"));
      s.steps.push_back(line_step(0, LineChart::Main, "D''"));
      s.expected_component_count = p / 2 + (q - 1) / 2 + 2;
      break;
    case CaseTag::OddOdd: {
      s.regime = "2k>d";
      axis_run(1, (p - 1) / 2);
      axis_run(0, (q - 1) / 2);
      ScheduledStep origin;
      origin.kind = StepKind::Point;
      origin.axis = 0;
      origin.component = "P";
      origin.label = "origin";
      s.steps.push_back(origin);
      // The conic over P is tangent to both lines; two steps per transverse axis.
      s.steps.push_back(line_step(0, LineChart::Side, "D'(1)", 0));
      s.steps.push_back(line_step(0, LineChart::Main, "D''(1)"));
      s.steps.push_back(line_step(1, LineChart::Side, "D'(2)", 1));
      s.steps.push_back(line_step(1, LineChart::Main, "D''(2)"));
      s.expected_component_count = (p - 1) / 2 + (q - 1) / 2 + 1 + 4;
      break;
    }
  }
  return s;
}

TraceExclusionVerdict check_excluded_trace(const GaussianRational& h0) {
  TraceExclusionVerdict v = check_excluded_trace_squared(h0 * h0);
  v.h0 = h0;
  return v;
}

TraceExclusionVerdict check_excluded_trace_squared(const GaussianRational& c2) {
  TraceExclusionVerdict v;
  if (!c2.is_real()) {
    v.complex_caveat = true;
    v.explanation = "h0^2 = " + c2.to_string() + " is not real; the exclusion set is real";
    return v;
  }
  // r^2 + (32 - 2c^2) r + (256 - 16c^2) = 0, discriminant 4c^2(c^2 - 16).
  const Rational c = c2.re();
  const Rational disc = 4 * c * (c - 16);
  if (sgn(disc) < 0) {
    v.explanation = "negative discriminant " + rational_to_string(disc);
    return v;
  }
  const auto root = rational_sqrt(disc);
  if (!root) {
    v.explanation = "irrational roots (discriminant " + rational_to_string(disc) + ")";
    return v;
  }
  const Rational b = 32 - 2 * c;
  const Rational r = Rational((-b + *root) / 2);  // the larger root
  if (sgn(r) < 0) {
    v.explanation = "both roots negative";
    return v;
  }
  const Rational back = (16 + r) * (16 + r) / (16 + 2 * r);
  if (back != c) throw ContractViolation("trace back-substitution failed");
  v.r = r;
  v.status = sgn(r) == 0 ? TraceExclusionVerdict::Status::SaddleNodeBoundary : TraceExclusionVerdict::Status::ExcludedAt;
  v.explanation = "(16+r)^2/(16+2r) = " + rational_to_string(back) + " = h0^2 at r = " + rational_to_string(r);
  return v;
}

namespace {

void census_all(ResolvedModel& m, int order) {
  m.lines.clear();
  m.points.clear();
  m.incomplete.clear();
  for (int id : m.tree.leaves()) {
    Census c = singular_census(m.tree.node(id), order);
    for (auto& l : c.lines) m.lines.push_back(std::move(l));
    for (auto& p : c.points) m.points.push_back(std::move(p));
    for (auto& s : c.incomplete) m.incomplete.push_back(std::move(s));
  }
  m.reduced = true;
  m.has_saddle_node = false;
  auto visit = [&](const Classification& c) {
    if (!is_simple(c)) m.reduced = false;
    if (c.kind == PointKind::SaddleNode) m.has_saddle_node = true;
  };
  for (const auto& l : m.lines) visit(l.generic);
  for (const auto& p : m.points) visit(p.classification);
}

StageSummary summarize(const ChartTree& tree, int id) {
  const ChartNode& n = tree.node(id);
  StageSummary s;
  s.step = *n.step;
  s.node = id;
  s.form = n.form.to_string();
  s.integrable = check_integrability(n.form).vanishes;
  // Exponent of the divided monomial, recomputed from the pull-back.
  const KForm pulled = pullback(tree.node(n.parent).form, n.step->map);
  for (std::size_t v = 0; v < n.chart.dim(); ++v) {
    int lo = kInfiniteValuation;
    for (const auto& [key, c] : pulled.coeffs()) lo = std::min(lo, static_cast<int>(c.monomial_content()[v]));
    if (n.exceptional[v] && lo != kInfiniteValuation) s.exceptional_monomial[v] = static_cast<std::uint16_t>(lo);
  }
  return s;
}

}  // namespace

ResolvedModel resolve(const CuspidalFoliation& input, const ResolveOptions& opts) {
  ResolvedModel m;
  m.schedule = schedule(input.p, input.q, input.k);
  m.foliation = m.schedule.swapped ? build_omega(m.schedule.p, m.schedule.q, input.k, input.h) : input;
  if (m.schedule.needs_trace_check) {
    m.trace = check_excluded_trace(m.foliation.h.constant_term());
    if (m.trace->status != TraceExclusionVerdict::Status::Allowed) throw ExcludedTrace(*m.trace);
  }
  m.tree = ChartTree(original_chart(), m.foliation.omega, {"Hx", "Hy", ""});
  int current = 0;
  std::vector<int> last_point;
  for (const auto& step : m.schedule.steps) {
    if (step.branch >= 0) current = last_point.at(static_cast<std::size_t>(step.branch));
    if (step.kind == StepKind::Point) {
      last_point = m.tree.blow_up_point(current, step.axis, step.component);
      current = last_point[step.axis];
    } else {
      current = m.tree.blow_up_line(current, step.axis, step.chart, step.component);
    }
    m.stages.push_back(summarize(m.tree, current));
  }
  m.final_node = current;
  census_all(m, opts.order);
  // Odd-odd: the axis steps over P are verified, not trusted; allow up to
  // four more blow-ups of singular coordinate lines through a chart origin.
  while (!m.reduced && m.schedule.case_tag == CaseTag::OddOdd && m.extra_steps < 4) {
    auto bad = std::find_if(m.lines.begin(), m.lines.end(), [](const SingularLine& l) {
      return !is_simple(l.generic) && l.values[0].is_zero() && l.values[1].is_zero();
    });
    if (bad == m.lines.end()) break;
    ++m.extra_steps;
    const std::string comp = "E" + std::to_string(m.extra_steps);
    m.final_node = m.tree.blow_up_line(bad->node, bad->free_var, LineChart::Main, comp);
    m.stages.push_back(summarize(m.tree, m.final_node));
    census_all(m, opts.order);
  }
  m.integrable_everywhere = std::all_of(m.tree.nodes().begin(), m.tree.nodes().end(),
                                        [](const ChartNode& n) { return check_integrability(n.form).vanishes; });
  if (opts.require_reduced && !m.reduced) {
    throw InternalNotReduced("schedule exhausted with non-simple singular points remaining");
  }
  return m;
}

nlohmann::json schedule_to_json(const BlowupSchedule& s) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& st : s.steps) {
    steps.push_back({{"kind", st.kind == StepKind::Line ? "line" : "point"},
                     {"center", st.label},
                     {"component", st.component},
                     {"branch", st.branch}});
  }
  return {{"case", case_tag_name(s.case_tag)},
          {"regime", s.regime},
          {"swapped", s.swapped},
          {"p", s.p},
          {"q", s.q},
          {"k", s.k},
          {"steps", steps},
          {"expected_component_count", s.expected_component_count},
          {"needs_trace_check", s.needs_trace_check}};
}

nlohmann::json trace_to_json(const TraceExclusionVerdict& v) {
  nlohmann::json j{{"h0", v.h0.to_string()},
                   {"status", trace_status_name(v.status)},
                   {"explanation", v.explanation},
                   {"complex_caveat", v.complex_caveat}};
  if (v.r) {
    j["r"] = rational_to_string(*v.r);
    j["r_regime"] = sgn(*v.r) == 0 ? "r=0" : "r>0";
  }
  return j;
}

}  // namespace cusp
