#include "cusp/report.hpp"

#include "cusp/parse.hpp"
#include "cusp/resolution.hpp"
#include "cusp/separatrix.hpp"
#include "cusp/topology.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

namespace cusp {

std::string command_name(Command c) {
  switch (c) {
    case Command::Resolve: return "resolve";
    case Command::Separatrix: return "separatrix";
    case Command::Topology: return "topology";
    case Command::CheckTrace: return "check-trace";
    case Command::ClassifyLinear: return "classify-linear";
  }
  return "?";
}

Command command_from_name(const std::string& name) {
  for (Command c : {Command::Resolve, Command::Separatrix, Command::Topology, Command::CheckTrace,
                    Command::ClassifyLinear}) {
    if (command_name(c) == name) return c;
  }
  throw ContractViolation("unknown command '" + name + "'");
}

void RunConfig::validate() const {
  if (truncation < 8) throw ContractViolation("truncation must be at least 8");
  switch (command) {
    case Command::Resolve:
    case Command::Topology:
      if (p < 1 || q < 1 || k < 1) throw ContractViolation("--p, --q and --k must be positive");
      break;
    case Command::Separatrix:
      if (d < 1 || k < 1) throw ContractViolation("--d and --k must be positive");
      break;
    case Command::CheckTrace:
      if (h0.empty()) throw ContractViolation("--h0 is required");
      break;
    case Command::ClassifyLinear:
      if (matrix.empty()) throw ContractViolation("--matrix is required");
      break;
  }
}

RunConfig config_from_json(const nlohmann::json& j, RunConfig c) {
  if (!j.is_object()) throw ContractViolation("config must be a JSON object");
  if (j.contains("command")) c.command = command_from_name(j.at("command").get<std::string>());
  if (j.contains("p")) c.p = j.at("p").get<int>();
  if (j.contains("q")) c.q = j.at("q").get<int>();
  if (j.contains("k")) c.k = j.at("k").get<int>();
  if (j.contains("d")) c.d = j.at("d").get<int>();
  if (j.contains("h")) c.h = j.at("h").get<std::string>();
  if (j.contains("h0")) c.h0 = j.at("h0").get<std::string>();
  if (j.contains("matrix")) c.matrix = j.at("matrix").is_string() ? j.at("matrix").get<std::string>() : j.at("matrix").dump();
  if (j.contains("truncation")) c.truncation = j.at("truncation").get<int>();
  if (j.contains("all_charts")) c.all_charts = j.at("all_charts").get<bool>();
  if (j.contains("out")) c.out = j.at("out").get<std::string>();
  if (j.contains("dot")) c.dot = j.at("dot").get<std::string>();
  return c;
}

namespace {

// Line and column of a byte offset.
std::pair<int, int> locate(const std::string& text, std::size_t offset) {
  int line = 1;
  int col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

nlohmann::json parse_json_text(const std::string& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, col] = locate(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ParseError("invalid JSON", line, col);
  }
}

}  // namespace

RunConfig load_config_file(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ContractViolation("cannot open config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return config_from_json(parse_json_text(ss.str()), std::move(base));
}

void to_json(nlohmann::json& j, const Warning& w) {
  j = {{"code", w.code}, {"subject", w.subject}, {"message", w.message}};
}

void from_json(const nlohmann::json& j, Warning& w) {
  w.code = j.at("code").get<std::string>();
  w.subject = j.at("subject").get<std::string>();
  w.message = j.at("message").get<std::string>();
}

void to_json(nlohmann::json& j, const Report& r) {
  j = {{"schema", r.schema},
       {"command", r.command},
       {"status", r.status},
       {"exit_code", r.exit_code},
       {"input", r.input},
       {"schedule", r.schedule},
       {"stages", r.stages},
       {"charts", r.charts},
       {"divisor_graph", r.divisor_graph},
       {"singular_lines", r.singular_lines},
       {"singular_points", r.singular_points},
       {"separatrix", r.separatrix},
       {"presentations", r.presentations},
       {"holonomy", r.holonomy},
       {"trace", r.trace},
       {"linear", r.linear},
       {"error", r.error},
       {"warnings", r.warnings}};
}

void from_json(const nlohmann::json& j, Report& r) {
  r.schema = j.at("schema").get<std::string>();
  if (r.schema != kReportSchema) throw ContractViolation("unsupported report schema " + r.schema);
  r.command = j.at("command").get<std::string>();
  r.status = j.at("status").get<std::string>();
  r.exit_code = j.at("exit_code").get<int>();
  r.input = j.at("input");
  r.schedule = j.at("schedule");
  r.stages = j.at("stages");
  r.charts = j.at("charts");
  r.divisor_graph = j.at("divisor_graph");
  r.singular_lines = j.at("singular_lines");
  r.singular_points = j.at("singular_points");
  r.separatrix = j.at("separatrix");
  r.presentations = j.at("presentations");
  r.holonomy = j.at("holonomy");
  r.trace = j.at("trace");
  r.linear = j.at("linear");
  r.error = j.at("error").get<std::string>();
  r.warnings = j.at("warnings").get<std::vector<Warning>>();
}

std::string serialize(const Report& r) { return nlohmann::json(r).dump(2) + "\n"; }

namespace {

nlohmann::json input_echo(const RunConfig& c) {
  nlohmann::json j{{"command", command_name(c.command)}, {"truncation", c.truncation}};
  switch (c.command) {
    case Command::Resolve:
    case Command::Topology:
      j["p"] = c.p;
      j["q"] = c.q;
      j["k"] = c.k;
      j["h"] = c.h;
      j["all_charts"] = c.all_charts;
      break;
    case Command::Separatrix:
      j["d"] = c.d;
      j["k"] = c.k;
      j["h"] = c.h;
      if (c.p > 0 && c.q > 0) {
        j["p"] = c.p;
        j["q"] = c.q;
      }
      break;
    case Command::CheckTrace: j["h0"] = c.h0; break;
    case Command::ClassifyLinear: j["matrix"] = c.matrix; break;
  }
  return j;
}

TruncSeries parse_h(const std::string& text) { return TruncSeries::exact(parse_univariate(text, "u")); }

nlohmann::json trace_json_or_null(const std::optional<TraceExclusionVerdict>& t) {
  return t ? trace_to_json(*t) : nlohmann::json();
}

void trace_warnings(const TraceExclusionVerdict& v, std::vector<Warning>& w) {
  if (v.complex_caveat) {
    w.push_back({"COMPLEX-H0", "h0 = " + v.h0.to_string(),
                 "h0^2 is not a real rational; the exclusion set is real, verdict Allowed"});
  }
  if (v.r && sgn(*v.r) > 0) {
    w.push_back({"EXCLUSION-R-POSITIVE", "r = " + rational_to_string(*v.r),
                 "root lies in Q>0: excluded under both the strict and the working assumption"});
  }
  if (v.r && sgn(*v.r) == 0) {
    w.push_back({"EXCLUSION-R-ZERO", "r = 0",
                 "root lies on the boundary r = 0: excluded only under the working assumption r >= 0"});
  }
}

// Separatrix block: W, Tschirnhausen form and normalization map.
nlohmann::json separatrix_block(int d, int k, const TruncSeries& h, int truncation, int pp, int qp,
                                std::vector<Warning>& warnings) {
  const int n = std::max(truncation, std::max(d, 2 * k) + 2);
  const SeparatrixPoly s = solve_formal_separatrix(d, k, h, n);
  nlohmann::json j = separatrix_to_json(s);
  j["closed_form_r"] = separatrix_exponent(d, k);
  if (n != truncation) {
    warnings.push_back({"TRUNCATION-RAISED", "separatrix",
                        "solver order raised from " + std::to_string(truncation) + " to " + std::to_string(n)});
  }
  const TschirnhausenResult t = tschirnhausen(s.a, s.b);
  j["c"] = t.c.poly().to_string();
  j["r"] = t.r;
  j["f"] = t.f.poly().to_string();
  const SeparatrixFactorization fac = factor_separatrix(t);
  j["splits"] = fac.splits;
  if (fac.root) j["split_root"] = fac.root->poly().to_string();
  try {
    const NormalizationMap nm = normalization_map(pp, qp, t.r, s.a, t.f);
    nlohmann::json F = nlohmann::json::array();
    for (const auto& c : nm.F) F.push_back(c.to_string());
    j["normalization"] = {{"p'", pp},
                          {"q'", qp},
                          {"F", F},
                          {"sqrt_f", nm.sqrt_f.poly().to_string()},
                          {"order", nm.order},
                          {"verified", nm.verified}};
  } catch (const NoExactRoot& e) {
    j["normalization"] = nullptr;
    warnings.push_back({"NO-EXACT-ROOT", "f(0)", e.what()});
  }
  if (!h.poly().is_zero()) {
    warnings.push_back({"FORMAL-TO-ORDER-" + std::to_string(s.residual_order), "separatrix",
                        "a(u), b(u) are solved as formal series; the residual vanishes to this order"});
  }
  {
    // Hopf field for (p, q) = (p' d, q' d); it leaves the model separatrix
    // invariant only when r = d.
    const int p = pp * d;
    const int q = qp * d;
    if (!(p % 2 == 1 && q % 2 == 0)) {
      const HopfField X = hopf_vector_field(p, q);
      const auto cof = hopf_invariance(X, pp, qp, t.r);
      j["hopf"] = {{"field", X.to_string()},
                   {"invariant", cof.has_value()},
                   {"cofactor", cof ? nlohmann::json(rational_to_string(*cof)) : nlohmann::json()}};
    }
  }
  return j;
}

void graph_section(Report& rep, RunResult& res, const ResolvedModel& m) {
  DivisorGraph g = build_divisor_graph(m);
  try {
    component_topologies(g);
  } catch (const CensusMismatch& e) {
    rep.warnings.push_back({"CENSUS-MISMATCH", "divisor graph", e.what()});
  }
  rep.divisor_graph = graph_to_json(g);
  res.dot = graph_to_dot(g);
  const BlowupSchedule& s = m.schedule;
  nlohmann::json pres{{"distinguished", g.distinguished}};
  if (s.case_tag == CaseTag::EvenEven && s.regime != "k<d'" && s.regime != "2k<d") {
    pres["relation"] = presentation_to_json(pi1_presentation(s.case_tag, s.p, s.q));
  } else if (s.case_tag == CaseTag::EvenOdd && s.regime != "2k<d") {
    pres["relation"] = presentation_to_json(pi1_presentation(s.case_tag, s.p, s.q));
    rep.warnings.push_back({"CASE2-AS-BEFORE", "D" + std::to_string(s.p / 2),
                            "<α, β | α^q = β^2> is the group of the cusp t^2 + y^q = 0 in D_{p/2}; "
                            "the tangent-pair template of the even case does not apply"});
    rep.warnings.push_back({"CASE2-SEPARATRIX-ON-D''", "D''",
                            "in the executed charts the separatrix and D_{(p+q-1)/2} meet D'' rather than D'; "
                            "the (C minus 2 pts) x C* label follows the census"});
  } else if (s.case_tag == CaseTag::OddOdd && s.regime != "2k<d") {
    pres["relation"] = presentation_to_json(pi1_presentation(s.case_tag, s.p, s.q));
  } else if (const DivisorNode* n = g.find(g.distinguished)) {
    pres["relation"] = presentation_to_json(n->pi1);
  }
  rep.presentations = pres;
  if (s.case_tag == CaseTag::EvenEven || s.regime == "2k<d") {
    {
      rep.warnings.push_back({"M''-COMPONENT", "m''",
                              "m'' is taken on D_{p/2} ∩ D_{(p+q)/2} ∩ S'', the triple point found by "
                              "the census, not on D_{q/2}"});
    }
  }
  for (const auto& n : g.nodes) {
    if (n.extrapolated) {
      rep.warnings.push_back({"TEMPLATE-EXTRAPOLATED", n.name,
                              "topology label " + n.topology + " carried over from the even case"});
    }
  }
}

nlohmann::json stage_json(const ResolvedModel& m, const StageSummary& st) {
  const ChartNode& n = m.tree.node(st.node);
  return {{"step", step_to_json(st.step)},
          {"node", st.node},
          {"chart", n.chart.name},
          {"form", st.form},
          {"exceptional_monomial", exponent_to_string(n.chart.vars, st.exceptional_monomial)},
          {"integrable", st.integrable}};
}

void resolve_section(const RunConfig& c, Report& rep, RunResult& res, bool full) {
  const TruncSeries h = parse_h(c.h);
  const CuspidalFoliation f = build_omega(c.p, c.q, c.k, h);
  ResolveOptions opts;
  opts.order = c.truncation;
  rep.schedule = schedule_to_json(schedule(c.p, c.q, c.k));
  if (schedule(c.p, c.q, c.k).swapped) {
    rep.warnings.push_back({"SWAPPED-XY", "(p, q)", "p odd and q even: x and y exchanged so that p is even"});
  }
  ResolvedModel m;
  try {
    m = resolve(f, opts);
  } catch (const ExcludedTrace& e) {
    rep.trace = trace_to_json(e.verdict());
    trace_warnings(e.verdict(), rep.warnings);
    rep.status = "EXCLUDED-TRACE";
    rep.exit_code = kExitExcluded;
    return;
  }
  rep.trace = trace_json_or_null(m.trace);
  if (m.trace) trace_warnings(*m.trace, rep.warnings);
  if (full) {
    nlohmann::json stages = nlohmann::json::array();
    for (const auto& st : m.stages) stages.push_back(stage_json(m, st));
    rep.stages = stages;
    if (c.all_charts) {
      nlohmann::json charts = nlohmann::json::array();
      for (const auto& n : m.tree.nodes()) {
        charts.push_back({{"node", n.id},
                          {"chart", n.chart.name},
                          {"vars", n.chart.vars.names()},
                          {"labels", n.labels},
                          {"leaf", n.children.empty()},
                          {"form", n.form.to_string()},
                          {"integrable", check_integrability(n.form).vanishes}});
      }
      rep.charts = charts;
    }
    nlohmann::json lines = nlohmann::json::array();
    for (const auto& l : m.lines) lines.push_back(line_to_json(l));
    nlohmann::json points = nlohmann::json::array();
    for (const auto& p : m.points) points.push_back(point_to_json(p));
    rep.singular_lines = lines;
    rep.singular_points = points;
    rep.separatrix = separatrix_block(f.d, f.k, f.h, c.truncation, f.pp, f.qp, rep.warnings);
  }
  for (const auto& p : m.points) {
    const auto& cl = p.classification;
    if (cl.kind == PointKind::SaddleNode && !cl.center_manifold_flag.empty() &&
        cl.center_manifold_flag.rfind("FORMAL", 0) == 0) {
      rep.warnings.push_back({cl.center_manifold_flag, p.chart + " " + p.coords_text(),
                              "saddle-node center manifold is formal; convergence is assumed"});
    }
  }
  for (const auto& s : m.incomplete) rep.warnings.push_back({"CENSUS-INCOMPLETE", "census", s});
  if (m.extra_steps > 0) {
    rep.warnings.push_back({"REPAIR-STEPS", "schedule",
                            std::to_string(m.extra_steps) + " extra line blow-ups were needed beyond the schedule"});
  }
  graph_section(rep, res, m);
  rep.holonomy = holonomy_to_json(holonomy_constraints(m.schedule.p, m.schedule.q));
  if (m.reduced) {
    rep.status = "REDUCED";
    rep.exit_code = kExitOk;
  } else {
    rep.status = "NOT-REDUCED";
    rep.exit_code = kExitNotReduced;
  }
}

Matrix<GaussianRational> parse_matrix(const std::string& text) {
  const nlohmann::json j = parse_json_text(text);
  if (!j.is_array() || j.empty()) throw ContractViolation("matrix must be a non-empty JSON array of rows");
  Matrix<GaussianRational> m;
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != j.size()) throw ContractViolation("matrix must be square");
    std::vector<GaussianRational> r;
    for (const auto& e : row) {
      if (e.is_number_integer()) {
        r.emplace_back(Rational(e.get<long>()));
      } else if (e.is_string()) {
        r.push_back(parse_scalar(e.get<std::string>()));
      } else {
        throw ContractViolation("matrix entries must be integers or strings");
      }
    }
    m.push_back(std::move(r));
  }
  return m;
}

}  // namespace

RunResult run(const RunConfig& c) {
  RunResult res;
  Report& rep = res.report;
  rep.command = command_name(c.command);
  rep.input = input_echo(c);
  try {
    c.validate();
    switch (c.command) {
      case Command::Resolve: resolve_section(c, rep, res, true); break;
      case Command::Topology: resolve_section(c, rep, res, false); break;
      case Command::Separatrix: {
        const TruncSeries h = parse_h(c.h);
        int pp = 1;
        int qp = 1;
        if (c.p > 0 && c.q > 0) {
          const int g = std::gcd(c.p, c.q);
          if (g != c.d) throw ContractViolation("gcd(p, q) must equal d");
          pp = c.p / g;
          qp = c.q / g;
        }
        rep.separatrix = separatrix_block(c.d, c.k, h, c.truncation, pp, qp, rep.warnings);
        rep.status = "OK";
        break;
      }
      case Command::CheckTrace: {
        const TraceExclusionVerdict v = check_excluded_trace(parse_scalar(c.h0));
        rep.trace = trace_to_json(v);
        trace_warnings(v, rep.warnings);
        const bool allowed = v.status == TraceExclusionVerdict::Status::Allowed;
        rep.status = allowed ? "OK" : "EXCLUDED-TRACE";
        rep.exit_code = allowed ? kExitOk : kExitExcluded;
        break;
      }
      case Command::ClassifyLinear: {
        const LinearPartReport lr = classify_linear_part(parse_matrix(c.matrix));
        nlohmann::json diag = nlohmann::json::array();
        for (const auto& x : lr.diagonal) diag.push_back(x.to_string());
        rep.linear = {{"verdict", verdict_name(lr.verdict)},
                      {"rank", lr.rank},
                      {"diagonal", diag},
                      {"normal_form_exact", lr.normal_form_exact},
                      {"form", linear_form(lr.c).to_string()}};
        if (lr.verdict == LinearPartReport::Verdict::Kupka) {
          rep.linear["witness"] = {lr.witness.first, lr.witness.second};
        }
        rep.status = "OK";
        break;
      }
    }
  } catch (const Error& e) {
    rep.status = "ERROR";
    rep.exit_code = kExitUsage;
    rep.error = e.what();
  }
  return res;
}

}  // namespace cusp
