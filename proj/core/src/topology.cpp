#include "cusp/topology.hpp"

#include "cusp/linalg.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace cusp {

namespace {

std::string word_to_string(const Word& w, const std::vector<std::string>& gens) {
  if (w.empty()) return "1";
  std::string s;
  for (const auto& [g, e] : w) {
    s += gens.at(static_cast<std::size_t>(g));
    if (e != 1) s += "^" + std::to_string(e);
  }
  return s;
}

// Commutation relation a b = b a.
std::pair<Word, Word> commute(int a, int b) { return {{{a, 1}, {b, 1}}, {{b, 1}, {a, 1}}}; }

GroupPresentation trivial() { return {}; }

GroupPresentation cyclic(const std::string& g) { return {{g}, {}}; }

GroupPresentation torus(const std::string& a, const std::string& b) { return {{a, b}, {commute(0, 1)}}; }

GroupPresentation punctured_line_times_cstar() {
  return {{"α", "γ'", "γ''"}, {commute(0, 1), commute(0, 2)}};
}

}  // namespace

std::string GroupPresentation::to_string() const {
  std::string s = "<";
  for (std::size_t i = 0; i < generators.size(); ++i) s += (i ? ", " : "") + generators[i];
  s += " |";
  for (std::size_t i = 0; i < relations.size(); ++i) {
    s += (i ? ", " : " ") + word_to_string(relations[i].first, generators) + " = " +
         word_to_string(relations[i].second, generators);
  }
  return s + ">";
}

std::string Abelianization::to_string() const {
  std::vector<std::string> parts;
  if (free_rank == 1) parts.emplace_back("Z");
  if (free_rank > 1) parts.push_back("Z^" + std::to_string(free_rank));
  for (const auto& t : torsion) parts.push_back("Z/" + t.get_str());
  if (parts.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? " + " : "") + parts[i];
  return s;
}

Abelianization abelianize(const GroupPresentation& g) {
  const std::size_t n = g.generators.size();
  Matrix<Integer> rel;
  for (const auto& [lhs, rhs] : g.relations) {
    std::vector<Integer> row(n, Integer(0));
    for (const auto& [v, e] : lhs) row.at(static_cast<std::size_t>(v)) += e;
    for (const auto& [v, e] : rhs) row.at(static_cast<std::size_t>(v)) -= e;
    rel.push_back(std::move(row));
  }
  Abelianization a;
  int nonzero = 0;
  if (!rel.empty() && n > 0) {
    for (const auto& dval : smith_diagonal(rel)) {
      if (dval == 0) continue;
      ++nonzero;
      if (dval > 1) a.torsion.push_back(dval);
    }
  }
  a.free_rank = static_cast<int>(n) - nonzero;
  if (a.free_rank == 1 && a.torsion.empty()) {
    if (n == 1) {
      a.images = {Integer(1)};
    } else if (n == 2) {
      // Z^2 / (r1, r2) -> Z, (u, v) -> -r2 u + r1 v, normalized.
      Integer r1 = 0;
      Integer r2 = 0;
      for (const auto& row : rel) {
        if (row[0] != 0 || row[1] != 0) {
          r1 = row[0];
          r2 = row[1];
        }
      }
      Integer gg;
      mpz_gcd(gg.get_mpz_t(), r1.get_mpz_t(), r2.get_mpz_t());
      Integer u = -r2 / gg;
      Integer v = r1 / gg;
      if (u < 0 || (u == 0 && v < 0)) {
        u = -u;
        v = -v;
      }
      a.images = {u, v};
    }
  }
  return a;
}

GroupPresentation tangent_pair_presentation(int m) {
  if (m < 1) throw ContractViolation("contact order must be positive");
  return {{"α", "β"}, {{{{0, m}, {1, 1}}, {{1, 1}, {0, m}}}}};
}

GroupPresentation pi1_presentation(CaseTag c, int p, int q) {
  if (p < 1 || q < 1) throw ContractViolation("p and q must be positive");
  if (p % 2 == 1 && q % 2 == 0) std::swap(p, q);
  switch (c) {
    case CaseTag::EvenEven:
      if (p % 2 || q % 2) throw ContractViolation("EvenEven needs p and q even");
      return tangent_pair_presentation(q / 2);
    case CaseTag::EvenOdd:
      if (p % 2 || q % 2 == 0) throw ContractViolation("EvenOdd needs p even and q odd");
      return {{"α", "β"}, {{{{0, q}}, {{1, 2}}}}};
    case CaseTag::OddOdd:
      if (p % 2 == 0 || q % 2 == 0) throw ContractViolation("OddOdd needs p and q odd");
      return tangent_pair_presentation(2);
  }
  return {};
}

const DivisorNode* DivisorGraph::find(const std::string& name) const {
  for (const auto& n : nodes) {
    if (n.name == name) return &n;
  }
  return nullptr;
}

namespace {

bool is_dim3(const Classification& c) {
  return c.kind == PointKind::SimpleDim3Resonant || c.kind == PointKind::SimpleDim3Linearizable ||
         (c.kind == PointKind::SaddleNode && c.saddle_dim == 3);
}

// Index of "D<i>", 0 otherwise.
int numbered(const std::string& name) {
  if (name.size() < 2 || name[0] != 'D') return 0;
  for (std::size_t i = 1; i < name.size(); ++i) {
    if (name[i] < '0' || name[i] > '9') return 0;
  }
  return std::stoi(name.substr(1));
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

bool case1_shape(const DivisorGraph& g) {
  return g.case_tag == CaseTag::EvenEven || g.regime == "2k<d";
}

std::string edge_name(const DivisorGraph& g, std::string a, std::string b) {
  int i = numbered(a);
  int j = numbered(b);
  if (i && j) {
    if (i > j) std::swap(i, j);
    if (j == i + 1 && i != g.y_run) return "L_" + std::to_string(i);
    if (i == g.y_run) return "P_" + std::to_string(j);
  }
  if (g.case_tag == CaseTag::EvenOdd && !case1_shape(g)) {
    const std::string da = "D" + std::to_string(g.y_run);
    const int last = g.y_run + g.x_run;
    std::set<std::string> s{a, b};
    if (s == std::set<std::string>{da, "D'"}) return "P'";
    if (s == std::set<std::string>{da, "D''"}) return "P''";
    if (s == std::set<std::string>{"D'", "D''"}) return "L'";
    if (last > g.y_run && s == std::set<std::string>{"D" + std::to_string(last), "D''"}) {
      return "L_" + std::to_string(last);
    }
  }
  if (a > b) std::swap(a, b);
  return a + "∩" + b;
}

// Zero first, then by text: t = 0 is the first separatrix in the k < d' chart.
bool trace_before(const KElem& x, const KElem& y) {
  if (x.is_zero() != y.is_zero()) return x.is_zero();
  return x.to_string() < y.to_string();
}

}  // namespace

DivisorGraph build_divisor_graph(const ResolvedModel& m) {
  DivisorGraph g;
  const BlowupSchedule& s = m.schedule;
  g.case_tag = s.case_tag;
  g.regime = s.regime;
  g.p = s.p;
  g.q = s.q;
  g.k = s.k;
  std::size_t i = 0;
  while (i < s.steps.size() && s.steps[i].kind == StepKind::Line && s.steps[i].axis == 1 &&
         s.steps[i].chart == LineChart::Main) {
    ++g.y_run;
    ++i;
  }
  while (i < s.steps.size() && s.steps[i].kind == StepKind::Line && s.steps[i].axis == 0 &&
         s.steps[i].chart == LineChart::Main && s.steps[i].branch < 0) {
    ++g.x_run;
    ++i;
  }
  if (g.case_tag == CaseTag::OddOdd && !case1_shape(g)) {
    g.distinguished = "P";
  } else {
    g.distinguished = "D" + std::to_string(g.y_run);
  }
  const auto& comps = m.tree.components();
  const std::set<std::string> exc(comps.begin(), comps.end());
  for (const auto& c : comps) {
    DivisorNode n;
    n.name = c;
    if (c == "P" || c == "D'" || c == "D''") {
      n.role = c;
    } else if (c.rfind("D'(", 0) == 0) {
      n.role = "D'";
    } else if (c.rfind("D''(", 0) == 0) {
      n.role = "D''";
    } else if (const int idx = numbered(c)) {
      n.role = idx <= g.y_run ? "y-run" : "x-run";
    } else {
      n.role = "extra";
    }
    g.nodes.push_back(std::move(n));
  }
  g.expected_nodes = s.expected_component_count + m.extra_steps;
  if (m.extra_steps == 0) {
    const int a = g.y_run;
    const int b = g.x_run;
    int e = std::max(a - 1, 0) + (a > 0 ? b : 0) + std::max(b - 1, 0);
    if (!case1_shape(g)) {
      if (g.case_tag == CaseTag::EvenOdd) e += b > 0 ? 4 : 3;
      if (g.case_tag == CaseTag::OddOdd) e += 6 + (a > 0 ? 2 : 0) + (b > 0 ? 2 : 0);
    }
    g.expected_edges = e;
  }

  auto exceptional_of = [&](const std::vector<std::string>& labels, bool& other) {
    std::vector<std::string> out;
    other = false;
    for (const auto& l : labels) {
      if (exc.count(l)) {
        out.push_back(l);
      } else {
        other = true;
      }
    }
    return out;
  };

  // Edges and traces.
  std::set<std::pair<std::string, std::string>> seen;
  struct TraceRec {
    const SingularLine* line;
    KElem key;
  };
  std::map<std::string, std::vector<TraceRec>> by_comp;
  std::vector<const SingularLine*> trace_lines;
  for (const auto& l : m.lines) {
    bool other = false;
    auto ex = exceptional_of(l.components, other);
    if (other) continue;
    if (ex.size() == 2) {
      auto key = std::minmax(ex[0], ex[1]);
      if (seen.insert({key.first, key.second}).second) {
        g.edges.push_back({key.first, key.second, edge_name(g, key.first, key.second)});
      }
    } else if (ex.size() == 1) {
      const ChartNode& node = m.tree.node(l.node);
      KElem key;
      for (std::size_t j = 0; j < 2; ++j) {
        if (node.labels[l.fixed[j]] != ex[0]) key = l.values[j];
      }
      by_comp[ex[0]].push_back({&l, key});
    }
  }
  const std::string da = g.distinguished;
  const std::string last = "D" + std::to_string(g.y_run + g.x_run);
  std::map<const SingularLine*, std::string> trace_name;
  for (const auto& n : g.nodes) {
    auto it = by_comp.find(n.name);
    if (it == by_comp.end()) continue;
    auto& recs = it->second;
    std::stable_sort(recs.begin(), recs.end(),
                     [](const TraceRec& x, const TraceRec& y) { return trace_before(x.key, y.key); });
    for (std::size_t j = 0; j < recs.size(); ++j) {
      std::string name;
      const std::string primes = j == 0 ? "'" : (j == 1 ? "''" : "'''" + std::to_string(j));
      if (case1_shape(g) && recs.size() <= 2 && n.name == da) {
        name = "M" + primes;
      } else if (case1_shape(g) && recs.size() <= 2 && n.name == last) {
        name = "L" + primes;
      } else if (g.case_tag == CaseTag::EvenOdd && !case1_shape(g) && recs.size() == 1 && n.name == da) {
        name = "M";
      } else if (g.case_tag == CaseTag::EvenOdd && !case1_shape(g) && recs.size() == 1 && n.name == "D''") {
        name = "L";
      } else if (n.name == "P" && recs.size() == 1) {
        name = "C";
      } else {
        name = "S" + (recs.size() > 1 ? std::to_string(j + 1) : std::string()) + "∩" + n.name;
      }
      trace_name[recs[j].line] = name;
      g.traces.push_back({n.name, name, recs[j].line->chart, recs[j].line->equations});
    }
  }
  for (auto& n : g.nodes) n.separatrix_traces = static_cast<int>(by_comp.count(n.name) ? by_comp[n.name].size() : 0);

  // Marked points.
  for (const auto& pt : m.points) {
    if (!is_dim3(pt.classification)) continue;
    bool other = false;
    auto ex = exceptional_of(pt.components, other);
    if (other || ex.size() < 2) continue;
    MarkedPoint mp;
    mp.components = ex;
    mp.chart = pt.chart;
    mp.coords = pt.coords_text();
    mp.kind = pt.classification.kind;
    std::string via;  // name of a trace through the point, preferring the last component
    for (const auto& [line, name] : trace_name) {
      if (line->node != pt.node) continue;
      if (pt.coords[line->fixed[0]] == line->values[0] && pt.coords[line->fixed[1]] == line->values[1]) {
        mp.on_separatrix = true;
        if (via.empty() || name[0] == 'L') via = name;
      }
    }
    std::vector<std::string> sorted = ex;
    std::sort(sorted.begin(), sorted.end());
    if (mp.on_separatrix && ex.size() == 2 && case1_shape(g) && via.size() > 1 && via[0] == 'L') {
      mp.name = "m" + via.substr(1);
    } else if (mp.on_separatrix && ex.size() == 2 && g.case_tag == CaseTag::EvenOdd && !case1_shape(g)) {
      mp.name = "m";
    } else if (ex.size() == 3 && std::find(ex.begin(), ex.end(), da) != ex.end()) {
      std::vector<int> idx;
      for (const auto& c : ex) {
        if (c != da && numbered(c)) idx.push_back(numbered(c));
      }
      std::sort(idx.begin(), idx.end());
      const bool has_dp = std::find(ex.begin(), ex.end(), "D'") != ex.end();
      const bool has_dpp = std::find(ex.begin(), ex.end(), "D''") != ex.end();
      if (idx.size() == 2 && idx[1] == idx[0] + 1) {
        mp.name = "m_" + std::to_string(idx[0]);
      } else if (idx.size() == 1 && has_dpp && g.case_tag == CaseTag::EvenOdd) {
        mp.name = "m_" + std::to_string(idx[0]);
      } else if (has_dp && has_dpp) {
        mp.name = "m'";
      }
    }
    if (mp.name.empty()) mp.name = "m(" + join(sorted, ",") + (mp.on_separatrix ? ",S" : "") + ")";
    g.marked.push_back(std::move(mp));
  }

  // Connectivity.
  if (!g.nodes.empty()) {
    std::set<std::string> reached{g.nodes.front().name};
    bool grew = true;
    while (grew) {
      grew = false;
      for (const auto& e : g.edges) {
        if (reached.count(e.a) != reached.count(e.b)) {
          reached.insert(e.a);
          reached.insert(e.b);
          grew = true;
        }
      }
    }
    g.connected = reached.size() == g.nodes.size();
  }
  return g;
}

void component_topologies(DivisorGraph& g) {
  const int a = g.y_run;
  const int last = g.y_run + g.x_run;
  const int d = std::gcd(g.p, g.q);
  const bool shape1 = case1_shape(g);
  const std::string cusp_complement = "ℂ²∖𝒞";
  for (auto& n : g.nodes) {
    const int i = numbered(n.name);
    n.expected_traces = 0;
    n.extrapolated = g.case_tag == CaseTag::OddOdd && n.name != "P";
    if (n.name == g.distinguished && n.name != "P") {
      n.topology = cusp_complement;
      if (shape1) {
        const int m = g.regime == "k>d'" || g.regime == "k=d'" ? g.q / 2 : g.k * (g.q / d);
        n.pi1 = tangent_pair_presentation(m);
        n.loops = "α around both separatrix traces in a transversal line, β around the origin of t = 0";
        n.expected_traces = 2;
      } else {
        n.pi1 = pi1_presentation(CaseTag::EvenOdd, g.p, g.q);
        n.loops = "α around the cusp trace in a transversal line, β around the origin of t = 0";
        n.expected_traces = 1;
      }
    } else if (n.name == "P") {
      n.topology = "ℙ²∖(two lines + tangent conic)";
      n.pi1 = pi1_presentation(CaseTag::OddOdd, g.p, g.q);
      n.loops = "α, β around the conic and a line";
      n.expected_traces = 1;
    } else if (i && i == last && shape1) {
      n.topology = "(ℂ∖{2 pts})×ℂ*";
      n.pi1 = punctured_line_times_cstar();
      n.loops = "α around P_" + std::to_string(i) + ", γ', γ'' around the separatrix traces";
      n.expected_traces = 2;
    } else if (i && i == 1 && i <= a) {
      n.topology = "ℂ×ℂ";
      n.pi1 = trivial();
      n.loops = "simply connected";
    } else if (i && i <= a) {
      n.topology = "ℂ*×ℂ";
      n.pi1 = cyclic("γ_" + std::to_string(i));
      n.loops = "γ_" + std::to_string(i) + " around L_" + std::to_string(i);
    } else if (i && i == a + 1) {
      n.topology = "ℂ*×ℂ";
      n.pi1 = cyclic("α_" + std::to_string(i));
      n.loops = "α_" + std::to_string(i) + " around P_" + std::to_string(i);
    } else if (i && i > a + 1) {
      n.topology = "ℂ*×ℂ*";
      n.pi1 = torus("γ_" + std::to_string(i), "α_" + std::to_string(i));
      n.loops = "γ_" + std::to_string(i) + " around L_" + std::to_string(i) + ", α_" + std::to_string(i) +
                " around P_" + std::to_string(i);
      // No template covers the last x-run component of the odd case.
      if (g.case_tag == CaseTag::EvenOdd && i == last) n.extrapolated = true;
    } else if (n.role == "D''") {
      // Carries the separatrix trace in the executed schedule.
      n.topology = "(ℂ∖{2 pts})×ℂ*";
      n.pi1 = punctured_line_times_cstar();
      n.loops = "α around the divisor fiber, γ', γ'' around the two punctures";
      n.expected_traces = 1;
    } else if (n.role == "D'") {
      n.topology = "ℂ×ℂ*";
      n.pi1 = cyclic("α");
      n.loops = "α around the divisor fiber";
    } else {
      n.topology = "unlabeled";
      n.extrapolated = true;
      n.expected_traces = n.separatrix_traces;
    }
  }
  g.mismatches.clear();
  if (static_cast<int>(g.nodes.size()) != g.expected_nodes) {
    g.mismatches.push_back("component count " + std::to_string(g.nodes.size()) + ", schedule expects " +
                           std::to_string(g.expected_nodes));
  }
  if (g.expected_edges && static_cast<int>(g.edges.size()) != *g.expected_edges) {
    g.mismatches.push_back("intersection curve count " + std::to_string(g.edges.size()) + ", schedule expects " +
                           std::to_string(*g.expected_edges));
  }
  if (!g.connected) g.mismatches.push_back("divisor graph is not connected");
  for (const auto& n : g.nodes) {
    if (n.separatrix_traces != n.expected_traces) {
      g.mismatches.push_back(n.name + " carries " + std::to_string(n.separatrix_traces) +
                             " separatrix traces, label " + n.topology + " requires " +
                             std::to_string(n.expected_traces));
    }
  }
  if (!g.census_ok()) throw CensusMismatch("census mismatch: " + join(g.mismatches, "; "));
}

HolonomyConstraints holonomy_constraints(int p, int q) {
  if (p < 1 || q < 1) throw ContractViolation("p and q must be positive");
  HolonomyConstraints h;
  if (p % 2 == 1 && q % 2 == 0) {
    std::swap(p, q);
    h.note = "p and q swapped so that p is even. ";
  }
  h.p = p;
  h.q = q;
  if (p % 2 == 1) {
    h.note += "no holonomy constraint is derived when p and q are odd";
    return h;
  }
  h.applicable = true;
  auto make = [](std::string name, int order, Rational rot) {
    HolonomyGenerator g;
    g.name = std::move(name);
    g.order = order;
    rot.canonicalize();
    g.rotation = rot;
    Rational red = rot - Rational(Integer(rot.get_num() / rot.get_den()));
    if (red < 0) red += 1;
    red.canonicalize();
    g.reduced = red;
    g.root_order = static_cast<int>(red.get_den().get_si());
    return g;
  };
  h.generators.push_back(make("h_α", p / 2, Rational(-(p - 2), p)));
  if (q % 2 == 1) {
    const int d = std::gcd(p, q);
    h.generators.push_back(make("h_β", p / d, Rational(q / d, p / d)));
  } else {
    h.note += "h_β is unconstrained when q is even";
  }
  return h;
}

std::string graph_to_dot(const DivisorGraph& g) {
  std::ostringstream os;
  os << "graph divisor {\n  node [shape=box];\n";
  for (const auto& n : g.nodes) {
    os << "  \"" << n.name << "\" [label=\"" << n.name << "\\n" << n.topology << "\"];\n";
  }
  for (const auto& e : g.edges) {
    os << "  \"" << e.a << "\" -- \"" << e.b << "\" [label=\"" << e.name << "\"];\n";
  }
  for (std::size_t i = 0; i < g.marked.size(); ++i) {
    const auto& mp = g.marked[i];
    const std::string id = "mark" + std::to_string(i);
    os << "  \"" << id << "\" [shape=point, xlabel=\"" << mp.name << "\"];\n";
    for (const auto& c : mp.components) os << "  \"" << c << "\" -- \"" << id << "\" [style=dotted];\n";
  }
  os << "}\n";
  return os.str();
}

nlohmann::json presentation_to_json(const GroupPresentation& g) {
  nlohmann::json rels = nlohmann::json::array();
  for (const auto& [l, r] : g.relations) {
    rels.push_back(word_to_string(l, g.generators) + " = " + word_to_string(r, g.generators));
  }
  const Abelianization ab = abelianize(g);
  nlohmann::json abj{{"free_rank", ab.free_rank}, {"text", ab.to_string()}};
  nlohmann::json tors = nlohmann::json::array();
  for (const auto& t : ab.torsion) tors.push_back(t.get_str());
  abj["torsion"] = tors;
  if (!ab.images.empty()) {
    nlohmann::json im = nlohmann::json::object();
    for (std::size_t i = 0; i < ab.images.size(); ++i) im[g.generators[i]] = ab.images[i].get_si();
    abj["images"] = im;
  }
  return {{"generators", g.generators}, {"relations", rels}, {"text", g.to_string()}, {"abelianization", abj}};
}

nlohmann::json graph_to_json(const DivisorGraph& g) {
  nlohmann::json nodes = nlohmann::json::array();
  for (const auto& n : g.nodes) {
    nodes.push_back({{"name", n.name},
                     {"role", n.role},
                     {"topology", n.topology},
                     {"loops", n.loops},
                     {"pi1", presentation_to_json(n.pi1)},
                     {"separatrix_traces", n.separatrix_traces},
                     {"expected_traces", n.expected_traces},
                     {"extrapolated", n.extrapolated}});
  }
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : g.edges) edges.push_back({{"a", e.a}, {"b", e.b}, {"name", e.name}});
  nlohmann::json traces = nlohmann::json::array();
  for (const auto& t : g.traces) {
    traces.push_back({{"component", t.component}, {"name", t.name}, {"chart", t.chart}, {"equations", t.equations}});
  }
  nlohmann::json marked = nlohmann::json::array();
  for (const auto& mp : g.marked) {
    marked.push_back({{"name", mp.name},
                      {"components", mp.components},
                      {"on_separatrix", mp.on_separatrix},
                      {"chart", mp.chart},
                      {"coords", mp.coords},
                      {"kind", point_kind_name(mp.kind)}});
  }
  nlohmann::json j{{"case", case_tag_name(g.case_tag)},
                   {"regime", g.regime},
                   {"distinguished", g.distinguished},
                   {"nodes", nodes},
                   {"edges", edges},
                   {"separatrix_traces", traces},
                   {"marked_points", marked},
                   {"connected", g.connected},
                   {"expected_nodes", g.expected_nodes},
                   {"mismatches", g.mismatches}};
  j["expected_edges"] = g.expected_edges ? nlohmann::json(*g.expected_edges) : nlohmann::json();
  return j;
}

nlohmann::json holonomy_to_json(const HolonomyConstraints& h) {
  nlohmann::json gens = nlohmann::json::array();
  for (const auto& g : h.generators) {
    gens.push_back({{"name", g.name},
                    {"order", g.order},
                    {"rotation", rational_to_string(g.rotation)},
                    {"rotation_mod_1", rational_to_string(g.reduced)},
                    {"root_order", g.root_order}});
  }
  return {{"p", h.p}, {"q", h.q}, {"applicable", h.applicable}, {"generators", gens}, {"note", h.note}};
}

}  // namespace cusp
