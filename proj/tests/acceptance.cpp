// One PASS/FAIL line per acceptance criterion; exit status is the number of failures.

#include "cusp/blowup.hpp"
#include "cusp/errors.hpp"
#include "cusp/foliation.hpp"
#include "cusp/forms.hpp"
#include "cusp/parse.hpp"
#include "cusp/report.hpp"
#include "cusp/resolution.hpp"
#include "cusp/separatrix.hpp"
#include "cusp/topology.hpp"

#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

using namespace cusp;

namespace {

struct GridCase {
  int p, q, k;
};

// The acceptance grid; (9, 6) is read after the swap as (6, 9).
const std::vector<GridCase>& grid() {
  static const std::vector<GridCase> g = {
      {2, 2, 2}, {2, 4, 2}, {4, 6, 2}, {6, 4, 2},  // even-even, k > d'
      {4, 4, 1}, {9, 6, 1},                        // 2k < d
      {2, 3, 1}, {4, 3, 1}, {2, 5, 1},             // even-odd
      {1, 1, 1}, {3, 3, 2}, {3, 5, 1},             // odd-odd
  };
  return g;
}

const std::vector<std::string>& grid_h() {
  static const std::vector<std::string> h = {"1", "1+u"};
  return h;
}

TruncSeries series(const std::string& text) { return TruncSeries::exact(parse_univariate(text, "u")); }

SparsePoly upow(int n) {
  Exponent e{};
  e[0] = static_cast<std::uint16_t>(n);
  return SparsePoly::monomial(VarList{"u"}, e);
}

bool low_terms_vanish(const SparsePoly& f, int below) {
  for (const auto& [e, c] : f.terms()) {
    if (e[0] < below && !c.is_zero()) return false;
  }
  return true;
}

bool integrable(const KForm& w) { return wedge(w, exterior_derivative(w)).is_zero(); }

struct Outcome {
  bool pass = false;
  std::string detail;
};

// 1. Composite strict transform of (2, 2, 2, 1) against the expanded bracket.
Outcome pullback_closed_form() {
  const ResolvedModel m = resolve(build_omega(2, 2, 2, series("1")));
  const ChartNode& leaf = m.tree.node(m.final_node);
  const VarList& v = leaf.chart.vars;
  const std::string t = v.names()[2];
  auto sub = [&](std::string s) {
    for (std::size_t i = s.find('t'); i != std::string::npos; i = s.find('t', i + t.size())) s.replace(i, 1, t);
    return parse_poly(s, v);
  };
  const KForm bracket = KForm::one_form(
      leaf.chart, {sub("2*y + 2*y*t^2 + x*y^2*t"), sub("2*x + 2*x*t^2 + x^2*y*t"), sub("2*x*y*t + x^2*y^2")});
  const bool ok = leaf.form == bracket;
  return {ok, "chart " + leaf.chart.name + ": " + leaf.form.to_string()};
}

int expected_components(int p, int q, int k) {
  if (p % 2 == 1 && q % 2 == 0) std::swap(p, q);
  const int d = std::gcd(p, q);
  if (2 * k < d) return k * (p / d) + k * (q / d);
  if (p % 2 == 0 && q % 2 == 0) return (p + q) / 2;
  if (p % 2 == 0) return p / 2 + (q - 1) / 2 + 2;
  return (p - 1) / 2 + (q - 1) / 2 + 5;
}

// 2. Component census against the closed-form counts.
Outcome schedule_census() {
  std::ostringstream bad;
  for (const auto& c : grid()) {
    for (const auto& h : grid_h()) {
      const ResolvedModel m = resolve(build_omega(c.p, c.q, c.k, series(h)));
      const int got = static_cast<int>(m.tree.components().size());
      const int want = expected_components(c.p, c.q, c.k);
      if (got != want || m.schedule.expected_component_count != want) {
        bad << " (" << c.p << "," << c.q << "," << c.k << ",h=" << h << "): " << got << " vs " << want;
      }
    }
  }
  return {bad.str().empty(), bad.str().empty() ? "all grid cases match" : bad.str()};
}

// 3. Only simple points; saddle-nodes only for 2k < d and always flagged.
Outcome reducedness() {
  std::ostringstream bad;
  int points = 0, saddles = 0;
  for (const auto& c : grid()) {
    for (const auto& h : grid_h()) {
      const ResolvedModel m = resolve(build_omega(c.p, c.q, c.k, series(h)));
      const bool small_k = m.schedule.regime == "k<d'" || m.schedule.regime == "2k<d";
      if (!m.reduced || !m.incomplete.empty()) bad << " (" << c.p << "," << c.q << "," << c.k << ") not reduced";
      for (const auto& pt : m.points) {
        ++points;
        const auto& cl = pt.classification;
        switch (cl.kind) {
          case PointKind::SimpleDim2:
          case PointKind::SimpleDim3Resonant:
          case PointKind::SimpleDim3Linearizable:
            break;
          case PointKind::SaddleNode:
            ++saddles;
            if (!small_k || cl.center_manifold_flag.empty()) {
              bad << " unexpected saddle-node at " << pt.chart << pt.coords_text();
            }
            break;
          case PointKind::NotSimple:
            bad << " NotSimple at " << pt.chart << pt.coords_text();
            break;
        }
      }
    }
  }
  std::ostringstream ok;
  ok << points << " points, " << saddles << " flagged saddle-nodes, 0 NotSimple";
  return {bad.str().empty(), bad.str().empty() ? ok.str() : bad.str()};
}

// 4. w ∧ dw = 0 at every stage and on every chart.
Outcome integrability() {
  std::ostringstream bad;
  int stages = 0;
  for (const auto& c : grid()) {
    for (const auto& h : grid_h()) {
      const ResolvedModel m = resolve(build_omega(c.p, c.q, c.k, series(h)));
      if (!integrable(m.foliation.omega)) bad << " original (" << c.p << "," << c.q << "," << c.k << ")";
      for (const auto& st : m.stages) {
        ++stages;
        if (!st.integrable || !integrable(m.tree.node(st.node).form)) {
          bad << " stage " << m.tree.node(st.node).chart.name << " of (" << c.p << "," << c.q << "," << c.k << ")";
        }
      }
      if (!m.integrable_everywhere) bad << " tree of (" << c.p << "," << c.q << "," << c.k << ")";
    }
  }
  return {bad.str().empty(), bad.str().empty() ? std::to_string(stages) + " stages integrable" : bad.str()};
}

// 5. Trace exclusion examples and the reciprocal form h0 = 2(sqrt(r) + 1/sqrt(r)).
Outcome trace_exclusion() {
  using S = TraceExclusionVerdict::Status;
  std::ostringstream bad;
  auto verdict = [](const std::string& h0) { return check_excluded_trace(parse_scalar(h0)); };
  if (verdict("4").status != S::SaddleNodeBoundary) bad << " h0=4";
  if (verdict("-4").status != S::SaddleNodeBoundary) bad << " h0=-4";
  const auto v5 = verdict("5");
  if (v5.status != S::ExcludedAt || !v5.r || *v5.r != 24 || (16 + *v5.r) * (16 + *v5.r) / (16 + 2 * *v5.r) != 25) {
    bad << " h0=5";
  }
  for (const std::string h0 : {"1", "3", "7/2"}) {
    if (verdict(h0).status != S::Allowed) bad << " h0=" << h0;
  }
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> den(1, 97);
  for (int t = 0; t < 200; ++t) {
    const int b = den(rng);
    std::uniform_int_distribution<int> num(1, b);
    Rational r(num(rng), b);
    r.canonicalize();
    const Rational c2 = 4 * (r + 2 + 1 / r);
    const auto v = check_excluded_trace_squared(GaussianRational(c2));
    const bool boundary = r == 1;
    const bool ok = boundary ? v.status == S::SaddleNodeBoundary : v.status == S::ExcludedAt;
    if (!ok || !v.r || (16 + *v.r) * (16 + *v.r) / (16 + 2 * *v.r) != c2) {
      bad << " r=" << r;
      break;
    }
  }
  return {bad.str().empty(), bad.str().empty() ? "examples and 200 samples agree" : bad.str()};
}

// Omega ∧ dW modulo W, written out by hand for Omega = d(z^2 + u^d) + u^k h dz.
bool residual_vanishes(int d, int k, const SparsePoly& h, const SparsePoly& a, const SparsePoly& b, int below) {
  const SparsePoly da = a.derivative(0);
  const SparsePoly db = b.derivative(0);
  const SparsePoly ud1 = upow(d - 1) * GaussianRational(d);
  const SparsePoly ukh = upow(k) * h;
  const GaussianRational two(2);
  const SparsePoly r1 = da * a * two + ud1 * two - db * two - ukh * da;
  const SparsePoly r0 = da * b * two + ud1 * a - ukh * db;
  return low_terms_vanish(r1, below) && low_terms_vanish(r0, below);
}

// 6. Separatrix exponent and residual on (d, k) in {1..6}^2.
Outcome separatrix_exponent_grid() {
  std::ostringstream bad;
  const int N = 16;
  for (int d = 1; d <= 6; ++d) {
    for (int k = 1; k <= 6; ++k) {
      for (const std::string h : {"1", "1+u"}) {
        const int order = std::max(N, std::max(d, 2 * k) + 2);
        const auto s = solve_formal_separatrix(d, k, series(h), order);
        const int r = tschirnhausen(s.a, s.b).r;
        const int want = 2 * k >= d ? d : 2 * k;
        if (r != want) bad << " (" << d << "," << k << ") r=" << r;
        if (!residual_vanishes(d, k, series(h).poly(), s.a.poly(), s.b.poly(), N)) {
          bad << " (" << d << "," << k << ") residual";
        }
      }
      const auto z = solve_formal_separatrix(d, k, series("0"), std::max(N, std::max(d, 2 * k) + 2));
      if (!z.a.poly().is_zero() || z.b.poly() != upow(d)) bad << " (" << d << "," << k << ") h=0";
    }
  }
  return {bad.str().empty(), bad.str().empty() ? "36 pairs, h in {1, 1+u, 0}" : bad.str()};
}

// 7. The three distinguished relations, verbatim, and their abelianizations.
Outcome presentations() {
  std::ostringstream bad;
  const std::vector<std::tuple<CaseTag, int, int, std::string>> want = {
      {CaseTag::EvenEven, 2, 4, "<α, β | α^2β = βα^2>"},  // alpha^(q/2) beta = beta alpha^(q/2)
      {CaseTag::EvenOdd, 2, 3, "<α, β | α^3 = β^2>"},     // alpha^q = beta^2
      {CaseTag::OddOdd, 3, 5, "<α, β | α^2β = βα^2>"},    // alpha^2 beta = beta alpha^2
  };
  for (const auto& [c, p, q, text] : want) {
    const auto g = pi1_presentation(c, p, q);
    if (g.to_string() != text) bad << " " << g.to_string();
    const auto ab = abelianize(g);
    if (c == CaseTag::EvenOdd) {
      if (ab.free_rank != 1 || !ab.torsion.empty() || ab.images.size() != 2 || ab.images[0] != 2 || ab.images[1] != q) {
        bad << " abelianization " << ab.to_string();
      }
    } else if (ab.free_rank != 2 || !ab.torsion.empty()) {
      bad << " abelianization " << ab.to_string();
    }
  }
  return {bad.str().empty(), bad.str().empty() ? "relations verbatim; Z^2, Z (2, q), Z^2" : bad.str()};
}

// 8. Holonomy orders and rotation numbers.
Outcome holonomy() {
  std::ostringstream bad;
  for (int p : {2, 4, 6}) {
    const auto h = holonomy_constraints(p, 1);
    const auto& a = h.generators.at(0);
    Rational want(-(p - 2), p);
    want.canonicalize();
    Rational diff = a.rotation - want;
    diff.canonicalize();
    Rational red = a.reduced - want;
    red.canonicalize();
    if (diff != 0 || red.get_den() != 1 || (p / 2) % a.order != 0 || (p / 2) % a.root_order != 0) {
      bad << " p=" << p;
    }
  }
  const auto h43 = holonomy_constraints(4, 3);
  const int pp = 4 / std::gcd(4, 3), qp = 3 / std::gcd(4, 3);
  if (h43.generators.size() != 2) {
    bad << " (4,3) h_beta missing";
  } else {
    const auto& b = h43.generators[1];
    Rational red = b.reduced - Rational(qp, pp);
    red.canonicalize();
    if (red.get_den() != 1 || pp % b.order != 0 || pp % b.root_order != 0) bad << " (4,3) h_beta";
  }
  return {bad.str().empty(), bad.str().empty() ? "h_alpha for p = 2, 4, 6; h_beta for (4, 3)" : bad.str()};
}

// 9. W(u, z*sqrt(f) - a/2) = f (z^2 + u^r), checked by substituting directly.
Outcome normalization() {
  std::ostringstream bad;
  const VarList uz{"u", "z"};
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> coef(-6, 6);
  std::uniform_int_distribution<int> rdist(1, 8);
  int done = 0;
  while (done < 20) {
    SparsePoly a(VarList{"u"}), f(VarList{"u"});
    for (int j = 1; j <= 5; ++j) a += upow(j) * GaussianRational(Rational(coef(rng), 2));
    const int root = coef(rng);
    if (root == 0) continue;
    f += upow(0) * GaussianRational(root * root);
    for (int j = 1; j <= 4; ++j) f += upow(j) * GaussianRational(coef(rng));
    const int r = rdist(rng);
    const SparsePoly b = a * a * GaussianRational(Rational(1, 4)) + upow(r) * f;
    const auto t = tschirnhausen(TruncSeries(a), TruncSeries(b));
    const auto m = normalization_map(1, 1, r, TruncSeries(a), t.f);
    const int N = m.order;
    const SparsePoly u = SparsePoly::variable(uz, 0);
    const SparsePoly z = SparsePoly::variable(uz, 1);
    const SparsePoly g = m.sqrt_f.poly().embed(uz);
    const SparsePoly z_new = z * g - a.embed(uz) * GaussianRational(Rational(1, 2));
    const SparsePoly w_after = z_new * z_new + a.embed(uz) * z_new + b.embed(uz);
    const SparsePoly want = f.embed(uz) * (z * z + u.pow(static_cast<unsigned>(r)));
    if (t.r != r || !low_terms_vanish(w_after - want, N + 1) || !m.verified) {
      bad << " a=" << a.to_string() << " r=" << r;
    }
    ++done;
  }
  return {bad.str().empty(), bad.str().empty() ? "20 random pairs" : bad.str()};
}

std::string grid_reports() {
  std::string all;
  for (const auto& c : grid()) {
    for (const auto& h : grid_h()) {
      RunConfig cfg;
      cfg.command = Command::Resolve;
      cfg.p = c.p;
      cfg.q = c.q;
      cfg.k = c.k;
      cfg.h = h;
      const RunResult res = run(cfg);
      all += serialize(res.report);
      all += res.dot;
    }
  }
  return all;
}

// 10. Byte-identical reports across two runs of the grid.
Outcome determinism() {
  const std::string first = grid_reports();
  const std::string second = grid_reports();
  return {first == second, std::to_string(first.size()) + " bytes"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"pull-back closed form", pullback_closed_form},
      {"schedule census", schedule_census},
      {"reducedness", reducedness},
      {"integrability conservation", integrability},
      {"trace exclusion", trace_exclusion},
      {"separatrix exponent", separatrix_exponent_grid},
      {"presentations", presentations},
      {"holonomy constraints", holonomy},
      {"normalization map", normalization},
      {"determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << ": " << o.detail << "\n";
  }
  return failures;
}
