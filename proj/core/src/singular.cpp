#include "cusp/singular.hpp"

#include "cusp/linalg.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <map>
#include <set>

namespace cusp {

std::string point_kind_name(PointKind k) {
  switch (k) {
    case PointKind::SimpleDim2: return "SimpleDim2";
    case PointKind::SimpleDim3Resonant: return "SimpleDim3Resonant";
    case PointKind::SimpleDim3Linearizable: return "SimpleDim3Linearizable";
    case PointKind::SaddleNode: return "SaddleNode";
    case PointKind::NotSimple: return "NotSimple";
  }
  return "?";
}

bool is_simple(const Classification& c) { return c.kind != PointKind::NotSimple; }

namespace {

Exponent unit_exp(std::size_t i) {
  Exponent e{};
  e[i] = 1;
  return e;
}

Exponent pair_exp(std::size_t i, std::size_t j) {
  Exponent e{};
  ++e[i];
  ++e[j];
  return e;
}

Classification not_simple(std::string reason) {
  Classification c;
  c.kind = PointKind::NotSimple;
  c.reason = std::move(reason);
  return c;
}

std::array<std::size_t, 2> others(std::size_t m) {
  std::array<std::size_t, 2> r{};
  std::size_t k = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    if (i != m) r[k++] = i;
  }
  return r;
}

/// Negative rational, as an element that may live in an extension.
bool is_negative_rational(const KElem& x) { return x.is_rational() && sgn(x.a().re()) < 0; }
bool is_positive_rational(const KElem& x) { return x.is_rational() && sgn(x.a().re()) > 0; }

Classification classify_linear(const Matrix<KElem>& c) {
  bool symmetric = true;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) {
      if (!(c[i][j] == c[j][i])) symmetric = false;
    }
  }
  std::vector<KElem> axis;
  if (!symmetric) {
    // Kernel of d(omega_1) = sum_{i<j} (c_ji - c_ij) dv_i ^ dv_j.
    const KElem b01 = c[1][0] - c[0][1];
    const KElem b02 = c[2][0] - c[0][2];
    const KElem b12 = c[2][1] - c[1][2];
    axis = {b12, -b02, b01};
  } else {
    const int r = rank(c);
    if (r == 1) return not_simple("symmetric linear part of rank 1 (nilpotent transversal type)");
    if (r == 3) return not_simple("symmetric linear part of rank 3 (isolated Morse type)");
    axis = *kernel_vector(c);
  }
  std::size_t m = 0;
  while (m < 3 && axis[m].is_zero()) ++m;
  const auto [u, w] = others(m);
  // Restriction a du + b dw to {v_m = 0}; dual field b d/du - a d/dw.
  const KElem tr = c[w][u] - c[u][w];
  const KElem det = c[u][u] * c[w][w] - c[w][u] * c[u][w];
  if (tr.is_zero() && det.is_zero()) return not_simple("nilpotent transversal linear part");
  Classification out;
  if (det.is_zero()) {
    out.kind = PointKind::SaddleNode;
    out.saddle_dim = 2;
    out.center_manifold_flag = "NOT-COMPUTED";
    out.eigenratio = "0";
    return out;
  }
  const KElem s = tr * tr / det;  // rho + 2 + 1/rho for the field's eigenvalue ratio rho
  std::optional<GaussianRational> rho;
  if (s.in_base()) {
    const GaussianRational sb = s.a();
    if (auto root = (sb * (sb - GaussianRational(4))).sqrt()) {
      rho = ((sb - GaussianRational(2)) + *root) * GaussianRational(Rational(1, 2));
    }
  }
  if (rho && rho->is_real() && sgn(rho->re()) > 0) {
    Classification ns = not_simple("positive rational eigenvalue ratio of the transversal vector field");
    ns.eigenratio = (-*rho).to_string();
    return ns;
  }
  out.kind = PointKind::SimpleDim2;
  out.eigenratio = rho ? (-*rho).to_string() : "root of r^2 + (" + (s - KElem(2)).to_string() + ")*r + 1";
  return out;
}

/// Substitutes var := phi (phi free of var), truncating at total degree < order.
SparsePoly substitute_truncated(const SparsePoly& p, std::size_t var, const SparsePoly& phi, int order) {
  std::map<int, SparsePoly> slices;
  for (const auto& [e, c] : p.terms()) {
    Exponent r = e;
    r[var] = 0;
    auto [it, inserted] = slices.try_emplace(e[var], p.vars());
    it->second.add_term(r, c);
  }
  SparsePoly out(p.vars());
  SparsePoly power = SparsePoly::constant(p.vars(), 1);
  int k = 0;
  for (const auto& [deg, slice] : slices) {
    while (k < deg) {
      power = power.mul_truncated(phi, order);
      ++k;
    }
    out += slice.mul_truncated(power, order);
  }
  return out;
}

struct CenterManifold {
  bool ok = false;
  SparsePoly phi;
  std::string note;
};

/// Formal invariant graph v_s = phi(v_x, v_y) tangent to the plane given by
/// the linear part `phi1`, solved degree by degree.
CenterManifold formal_center_manifold(const std::array<SparsePoly, 3>& a, std::size_t ix, std::size_t iy,
                                      std::size_t is, const SparsePoly& phi1, const GaussianRational& alpha,
                                      int order) {
  CenterManifold cm;
  SparsePoly phi = phi1;
  auto residuals = [&](const SparsePoly& f, int ord) {
    const SparsePoly as = substitute_truncated(a[is], is, f, ord);
    const SparsePoly e1 = substitute_truncated(a[ix], is, f, ord) + as.mul_truncated(f.derivative(ix), ord);
    const SparsePoly e2 = substitute_truncated(a[iy], is, f, ord) + as.mul_truncated(f.derivative(iy), ord);
    return std::pair{e1, e2};
  };
  const SparsePoly ylin = SparsePoly::variable(phi.vars(), iy);
  for (int n = 2; n <= order; ++n) {
    auto [e1, e2] = residuals(phi, n + 2);
    // Degree n+1 of E1 is (known) + alpha * y * phi_n.
    const SparsePoly known = e1.homogeneous_part(n + 1);
    auto q = known.divide_monomial(unit_exp(iy));
    if (!q) {
      cm.note = "inconsistent order-" + std::to_string(n) + " system";
      return cm;
    }
    phi += (*q) * (-alpha.inverse());
  }
  auto [e1, e2] = residuals(phi, order + 2);
  if (e1.truncated(order + 2).is_zero() && e2.truncated(order + 2).is_zero()) {
    cm.ok = true;
    cm.phi = phi;
  } else {
    cm.note = "invariance residual does not vanish to order " + std::to_string(order);
  }
  (void)ylin;
  return cm;
}

Classification classify_quadratic(const std::array<KPoly, 3>& a, const VarList& vars, int order) {
  std::vector<std::size_t> inv;
  for (std::size_t m = 0; m < 3; ++m) {
    bool invariant = true;
    for (std::size_t j = 0; j < 3 && invariant; ++j) {
      if (j == m) continue;
      for (const auto& e : a[j].support()) {
        if (e[m] == 0) {
          invariant = false;
          break;
        }
      }
    }
    if (invariant) inv.push_back(m);
  }
  if (inv.size() < 2) return not_simple("fewer than two invariant coordinate planes through a point of vanishing linear part");
  const std::size_t ix = inv[0];
  const std::size_t iy = inv[1];
  const std::size_t is = 3 - ix - iy;
  std::array<KPoly, 3> q;
  for (std::size_t i = 0; i < 3; ++i) q[i] = a[i].homogeneous_part(2);
  if (q[0].is_zero() && q[1].is_zero() && q[2].is_zero()) return not_simple("vanishing 2-jet");
  const KElem alpha = q[ix].coefficient(pair_exp(iy, is));
  const KElem beta = q[iy].coefficient(pair_exp(ix, is));
  const KElem gamma = q[is].coefficient(pair_exp(ix, iy));
  // Third plane w = s - sa*x - sb*y.
  KElem sa(0), sb(0);
  if (!beta.is_zero()) {
    sa = -q[iy].coefficient(pair_exp(ix, ix)) / beta;
  } else if (!(alpha + gamma).is_zero()) {
    sa = -q[ix].coefficient(pair_exp(ix, iy)) / (alpha + gamma);
  }
  if (!alpha.is_zero()) {
    sb = -q[ix].coefficient(pair_exp(iy, iy)) / alpha;
  } else if (!(beta + gamma).is_zero()) {
    sb = -q[iy].coefficient(pair_exp(ix, iy)) / (beta + gamma);
  }
  std::array<std::map<Exponent, KElem, GradedOrder>, 3> expect;
  auto put = [&](std::size_t i, const Exponent& e, const KElem& v) {
    if (!v.is_zero()) expect[i][e] = expect[i].count(e) ? expect[i][e] + v : v;
  };
  put(ix, pair_exp(iy, is), alpha);
  put(ix, pair_exp(ix, iy), -(alpha + gamma) * sa);
  put(ix, pair_exp(iy, iy), -alpha * sb);
  put(iy, pair_exp(ix, is), beta);
  put(iy, pair_exp(ix, ix), -beta * sa);
  put(iy, pair_exp(ix, iy), -(beta + gamma) * sb);
  put(is, pair_exp(ix, iy), gamma);
  for (std::size_t i = 0; i < 3; ++i) {
    std::set<Exponent, GradedOrder> keys;
    for (const auto& e : q[i].support()) keys.insert(e);
    for (const auto& [e, v] : expect[i]) keys.insert(e);
    for (const auto& e : keys) {
      const KElem want = expect[i].count(e) ? expect[i].at(e) : KElem(0);
      if (!(q[i].coefficient(e) == want)) return not_simple("2-jet is not of logarithmic normal-crossing shape");
    }
  }
  std::array<KElem, 3> res;
  res[ix] = alpha;
  res[iy] = beta;
  res[is] = gamma;
  Classification out;
  for (const auto& r : res) out.residues.push_back(r.to_string());
  int zeros = 0;
  std::size_t zero_at = 3;
  for (std::size_t i = 0; i < 3; ++i) {
    if (res[i].is_zero()) {
      ++zeros;
      zero_at = i;
    }
  }
  if (zeros >= 2) return not_simple("at least two vanishing residues");
  if (zeros == 1) {
    const auto [i, j] = others(zero_at);
    if (is_negative_rational(res[i] / res[j])) return not_simple("saddle-node with negative rational residue ratio");
    out.kind = PointKind::SaddleNode;
    out.saddle_dim = 3;
    const bool plane_invariant = std::find(inv.begin(), inv.end(), zero_at) != inv.end();
    if (plane_invariant) {
      out.center_manifold_flag = "CONVERGENT-COORDINATE-PLANE";
      out.center_manifold = vars[zero_at] + " = 0 (local)";
      return out;
    }
    const bool base = a[0].p1().is_zero() && a[1].p1().is_zero() && a[2].p1().is_zero() && alpha.in_base() &&
                      sa.in_base() && sb.in_base();
    if (!base) {
      out.center_manifold_flag = "NOT-COMPUTED";
      out.center_manifold = "coefficients outside Q(I)";
      return out;
    }
    SparsePoly phi1 = SparsePoly::variable(vars, ix) * sa.a() + SparsePoly::variable(vars, iy) * sb.a();
    const auto cm = formal_center_manifold({a[0].p0(), a[1].p0(), a[2].p0()}, ix, iy, is, phi1, alpha.a(), order);
    if (cm.ok) {
      out.center_manifold_flag = "FORMAL-TO-ORDER-" + std::to_string(order);
      out.center_manifold = vars[is] + " = " + cm.phi.to_string() + " (local)";
    } else {
      out.center_manifold_flag = "NOT-COMPUTED";
      out.center_manifold = cm.note;
    }
    return out;
  }
  const KElem r1 = res[0] / res[2];
  const KElem r2 = res[1] / res[2];
  const KElem r3 = res[0] / res[1];
  if (is_negative_rational(r1) || is_negative_rational(r2) || is_negative_rational(r3)) {
    return not_simple("negative rational residue ratio");
  }
  if (is_positive_rational(r1) && is_positive_rational(r2)) {
    // Scale (r1, r2, 1) to coprime positive integers.
    const Rational x = r1.a().re();
    const Rational y = r2.a().re();
    Integer l = 1;
    mpz_lcm(l.get_mpz_t(), x.get_den_mpz_t(), y.get_den_mpz_t());
    std::array<Integer, 3> ints{Integer(x * l), Integer(y * l), l};
    Integer g = 0;
    for (const auto& v : ints) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    out.kind = PointKind::SimpleDim3Resonant;
    out.residues.clear();
    for (const auto& v : ints) out.residues.push_back(Integer(v / g).get_str());
    return out;
  }
  out.kind = PointKind::SimpleDim3Linearizable;
  return out;
}

}  // namespace

Classification classify_singular_point(const KForm& local, const Point3& point, int order) {
  if (local.degree() != 1 || local.chart().dim() != 3) throw ContractViolation("classification needs a 1-form in 3 variables");
  std::array<KPoly, 3> a;
  for (std::size_t i = 0; i < 3; ++i) {
    a[i] = translate(local.component(i), point);
    if (!a[i].coefficient(Exponent{}).is_zero()) throw ContractViolation("point is not singular");
  }
  Matrix<KElem> c(3, std::vector<KElem>(3));
  bool linear = false;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      c[i][j] = a[i].coefficient(unit_exp(j));
      if (!c[i][j].is_zero()) linear = true;
    }
  }
  return linear ? classify_linear(c) : classify_quadratic(a, local.vars(), order);
}

// ---------------------------------------------------------------------------

namespace {

/// Bivariate polynomial as coefficients (in variable `var`) of powers of `other`.
std::vector<UPoly> slices_of(const SparsePoly& p, std::size_t var, std::size_t other) {
  std::vector<std::vector<GaussianRational>> dense;
  for (const auto& [e, c] : p.terms()) {
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      if (i != var && i != other && e[i] != 0) throw ContractViolation("polynomial has extra variables");
    }
    if (dense.size() <= e[other]) dense.resize(e[other] + 1u);
    auto& row = dense[e[other]];
    if (row.size() <= e[var]) row.resize(e[var] + 1u);
    row[e[var]] += c;
  }
  std::vector<UPoly> out;
  for (auto& row : dense) out.emplace_back(std::move(row));
  return out;
}

SparsePoly from_slices(const std::vector<UPoly>& slices, const VarList& vars, std::size_t var, std::size_t other) {
  SparsePoly out(vars);
  for (std::size_t j = 0; j < slices.size(); ++j) {
    for (int k = 0; k <= slices[j].degree(); ++k) {
      Exponent e{};
      e[var] = static_cast<std::uint16_t>(k);
      e[other] = static_cast<std::uint16_t>(j);
      out.add_term(e, slices[j].coeff(k));
    }
  }
  return out;
}

/// gcd of the coefficients in `var` of p viewed as a polynomial in `other`.
UPoly content_in(const SparsePoly& p, std::size_t var, std::size_t other) {
  UPoly g;
  for (const auto& s : slices_of(p, var, other)) g = gcd(g, s);
  return g;
}

/// Divides p by q(var) as often as it divides exactly.
SparsePoly strip_factor(const SparsePoly& p, const UPoly& q, std::size_t var, std::size_t other) {
  if (q.degree() < 1 || p.is_zero()) return p;
  std::vector<UPoly> s = slices_of(p, var, other);
  for (;;) {
    std::vector<UPoly> next;
    for (const auto& c : s) {
      auto [quo, rem] = c.divmod(q);
      if (!rem.is_zero()) return from_slices(s, p.vars(), var, other);
      next.push_back(quo);
    }
    s = std::move(next);
  }
}

UPoly bareiss_det(std::vector<std::vector<UPoly>> m) {
  const std::size_t n = m.size();
  if (n == 0) return UPoly::constant(1);
  UPoly prev = UPoly::constant(1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t r = k + 1;
      while (r < n && m[r][k].is_zero()) ++r;
      if (r == n) return {};
      std::swap(m[k], m[r]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        const UPoly num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        auto [q, r] = num.divmod(prev);
        if (!r.is_zero()) throw ContractViolation("inexact Bareiss division");
        m[i][j] = q;
      }
      m[i][k] = UPoly();
    }
    prev = m[k][k];
  }
  UPoly d = m[n - 1][n - 1];
  return negate ? UPoly() - d : d;
}

}  // namespace

UPoly resultant(const SparsePoly& a, const SparsePoly& b, std::size_t var, std::size_t other) {
  // Coefficients of a and b as polynomials in `var`, with entries in Q(i)[other].
  const std::vector<UPoly> ca = slices_of(a, other, var);
  const std::vector<UPoly> cb = slices_of(b, other, var);
  if (ca.empty() || cb.empty()) return {};
  const std::size_t m = ca.size() - 1;
  const std::size_t l = cb.size() - 1;
  const std::size_t n = m + l;
  if (n == 0) return UPoly::constant(1);
  std::vector<std::vector<UPoly>> s(n, std::vector<UPoly>(n));
  for (std::size_t i = 0; i < l; ++i) {
    for (std::size_t k = 0; k <= m; ++k) s[i][i + k] = ca[m - k];
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k <= l; ++k) s[l + i][i + k] = cb[l - k];
  }
  return bareiss_det(std::move(s));
}

std::vector<KElem> univariate_roots(const UPoly& f, bool& complete) {
  std::vector<KElem> out;
  if (f.degree() < 1) return out;
  const RootSplit split = split_qi_roots(squarefree_part(f));
  if (!split.complete) complete = false;
  for (const auto& r : split.roots) out.emplace_back(r);
  if (split.cofactor.degree() == 2) {
    auto [r1, r2] = quadratic_pair(split.cofactor);
    out.push_back(r1);
    out.push_back(r2);
  } else if (split.cofactor.degree() >= 3) {
    complete = false;
  }
  return out;
}

namespace {

/// Roots in `var` of a KPoly that only involves `var`.
std::vector<KElem> kpoly_roots(const KPoly& p, std::size_t var, bool& complete) {
  if (p.is_zero()) return {};
  const auto support = p.support();
  if (support.size() == 1) {
    if (support.front()[var] > 0) return {KElem(0)};
    return {};
  }
  KPoly monic = p.coefficient(support.back()).inverse() * p;
  if (!monic.p1().is_zero()) {
    complete = false;
    return {};
  }
  return univariate_roots(UPoly::from_sparse(monic.p0(), var), complete);
}

std::string key_of(const Point3& p) { return p[0].to_string() + "|" + p[1].to_string() + "|" + p[2].to_string(); }

struct CensusBuilder {
  const ChartNode& node;
  int order;
  Census out;
  std::array<SparsePoly, 3> a;
  std::map<std::string, Point3> points;  // key -> coords, deduplicated
  std::vector<std::string> point_order;
  std::set<std::string> line_keys;

  CensusBuilder(const ChartNode& n, int ord) : node(n), order(ord) {
    for (std::size_t i = 0; i < 3; ++i) a[i] = node.form.component(i);
  }

  const VarList& vars() const { return node.chart.vars; }

  void add_point(const Point3& p) {
    const std::string k = key_of(p);
    if (points.emplace(k, p).second) point_order.push_back(k);
  }

  void incomplete(const std::string& what) { out.incomplete.push_back(node.chart.name + ": " + what); }

  void add_line(std::size_t free_var, std::size_t f0, KElem v0, std::size_t f1, KElem v1) {
    if (f0 > f1) {
      std::swap(f0, f1);
      std::swap(v0, v1);
    }
    const std::string k = std::to_string(free_var) + "|" + v0.to_string() + "|" + v1.to_string();
    if (!line_keys.insert(k).second) return;
    SingularLine l;
    l.node = node.id;
    l.chart = node.chart.name;
    l.free_var = free_var;
    l.fixed = {f0, f1};
    l.values = {v0, v1};
    l.equations = "{" + vars()[f0] + " = " + v0.to_string() + ", " + vars()[f1] + " = " + v1.to_string() + "}";
    for (std::size_t i = 0; i < 2; ++i) {
      if (l.values[i].is_zero() && !node.labels[l.fixed[i]].empty()) l.components.push_back(node.labels[l.fixed[i]]);
    }
    out.lines.push_back(std::move(l));
  }

  bool plane_covered(std::size_t v) const {
    return std::all_of(node.coverage.begin(), node.coverage.end(), [&](const Exponent& m) { return m[v] > 0; });
  }

  bool line_covered(std::size_t v, std::size_t u) const {
    return std::all_of(node.coverage.begin(), node.coverage.end(),
                       [&](const Exponent& m) { return m[v] > 0 || m[u] > 0; });
  }

  void scan_plane(std::size_t v) {
    const auto [u, w] = others(v);
    std::vector<SparsePoly> polys;
    for (std::size_t i = 0; i < 3; ++i) {
      SparsePoly r = a[i].evaluate_at(v, 0);
      if (!r.is_zero()) polys.push_back(std::move(r));
    }
    if (polys.empty()) {
      incomplete("plane {" + vars()[v] + " = 0} is entirely singular");
      return;
    }
    UPoly cu, cw;
    for (const auto& p : polys) {
      cu = gcd(cu, content_in(p, u, w));
      cw = gcd(cw, content_in(p, w, u));
    }
    bool complete = true;
    for (const auto& c : univariate_roots(cu, complete)) add_line(w, v, KElem(0), u, c);
    for (const auto& c : univariate_roots(cw, complete)) add_line(u, v, KElem(0), w, c);
    if (!complete) incomplete("singular lines in {" + vars()[v] + " = 0} with non-quadratic coordinates");
    std::vector<SparsePoly> rest;
    for (const auto& p : polys) {
      SparsePoly r = strip_factor(strip_factor(p, squarefree_part(cu), u, w), squarefree_part(cw), w, u);
      if (!r.is_constant()) rest.push_back(std::move(r));
      else if (!r.is_zero()) return;  // a nonzero constant: no further points
    }
    if (rest.size() < polys.size()) return;
    if (rest.size() == 1) {
      incomplete("non-coordinate singular curve " + rest.front().to_string() + " in {" + vars()[v] + " = 0}");
      return;
    }
    UPoly ru, rw;
    for (std::size_t i = 0; i < rest.size(); ++i) {
      for (std::size_t j = i + 1; j < rest.size(); ++j) {
        ru = gcd(ru, resultant(rest[i], rest[j], w, u));
        rw = gcd(rw, resultant(rest[i], rest[j], u, w));
      }
    }
    if (ru.is_zero() || rw.is_zero()) {
      incomplete("common non-coordinate curve in {" + vars()[v] + " = 0}");
      return;
    }
    complete = true;
    const auto us = univariate_roots(ru, complete);
    const auto ws = univariate_roots(rw, complete);
    if (!complete) incomplete("isolated points in {" + vars()[v] + " = 0} with non-quadratic coordinates");
    for (const auto& cu0 : us) {
      for (const auto& cw0 : ws) {
        Point3 p;
        p[v] = KElem(0);
        p[u] = cu0;
        p[w] = cw0;
        try {
          bool zero = true;
          for (const auto& poly : polys) {
            if (!translate(poly, p).coefficient(Exponent{}).is_zero()) zero = false;
          }
          if (zero) add_point(p);
        } catch (const ContextMismatch&) {
          incomplete("candidate point with coordinates in two different quadratic fields");
        }
      }
    }
  }

  void scan_line(std::size_t v, std::size_t u) {
    const std::size_t w = 3 - v - u;
    UPoly g;
    bool all_zero = true;
    for (std::size_t i = 0; i < 3; ++i) {
      SparsePoly r = a[i].evaluate_at(v, 0).evaluate_at(u, 0);
      if (r.is_zero()) continue;
      all_zero = false;
      g = gcd(g, UPoly::from_sparse(r, w));
    }
    if (all_zero) {
      add_line(w, v, KElem(0), u, KElem(0));
      return;
    }
    bool complete = true;
    for (const auto& r : univariate_roots(g, complete)) {
      Point3 p;
      p[v] = KElem(0);
      p[u] = KElem(0);
      p[w] = r;
      add_point(p);
    }
    if (!complete) incomplete("points on a coverage line with non-quadratic coordinates");
  }

  void scan_origin() {
    bool singular = true;
    for (const auto& p : a) {
      if (!p.constant_term().is_zero()) singular = false;
    }
    if (singular) add_point(Point3{KElem(0), KElem(0), KElem(0)});
  }

  void scan_strata() {
    std::set<std::pair<std::size_t, std::size_t>> lines_done;
    bool origin_done = false;
    for (std::size_t v : node.boundary_vars()) {
      if (plane_covered(v)) {
        scan_plane(v);
        continue;
      }
      bool any_line = false;
      for (std::size_t u : others(v)) {
        if (!line_covered(v, u)) continue;
        any_line = true;
        const auto key = std::minmax(u, v);
        if (lines_done.insert(key).second) scan_line(key.first, key.second);
      }
      if (!any_line && !origin_done) {
        origin_done = true;
        scan_origin();
      }
    }
  }

  /// Value of the free coordinate where two lines meet, if they do.
  static std::optional<Point3> intersect(const SingularLine& l1, const SingularLine& l2) {
    if (l1.free_var == l2.free_var) return std::nullopt;
    Point3 p;
    std::array<bool, 3> set{false, false, false};
    for (const SingularLine* l : {&l1, &l2}) {
      for (std::size_t i = 0; i < 2; ++i) {
        const std::size_t var = l->fixed[i];
        if (set[var] && !(p[var] == l->values[i])) return std::nullopt;
        p[var] = l->values[i];
        set[var] = true;
      }
    }
    return p;
  }

  void process_lines() {
    for (std::size_t i = 0; i < out.lines.size(); ++i) {
      for (std::size_t j = i + 1; j < out.lines.size(); ++j) {
        try {
          if (auto p = intersect(out.lines[i], out.lines[j])) add_point(*p);
        } catch (const ContextMismatch&) {
          incomplete("line intersection across two quadratic fields");
        }
      }
    }
    for (auto& l : out.lines) {
      try {
        process_line(l);
      } catch (const ContextMismatch&) {
        incomplete("line " + l.equations + " mixes two quadratic fields");
        l.generic = not_simple("unsupported algebraic configuration");
      }
    }
  }

  void process_line(SingularLine& l) {
    const std::size_t w = l.free_var;
    const std::size_t f0 = l.fixed[0];
    const std::size_t f1 = l.fixed[1];
    Point3 shift;
    shift[f0] = l.values[0];
    shift[f1] = l.values[1];
    shift[w] = KElem(0);
    std::array<KPoly, 3> t;
    for (std::size_t i = 0; i < 3; ++i) t[i] = translate(a[i], shift);
    // Linear coefficients in the fixed directions, as polynomials in w.
    auto lin = [&](std::size_t i, std::size_t j) {
      const std::size_t other = j == f0 ? f1 : f0;
      SparsePoly p0(vars()), p1(vars());
      for (const auto& [e, c] : t[i].p0().terms()) {
        if (e[j] == 1 && e[other] == 0) p0.add_term(Exponent{} = [&] { Exponent r{}; r[w] = e[w]; return r; }(), c);
      }
      for (const auto& [e, c] : t[i].p1().terms()) {
        if (e[j] == 1 && e[other] == 0) p1.add_term([&] { Exponent r{}; r[w] = e[w]; return r; }(), c);
      }
      return KPoly(t[i].field(), p0, p1);
    };
    const KPoly tr = lin(f1, f0) - lin(f0, f1);
    const KPoly det = lin(f0, f0) * lin(f1, f1) - lin(f1, f0) * lin(f0, f1);
    std::vector<KElem> special;
    bool complete = true;
    for (const auto& r : kpoly_roots(det.is_zero() ? tr : det, w, complete)) special.push_back(r);
    if (!complete) incomplete("degenerate points on " + l.equations + " with non-quadratic coordinates");
    if (!node.labels[w].empty()) special.emplace_back(0);
    for (const auto& [k, p] : points) {
      if (p[f0] == l.values[0] && p[f1] == l.values[1]) special.push_back(p[w]);
    }
    auto at = [&](const KPoly& poly, const KElem& x) {
      Point3 q{KElem(0), KElem(0), KElem(0)};
      q[w] = x;
      return poly.evaluate(q);
    };
    std::optional<KElem> generic;
    for (long c = 1; c <= 64 && !generic; ++c) {
      for (long s : {c, -c}) {
        const KElem x(s);
        if (std::find(special.begin(), special.end(), x) != special.end()) continue;
        if (det.is_zero() ? at(tr, x).is_zero() : at(det, x).is_zero()) continue;
        generic = x;
        break;
      }
    }
    if (!generic) {
      l.generic = not_simple("no generic point found on the line");
      return;
    }
    Point3 g = shift;
    g[w] = *generic;
    if (!det.is_zero()) {
      // The transversal eigenvalue ratio must be constant along the line.
      const KElem t1 = at(tr, *generic);
      const KElem d1 = at(det, *generic);
      if (!((d1 * (tr * tr)) - (t1 * t1 * det)).is_zero()) {
        l.generic = not_simple("transversal eigenvalue ratio varies along the line");
      }
    }
    if (l.generic.reason.empty()) l.generic = classify_singular_point(node.form, g, order);
    for (const auto& x : special) {
      Point3 p = shift;
      p[w] = x;
      add_point(p);
    }
  }

  void classify_points() {
    for (const auto& k : point_order) {
      const Point3& p = points.at(k);
      SingularPointRecord r;
      r.node = node.id;
      r.chart = node.chart.name;
      r.coords = p;
      r.vars = vars().names();
      for (std::size_t i = 0; i < 3; ++i) {
        if (p[i].is_zero() && !node.labels[i].empty()) r.components.push_back(node.labels[i]);
      }
      try {
        r.classification = classify_singular_point(node.form, p, order);
      } catch (const ContextMismatch&) {
        r.classification = not_simple("unsupported algebraic configuration");
      }
      out.points.push_back(std::move(r));
    }
    for (const auto& what : out.incomplete) {
      SingularPointRecord r;
      r.node = node.id;
      r.chart = node.chart.name;
      r.vars = vars().names();
      r.classification = not_simple("census incomplete: " + what);
      out.points.push_back(std::move(r));
    }
  }
};

}  // namespace

Census singular_census(const ChartNode& node, int order) {
  CensusBuilder b(node, order);
  b.scan_strata();
  b.process_lines();
  b.classify_points();
  return std::move(b.out);
}

std::string SingularPointRecord::coords_text() const {
  std::string s = "(";
  for (std::size_t i = 0; i < 3; ++i) {
    if (i) s += ", ";
    s += (i < vars.size() ? vars[i] + "=" : "") + coords[i].to_string();
  }
  return s + ")";
}

nlohmann::json classification_to_json(const Classification& c) {
  nlohmann::json j{{"kind", point_kind_name(c.kind)}};
  if (!c.eigenratio.empty()) j["eigenratio"] = c.eigenratio;
  if (!c.residues.empty()) j["residues"] = c.residues;
  if (c.kind == PointKind::SaddleNode) {
    j["saddle_dim"] = c.saddle_dim;
    j["center_manifold_flag"] = c.center_manifold_flag;
    if (!c.center_manifold.empty()) j["center_manifold"] = c.center_manifold;
  }
  if (!c.reason.empty()) j["reason"] = c.reason;
  return j;
}

nlohmann::json line_to_json(const SingularLine& l) {
  return {{"chart", l.chart},
          {"equations", l.equations},
          {"components", l.components},
          {"generic", classification_to_json(l.generic)}};
}

nlohmann::json point_to_json(const SingularPointRecord& p) {
  return {{"chart", p.chart},
          {"coords", p.coords_text()},
          {"components", p.components},
          {"classification", classification_to_json(p.classification)}};
}

}  // namespace cusp
