#include "cusp/separatrix.hpp"

#include "cusp/number_field.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>

namespace cusp {

namespace {

const VarList& uz_vars() {
  static const VarList v{"u", "z"};
  return v;
}

const VarList& u_vars() {
  static const VarList v{"u"};
  return v;
}

Exponent u_pow(int n) {
  Exponent e{};
  e[0] = static_cast<std::uint16_t>(n);
  return e;
}

/// Dense series in s over a quadratic extension, modulo s^len.
using KSeries = std::vector<KElem>;

KSeries mul(const KSeries& a, const KSeries& b, std::size_t len) {
  KSeries out(len);
  for (std::size_t i = 0; i < a.size() && i < len; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size() && i + j < len; ++j) {
      if (!b[j].is_zero()) out[i + j] = out[i + j] + a[i] * b[j];
    }
  }
  return out;
}

KSeries deriv(const KSeries& a) {
  KSeries out(a.size());
  for (std::size_t j = 1; j < a.size(); ++j) out[j - 1] = a[j] * KElem(static_cast<long>(j));
  return out;
}

/// Invariant branch z = psi(s), u = s^e, of d u^(d-1) du + (2z + u^k h) dz:
/// G(psi) = d e s^(ed-1) + (2 psi + s^(ek) h(s^e)) psi' = 0.
struct Branch {
  int d, k, e;
  std::size_t len;
  KSeries fixed;  // A(s)
  KSeries pert;   // B(s)

  Branch(int d_, int k_, int e_, const SparsePoly& h, std::size_t len_) : d(d_), k(k_), e(e_), len(len_) {
    fixed.assign(len, KElem());
    pert.assign(len, KElem());
    const std::size_t a_deg = static_cast<std::size_t>(e * d - 1);
    if (a_deg < len) fixed[a_deg] = KElem(static_cast<long>(d * e));
    for (const auto& [ex, c] : h.terms()) {
      const std::size_t deg = static_cast<std::size_t>(e * (k + ex[0]));
      if (deg < len) pert[deg] = KElem(c);
    }
  }

  KSeries residual(const KSeries& psi) const {
    KSeries lin(len);
    for (std::size_t j = 0; j < len; ++j) lin[j] = psi[j] * KElem(2) + pert[j];
    KSeries g = mul(lin, deriv(psi), len);
    for (std::size_t j = 0; j < len; ++j) g[j] = g[j] + fixed[j];
    return g;
  }

  KSeries solve(int m0, const KElem& lead) const {
    const int mu = std::min(m0, e * k);
    KSeries psi(len);
    psi[static_cast<std::size_t>(m0)] = lead;
    const KSeries g0 = residual(psi);
    for (int deg = 0; deg < m0 + mu && deg < static_cast<int>(len); ++deg) {
      if (!g0[static_cast<std::size_t>(deg)].is_zero()) throw Error("inconsistent leading term of a separatrix branch");
    }
    for (int j = m0 + 1; j + mu - 1 < static_cast<int>(len); ++j) {
      const std::size_t at = static_cast<std::size_t>(j + mu - 1);
      const KSeries g = residual(psi);
      KSeries probe = psi;
      probe[static_cast<std::size_t>(j)] = KElem(1);
      const KElem pivot = residual(probe)[at] - g[at];
      if (pivot.is_zero()) {
        if (!g[at].is_zero()) throw Error("inconsistent linear system at order " + std::to_string(j));
        continue;
      }
      psi[static_cast<std::size_t>(j)] = -g[at] / pivot;
    }
    const KSeries g = residual(psi);
    for (const auto& c : g) {
      if (!c.is_zero()) throw Error("separatrix branch residual does not vanish");
    }
    return psi;
  }
};

/// Coefficient list in s of a Q(i)[[u]] series, u = s^e.
SparsePoly to_u_series(const KSeries& s, int e, int max_deg) {
  SparsePoly out(u_vars());
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (s[j].is_zero()) continue;
    if (j % static_cast<std::size_t>(e) != 0 || !s[j].in_base()) {
      throw Error("separatrix coefficients are not in Q(i)[[u]]");
    }
    const int n = static_cast<int>(j) / e;
    if (n <= max_deg) out.add_term(u_pow(n), s[j].a());
  }
  return out;
}

/// Drops every term whose u-degree (variable 0) is at least `order`.
SparsePoly drop_u(const SparsePoly& p, int order) {
  SparsePoly out(p.vars());
  for (const auto& [e, c] : p.terms()) {
    if (e[0] < order) out.add_term(e, c);
  }
  return out;
}

/// The univariate series in u moved into chart (u, z).
SparsePoly in_uz(const SparsePoly& f) { return f.embed(uz_vars()); }

}  // namespace

KForm two_variable_model(int d, int k, const TruncSeries& h) {
  const Chart chart("uz", uz_vars());
  const SparsePoly u = SparsePoly::variable(uz_vars(), 0);
  const SparsePoly z = SparsePoly::variable(uz_vars(), 1);
  const SparsePoly hu = in_uz(h.poly());
  return exterior_derivative(KForm::function(z * z + u.pow(static_cast<unsigned>(d)), chart)) +
         u.pow(static_cast<unsigned>(k)) * hu * KForm::differential(chart, 1);
}

int separatrix_exponent(int d, int k) { return 2 * k >= d ? d : 2 * k; }

std::pair<SparsePoly, SparsePoly> separatrix_residual(int d, int k, const TruncSeries& h, const SparsePoly& a,
                                                      const SparsePoly& b, int order) {
  const KForm omega = two_variable_model(d, k, h);
  const Chart& chart = omega.chart();
  const SparsePoly z = SparsePoly::variable(uz_vars(), 1);
  const SparsePoly au = in_uz(a);
  const SparsePoly bu = in_uz(b);
  const SparsePoly w = z * z + au * z + bu;
  const KForm three = wedge(omega, exterior_derivative(KForm::function(w, chart)));
  SparsePoly e = drop_u(three.coeff(0b11), order + 2);
  // Division by W, monic of degree 2 in z.
  for (int deg = e.degree_in(1); deg >= 2; deg = e.degree_in(1)) {
    SparsePoly lead(uz_vars());
    for (const auto& [ex, c] : e.terms()) {
      if (ex[1] == deg) {
        Exponent r = ex;
        r[1] = static_cast<std::uint16_t>(deg - 2);
        lead.add_term(r, c);
      }
    }
    e = drop_u(e - lead * w, order + 2);
  }
  SparsePoly r1(u_vars()), r0(u_vars());
  for (const auto& [ex, c] : e.terms()) {
    if (ex[0] >= order) continue;
    (ex[1] == 1 ? r1 : r0).add_term(u_pow(ex[0]), c);
  }
  return {r1, r0};
}

SeparatrixPoly solve_formal_separatrix(int d, int k, const TruncSeries& h, int N) {
  if (d < 1 || k < 1) throw ContractViolation("d and k must be positive");
  if (N < std::max(d, 2 * k) + 2) throw ContractViolation("truncation must be at least max(d, 2k) + 2");
  if (d <= 2 && 2 * k < d) throw ContractViolation("d <= 2 requires 2k >= d");
  if (h.poly().is_zero()) {
    // Exact first integral z^2 + u^d.
    SeparatrixPoly out;
    out.d = d;
    out.k = k;
    out.order = N;
    out.a = TruncSeries(SparsePoly(u_vars()));
    out.b = TruncSeries(SparsePoly::monomial(u_vars(), u_pow(d)));
    const auto [r1, r0] = separatrix_residual(d, k, h, out.a.poly(), out.b.poly(), N);
    if (!r1.is_zero() || !r0.is_zero()) throw Error("separatrix residual does not vanish");
    out.residual_order = N;
    return out;
  }
  if (const int v = valuation(h); v > 0) {
    // u^k h = u^(k+v) (h / u^v).
    const SparsePoly shifted = *h.poly().divide_monomial(u_pow(v));
    const TruncSeries h2 = h.is_exact() ? TruncSeries(shifted) : TruncSeries(shifted, *h.order() - v);
    SeparatrixPoly out = solve_formal_separatrix(d, k + v, h2, std::max(N, std::max(d, 2 * (k + v)) + 2));
    out.k = k;
    return out;
  }
  const GaussianRational h0 = h.constant_term();
  const int e = 2 * k < d ? 1 : 2;
  const std::size_t len = static_cast<std::size_t>(e * (N + 1) + d + 2 * k);
  const Branch branch(d, k, e, h.poly(), len);
  KSeries p1, p2;
  if (2 * k < d) {
    p1 = branch.solve(k, KElem(-h0 * GaussianRational(Rational(1, 2))));
    p2 = branch.solve(d - k, KElem(-GaussianRational(d) / (h0 * GaussianRational(d - k))));
  } else if (2 * k > d) {
    p1 = branch.solve(d, KElem(GaussianRational(0, 1)));
    p2 = branch.solve(d, KElem(GaussianRational(0, -1)));
  } else {
    // psi_d^2 + (h0/2) psi_d + 1 = 0.
    const UPoly lead({GaussianRational(1), h0 * GaussianRational(Rational(1, 2)), GaussianRational(1)});
    KElem r1, r2;
    if (auto roots = quadratic_roots(lead)) {
      r1 = roots->first;
      r2 = roots->second;
    } else {
      std::tie(r1, r2) = quadratic_pair(lead);
    }
    p1 = branch.solve(d, r1);
    p2 = branch.solve(d, r2);
  }
  const std::size_t keep = static_cast<std::size_t>(e * N + 1);
  KSeries sum(keep), prod = mul(p1, p2, keep);
  for (std::size_t j = 0; j < keep; ++j) sum[j] = -(p1[j] + p2[j]);
  SeparatrixPoly out;
  out.d = d;
  out.k = k;
  out.order = N;
  out.a = TruncSeries(to_u_series(sum, e, N), N + 1);
  out.b = TruncSeries(to_u_series(prod, e, N), N + 1);
  const auto [r1, r0] = separatrix_residual(d, k, h, out.a.poly(), out.b.poly(), N);
  if (!r1.is_zero() || !r0.is_zero()) throw Error("separatrix residual does not vanish");
  out.residual_order = N;
  return out;
}

TschirnhausenResult tschirnhausen(const TruncSeries& a, const TruncSeries& b) {
  if (!a.constant_term().is_zero() || !b.constant_term().is_zero()) throw ContractViolation("a(0) and b(0) must vanish");
  const TruncSeries quarter(SparsePoly::constant(a.vars(), GaussianRational(Rational(1, 4))));
  TschirnhausenResult t;
  t.c = b - quarter * a * a;
  if (t.c.is_zero_mod_order()) throw ContractViolation("b - a^2/4 vanishes modulo the truncation");
  t.r = valuation(t.c);
  const SparsePoly f = *t.c.poly().divide_monomial(u_pow(t.r));
  t.f = t.c.is_exact() ? TruncSeries(f) : TruncSeries(f, *t.c.order() - t.r);
  return t;
}

NormalizationMap normalization_map(int pp, int qp, int r, const TruncSeries& a, const TruncSeries& f) {
  NormalizationMap m;
  m.pp = pp;
  m.qp = qp;
  m.r = r;
  m.a = a;
  m.f = f;
  m.order = std::min({a.effective_order(), f.effective_order(), kDefaultTruncation + 1}) - 1;
  m.sqrt_f = series_sqrt_unit(f, m.order + 1);
  // Check in (u, z): W(u, z*g - a/2) against f * (z^2 + u^r).
  const SparsePoly u = SparsePoly::variable(uz_vars(), 0);
  const SparsePoly z = SparsePoly::variable(uz_vars(), 1);
  const SparsePoly au = in_uz(a.poly());
  const SparsePoly fu = in_uz(f.poly());
  const SparsePoly half(SparsePoly::constant(uz_vars(), GaussianRational(Rational(1, 2))));
  const SparsePoly ur = u.pow(static_cast<unsigned>(r));
  const SparsePoly w = z * z + au * z + half * half * au * au + ur * fu;
  const SparsePoly f3 = z * in_uz(m.sqrt_f.poly()) - half * au;
  const SparsePoly images[] = {u, f3};
  const SparsePoly moved = drop_u(w.substitute(images), m.order + 1);
  m.verified = (moved - drop_u(fu * (z * z + ur), m.order + 1)).is_zero();
  // The same map on (x, y, z) through u = x^p' y^q'.
  const VarList xyz{"x", "y", "z"};
  Exponent um{};
  um[0] = static_cast<std::uint16_t>(pp);
  um[1] = static_cast<std::uint16_t>(qp);
  const SparsePoly umono = SparsePoly::monomial(xyz, um);
  const SparsePoly subst[] = {umono};
  const SparsePoly g3 = SparsePoly::variable(xyz, 2) * m.sqrt_f.poly().substitute(subst) -
                        a.poly().substitute(subst) * GaussianRational(Rational(1, 2));
  m.F = {SparsePoly::variable(xyz, 0), SparsePoly::variable(xyz, 1), g3};
  return m;
}

SeparatrixFactorization factor_separatrix(const TschirnhausenResult& t) {
  SeparatrixFactorization out;
  if (t.r % 2 != 0) return out;
  try {
    const TruncSeries g = series_sqrt_unit(-t.f, t.f.is_exact() ? kDefaultTruncation : *t.f.order());
    out.splits = true;
    out.root = TruncSeries(g.poly().multiply_monomial(u_pow(t.r / 2)), g.effective_order() + t.r / 2);
  } catch (const NoExactRoot&) {
  }
  return out;
}

HopfField hopf_vector_field(int p, int q) {
  if (p < 1 || q < 1) throw ContractViolation("p and q must be positive");
  if (p % 2 == 1 && q % 2 == 0) throw ContractViolation("p odd and q even: swap (p, q) first");
  HopfField X;
  X.p = p;
  X.q = q;
  if (p % 2 == 0) {
    X.weights = {Rational(1), Rational(0), Rational(p, 2)};
  } else {
    X.weights = {Rational(1), Rational(1), Rational(p + q, 2)};
  }
  X.weights[2].canonicalize();
  return X;
}

std::string HopfField::to_string() const {
  static const char* names[] = {"x", "y", "z"};
  std::string s;
  for (std::size_t i = 0; i < 3; ++i) {
    if (sgn(weights[i]) == 0) continue;
    if (!s.empty()) s += " + ";
    if (weights[i] != 1) s += rational_to_string(weights[i]);
    s += std::string(names[i]) + "∂" + names[i];
  }
  return s;
}

std::optional<Rational> hopf_invariance(const HopfField& X, int pp, int qp, int r) {
  const VarList xyz{"x", "y", "z"};
  Exponent e{};
  e[0] = static_cast<std::uint16_t>(pp * r);
  e[1] = static_cast<std::uint16_t>(qp * r);
  const SparsePoly z = SparsePoly::variable(xyz, 2);
  const SparsePoly F = z * z + SparsePoly::monomial(xyz, e);
  SparsePoly XF(xyz);
  for (std::size_t i = 0; i < 3; ++i) {
    XF += SparsePoly::variable(xyz, i) * F.derivative(i) * GaussianRational(X.weights[i]);
  }
  // F is monic in z of degree 2 and XF has degree <= 2 in z: the quotient is the z^2 coefficient.
  Exponent z2{};
  z2[2] = 2;
  const GaussianRational c = XF.coefficient(z2);
  if (!(XF - F * c).is_zero()) return std::nullopt;
  return c.re();
}

nlohmann::json separatrix_to_json(const SeparatrixPoly& s) {
  return {{"d", s.d},
          {"k", s.k},
          {"a", s.a.poly().to_string()},
          {"b", s.b.poly().to_string()},
          {"truncation", s.order},
          {"residual_order", s.residual_order}};
}

}  // namespace cusp
