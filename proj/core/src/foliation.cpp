#include "cusp/foliation.hpp"

#include <numeric>

namespace cusp {

Chart original_chart() { return Chart("C0", VarList{"x", "y", "z"}); }

SparsePoly CuspidalFoliation::u_monomial() const {
  Exponent e{};
  e[0] = static_cast<std::uint16_t>(pp);
  e[1] = static_cast<std::uint16_t>(qp);
  return SparsePoly::monomial(omega.vars(), e);
}

CuspidalFoliation build_omega(int p, int q, int k, const TruncSeries& h) {
  if (p < 1 || q < 1 || k < 1) throw ContractViolation("p, q and k must be positive");
  if (h.constant_term().is_zero()) throw ContractViolation("h(0) must be nonzero");
  if (h.vars().size() != 1) throw ContractViolation("h must be a series in one variable");
  CuspidalFoliation f;
  f.p = p;
  f.q = q;
  f.k = k;
  f.h = h;
  f.d = std::gcd(p, q);
  f.pp = p / f.d;
  f.qp = q / f.d;
  const Chart chart = original_chart();
  f.omega = KForm(1, chart);
  const SparsePoly z = SparsePoly::variable(chart.vars, 2);
  const SparsePoly u = f.u_monomial();
  const SparsePoly h_of_u = h.poly().substitute(std::vector<SparsePoly>{u});
  const SparsePoly a = u.pow(static_cast<unsigned>(k)) * h_of_u;
  f.omega = exterior_derivative(KForm::function(z * z + u.pow(static_cast<unsigned>(f.d)), chart)) +
            a * KForm::differential(chart, 2);
  const auto cert = check_integrability(f.omega);
  if (!cert.vanishes) throw ContractViolation("assembled form is not integrable");
  return f;
}

IntegrabilityCertificate check_integrability(const KForm& w, std::optional<int> order) {
  if (w.degree() != 1) throw ContractViolation("integrability is checked on 1-forms");
  IntegrabilityCertificate cert;
  cert.three_form = wedge(w, exterior_derivative(w));
  cert.valid_to_order = order;
  cert.vanishes = order ? cert.three_form.truncated(*order).is_zero() : cert.three_form.is_zero();
  return cert;
}

KForm linear_form(const Matrix<GaussianRational>& c) {
  const std::size_t n = c.size();
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i + 1));
  const Chart chart("linear", VarList(names));
  std::vector<SparsePoly> coeffs;
  for (std::size_t i = 0; i < n; ++i) {
    SparsePoly a(chart.vars);
    for (std::size_t j = 0; j < n; ++j) a += SparsePoly::variable(chart.vars, j) * c[i][j];
    coeffs.push_back(a);
  }
  return KForm::one_form(chart, coeffs);
}

namespace {

/// Congruence diagonalization of a symmetric matrix over Q(i).
std::vector<GaussianRational> congruence_diagonal(Matrix<GaussianRational> a) {
  const std::size_t n = a.size();
  std::vector<GaussianRational> diag;
  for (std::size_t t = 0; t < n; ++t) {
    if (a[t][t].is_zero()) {
      // Make the pivot nonzero by adding a later row/column pair.
      for (std::size_t j = t + 1; j < n; ++j) {
        if (!a[j][j].is_zero()) {
          std::swap(a[t], a[j]);
          for (auto& row : a) std::swap(row[t], row[j]);
          break;
        }
        if (!a[t][j].is_zero()) {
          for (std::size_t k = 0; k < n; ++k) a[t][k] += a[j][k];
          for (std::size_t k = 0; k < n; ++k) a[k][t] += a[k][j];
          break;
        }
      }
    }
    if (a[t][t].is_zero()) {
      diag.emplace_back(0);
      continue;
    }
    for (std::size_t i = t + 1; i < n; ++i) {
      const GaussianRational f = a[i][t] / a[t][t];
      if (f.is_zero()) continue;
      for (std::size_t k = 0; k < n; ++k) a[i][k] -= f * a[t][k];
      for (std::size_t k = 0; k < n; ++k) a[k][i] -= f * a[k][t];
    }
    diag.push_back(a[t][t]);
  }
  return diag;
}

}  // namespace

LinearPartReport classify_linear_part(const Matrix<GaussianRational>& c) {
  const std::size_t n = c.size();
  if (n == 0 || n > kMaxVars) throw ContractViolation("linear part must be n x n with 1 <= n <= 6");
  for (const auto& row : c) {
    if (row.size() != n) throw ContractViolation("linear part must be square");
  }
  if (!check_integrability(linear_form(c)).vanishes) throw ContractViolation("linear part is not integrable");
  LinearPartReport r;
  r.c = c;
  r.rank = rank(c);
  for (std::size_t j = 0; j < n && r.witness.first < 0; ++j) {
    for (std::size_t k = j + 1; k < n; ++k) {
      if (!(c[k][j] == c[j][k])) {
        r.witness = {static_cast<int>(j), static_cast<int>(k)};
        break;
      }
    }
  }
  if (r.witness.first >= 0) {
    r.verdict = LinearPartReport::Verdict::Kupka;
    if (r.rank > 2) throw ContractViolation("integrable non-symmetric linear part of rank > 2");
    return r;
  }
  r.verdict = LinearPartReport::Verdict::Symmetric;
  r.diagonal = congruence_diagonal(c);
  r.normal_form_exact = true;
  for (const auto& v : r.diagonal) {
    if (!v.is_zero() && !v.sqrt()) r.normal_form_exact = false;
  }
  return r;
}

std::string verdict_name(LinearPartReport::Verdict v) {
  return v == LinearPartReport::Verdict::Kupka ? "Kupka" : "Symmetric";
}

}  // namespace cusp
