#pragma once

#include "cusp/forms.hpp"
#include "cusp/linalg.hpp"

#include <optional>
#include <string>
#include <utility>

namespace cusp {

/// Germ d(z^2 + u^d) + u^k h(u) dz with u = x^p' y^q', d = gcd(p, q).
struct CuspidalFoliation {
  int p = 0;
  int q = 0;
  int k = 0;
  TruncSeries h;
  int d = 0;
  int pp = 0;  ///< p' = p / d
  int qp = 0;  ///< q' = q / d
  KForm omega;

  /// x^p' y^q' as a polynomial in the original chart.
  SparsePoly u_monomial() const;
};

/// Chart "C0" with variables (x, y, z).
Chart original_chart();

/// Throws ContractViolation on p, q, k < 1 or h(0) = 0.
CuspidalFoliation build_omega(int p, int q, int k, const TruncSeries& h);

struct IntegrabilityCertificate {
  KForm three_form;  ///< w ∧ dw
  bool vanishes = false;
  /// Set when the input carried truncated data: vanishing holds to this order.
  std::optional<int> valid_to_order;
};

IntegrabilityCertificate check_integrability(const KForm& w, std::optional<int> order = std::nullopt);

struct LinearPartReport {
  enum class Verdict { Symmetric, Kupka };
  Matrix<GaussianRational> c;
  Verdict verdict = Verdict::Symmetric;
  int rank = 0;
  /// Symmetric: diagonal of a congruent diagonal form.
  std::vector<GaussianRational> diagonal;
  /// Symmetric: true when every nonzero diagonal entry has a Q(i) root, so
  /// the normal form sum_{i<=r} x_i dx_i is reached over Q(i).
  bool normal_form_exact = false;
  /// Kupka: a pair (j, k) with c_kj != c_jk.
  std::pair<int, int> witness{-1, -1};
};

/// Linear 1-form sum c_ij x_j dx_i over n <= 6 variables.
KForm linear_form(const Matrix<GaussianRational>& c);

/// Throws ContractViolation when the linear part is not integrable.
LinearPartReport classify_linear_part(const Matrix<GaussianRational>& c);

std::string verdict_name(LinearPartReport::Verdict v);

}  // namespace cusp
