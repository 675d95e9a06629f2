#pragma once

#include "cusp/forms.hpp"
#include "cusp/poly.hpp"

#include <nlohmann/json_fwd.hpp>

#include <optional>
#include <string>
#include <vector>

namespace cusp {

/// Two-variable model d(z^2 + u^d) + u^k h(u) dz in chart (u, z).
KForm two_variable_model(int d, int k, const TruncSeries& h);

/// Joint separatrix equation W = z^2 + a(u) z + b(u).
struct SeparatrixPoly {
  int d = 0;
  int k = 0;
  TruncSeries a;  ///< series in u, truncated at `order`
  TruncSeries b;
  int order = 0;  ///< a and b are exact modulo u^(order+1)
  /// Omega ∧ dW = Q*W + R1*z + R0 with R1, R0 = 0 modulo u^residual_order.
  int residual_order = 0;
};

/// Order-by-order solution of Omega ∧ dW ∈ (W). A factor u^v of h is moved
/// into k. Throws ContractViolation when N < max(d, 2k) + 2, and
/// Error("inconsistent ...") when the system for some order has no solution
/// (resonant, out-of-contract input).
SeparatrixPoly solve_formal_separatrix(int d, int k, const TruncSeries& h, int N);

/// Closed-form exponent: d if 2k >= d, else 2k.
int separatrix_exponent(int d, int k);

/// Residual R1*z + R0 of Omega ∧ dW modulo W, as series in u truncated at `order`.
std::pair<SparsePoly, SparsePoly> separatrix_residual(int d, int k, const TruncSeries& h, const SparsePoly& a,
                                                      const SparsePoly& b, int order);

struct TschirnhausenResult {
  TruncSeries c;  ///< b - a^2/4
  int r = 0;      ///< valuation of c
  TruncSeries f;  ///< c / u^r, a unit
};

/// Throws ContractViolation unless a(0) = b(0) = 0 and c is nonzero modulo the truncation.
TschirnhausenResult tschirnhausen(const TruncSeries& a, const TruncSeries& b);

struct NormalizationMap {
  int pp = 0;
  int qp = 0;
  int r = 0;
  TruncSeries f;
  TruncSeries sqrt_f;
  TruncSeries a;
  /// Components of F in chart (x, y, z): x, y, z*sqrt(f)(x^p' y^q') - a(x^p' y^q')/2.
  std::vector<SparsePoly> F;
  int order = 0;
  /// W(u, z*sqrt(f) - a/2) = f * (z^2 + u^r) modulo u^(order+1).
  bool verified = false;
};

/// Throws NoExactRoot when f(0) has no square root in Q(i).
NormalizationMap normalization_map(int pp, int qp, int r, const TruncSeries& a, const TruncSeries& f);

/// Whether z^2 + c splits over Q(i)[[u]] (iff -c is a series square).
struct SeparatrixFactorization {
  bool splits = false;
  std::optional<TruncSeries> root;  ///< sqrt(-c) when it splits
};

SeparatrixFactorization factor_separatrix(const TschirnhausenResult& t);

/// Linear vector field sum coeff_i x_i d/dx_i on (x, y, z).
struct HopfField {
  int p = 0;
  int q = 0;
  std::array<Rational, 3> weights{};
  std::string to_string() const;
};

/// p even: x d/dx + (p/2) z d/dz; p, q odd: x d/dx + y d/dy + ((p+q)/2) z d/dz.
/// Throws ContractViolation for p odd and q even (swap first).
HopfField hopf_vector_field(int p, int q);

/// Cofactor c with X(z^2 + (x^p' y^q')^r) = c * (z^2 + (x^p' y^q')^r), when it exists.
std::optional<Rational> hopf_invariance(const HopfField& X, int pp, int qp, int r);

nlohmann::json separatrix_to_json(const SeparatrixPoly& s);

}  // namespace cusp
