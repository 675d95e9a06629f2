#pragma once

#include "cusp/poly.hpp"

#include <string>
#include <utility>
#include <vector>

namespace cusp {

/// Dense univariate polynomial over Q(i); coeffs()[k] multiplies t^k and the
/// leading coefficient is never zero.
class UPoly {
public:
  UPoly() = default;
  explicit UPoly(std::vector<GaussianRational> coeffs);
  static UPoly constant(const GaussianRational& c) { return UPoly({c}); }
  static UPoly linear_root(const GaussianRational& root) { return UPoly({-root, GaussianRational(1)}); }

  /// Reads a polynomial that only involves variable `var`.
  static UPoly from_sparse(const SparsePoly& p, std::size_t var);
  SparsePoly to_sparse(const VarList& vars, std::size_t var) const;

  const std::vector<GaussianRational>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const GaussianRational& lead() const { return c_.back(); }
  GaussianRational coeff(int k) const;

  UPoly monic() const;
  UPoly derivative() const;
  GaussianRational evaluate(const GaussianRational& t) const;

  friend UPoly operator+(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

  /// Euclidean division; throws on division by zero.
  std::pair<UPoly, UPoly> divmod(const UPoly& d) const;

  std::string to_string(const std::string& var = "t") const;

private:
  void trim();
  std::vector<GaussianRational> c_;
};

/// Monic gcd (zero if both are zero).
UPoly gcd(const UPoly& a, const UPoly& b);
/// Extended Euclid: returns (g, s, t) with s*a + t*b = g monic.
struct XgcdResult {
  UPoly g;
  UPoly s;
  UPoly t;
};
XgcdResult xgcd(const UPoly& a, const UPoly& b);

/// f / gcd(f, f'), made monic.
UPoly squarefree_part(const UPoly& f);

/// Roots of a squarefree polynomial that lie in Q(i), and the monic cofactor
/// carrying the remaining (non-Q(i)) roots. Candidate roots are searched via
/// Gaussian-integer divisors; `complete` is false if a coefficient was too
/// large for the search and the cofactor may still hide Q(i) roots.
struct RootSplit {
  std::vector<GaussianRational> roots;
  UPoly cofactor;
  bool complete = true;
};
RootSplit split_qi_roots(const UPoly& squarefree);

/// Roots of a quadratic x^2 + b x + c over Q(i), if its discriminant is a square.
std::optional<std::pair<GaussianRational, GaussianRational>> quadratic_roots(const UPoly& monic_quadratic);

}  // namespace cusp
