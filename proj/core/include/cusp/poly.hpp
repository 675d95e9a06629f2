#pragma once

#include "cusp/errors.hpp"
#include "cusp/gaussian_rational.hpp"

#include <array>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cusp {

inline constexpr std::size_t kMaxVars = 6;
inline constexpr int kInfiniteValuation = std::numeric_limits<int>::max();
inline constexpr int kDefaultTruncation = 16;

using Exponent = std::array<std::uint16_t, kMaxVars>;

int total_degree(const Exponent& e);

/// Graded order: lower total degree first, then lexicographically larger
/// exponent first (x^2 < x*y < y^2 for vars (x, y)).
struct GradedOrder {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

/// Ordered list of variable names shared by polynomials of one ring.
class VarList {
public:
  VarList() : names_(std::make_shared<const std::vector<std::string>>()) {}
  VarList(std::vector<std::string> names);  // NOLINT(google-explicit-constructor)
  VarList(std::initializer_list<std::string> names) : VarList(std::vector<std::string>(names)) {}

  std::size_t size() const { return names_->size(); }
  const std::string& operator[](std::size_t i) const { return (*names_)[i]; }
  const std::vector<std::string>& names() const { return *names_; }
  std::optional<std::size_t> index_of(const std::string& name) const;

  friend bool operator==(const VarList& a, const VarList& b) {
    return a.names_ == b.names_ || *a.names_ == *b.names_;
  }

private:
  std::shared_ptr<const std::vector<std::string>> names_;
};

/// Sparse multivariate polynomial with Q(i) coefficients. No zero
/// coefficient is ever stored.
class SparsePoly {
public:
  using Terms = std::map<Exponent, GaussianRational, GradedOrder>;

  SparsePoly() = default;
  explicit SparsePoly(VarList vars) : vars_(std::move(vars)) {}

  static SparsePoly constant(VarList vars, const GaussianRational& c);
  static SparsePoly variable(VarList vars, std::size_t index);
  static SparsePoly variable(VarList vars, const std::string& name);
  static SparsePoly monomial(VarList vars, const Exponent& e, const GaussianRational& c = 1);

  const VarList& vars() const { return vars_; }
  std::size_t nvars() const { return vars_.size(); }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  GaussianRational coefficient(const Exponent& e) const;
  GaussianRational constant_term() const { return coefficient(Exponent{}); }

  /// Adds c*x^e (merging with any existing term).
  void add_term(const Exponent& e, const GaussianRational& c);

  int total_degree() const;
  int degree_in(std::size_t var) const;
  /// Minimal total degree of a nonzero term; kInfiniteValuation for zero.
  int valuation() const;
  SparsePoly homogeneous_part(int degree) const;
  /// Terms of total degree < order.
  SparsePoly truncated(int order) const;

  SparsePoly operator-() const;
  SparsePoly& operator+=(const SparsePoly& o);
  SparsePoly& operator-=(const SparsePoly& o);
  SparsePoly& operator*=(const SparsePoly& o) { return *this = *this * o; }
  SparsePoly& operator*=(const GaussianRational& c);
  friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
  friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }
  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b);
  friend SparsePoly operator*(SparsePoly a, const GaussianRational& c) { return a *= c; }
  friend SparsePoly operator*(const GaussianRational& c, SparsePoly a) { return a *= c; }
  friend bool operator==(const SparsePoly& a, const SparsePoly& b) {
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }

  SparsePoly pow(unsigned e) const;
  /// Product truncated to total degree < order (avoids building dropped terms).
  SparsePoly mul_truncated(const SparsePoly& o, int order) const;

  SparsePoly derivative(std::size_t var) const;

  /// Ring map: variable j is replaced by images[j]; all images share one
  /// target variable list, which the result lives over.
  SparsePoly substitute(std::span<const SparsePoly> images) const;
  /// Replaces variable `var` by the constant c, keeping the variable list.
  SparsePoly evaluate_at(std::size_t var, const GaussianRational& c) const;
  GaussianRational evaluate(std::span<const GaussianRational> point) const;

  /// Componentwise minimum exponent over all terms (zero vector for 0).
  Exponent monomial_content() const;
  /// Exact quotient by x^e, or nullopt if some term is not divisible.
  std::optional<SparsePoly> divide_monomial(const Exponent& e) const;
  SparsePoly multiply_monomial(const Exponent& e) const;

  /// Re-expresses the polynomial over `target`, mapping variables by name.
  /// Throws ContextMismatch if a used variable is missing from `target`.
  SparsePoly embed(const VarList& target) const;

  /// Deterministic text accepted by parse_poly, e.g. "1 + 3/2*u - I*u^2".
  std::string to_string() const;

private:
  void require_same_ring(const SparsePoly& o, const char* op) const;

  VarList vars_;
  Terms terms_;
};

SparsePoly poly_mul(const SparsePoly& a, const SparsePoly& b);
int valuation(const SparsePoly& f);
std::string exponent_to_string(const VarList& vars, const Exponent& e);

/// Degree-truncated power series: a polynomial that is only known modulo
/// terms of total degree >= order. An absent order marks an exact polynomial.
class TruncSeries {
public:
  TruncSeries() = default;
  explicit TruncSeries(SparsePoly poly, std::optional<int> order = std::nullopt);

  static TruncSeries exact(SparsePoly poly) { return TruncSeries(std::move(poly)); }

  const SparsePoly& poly() const { return poly_; }
  const VarList& vars() const { return poly_.vars(); }
  bool is_exact() const { return !order_.has_value(); }
  std::optional<int> order() const { return order_; }
  /// Order used for arithmetic; kInfiniteValuation when exact.
  int effective_order() const { return order_.value_or(kInfiniteValuation); }

  /// Minimal degree of a stored term; for a truncated zero this is the
  /// truncation order (a lower bound), for an exact zero kInfiniteValuation.
  int valuation() const;
  bool is_zero_mod_order() const { return poly_.is_zero(); }
  GaussianRational constant_term() const { return poly_.constant_term(); }

  /// Same series with a finite order (truncating further if needed).
  TruncSeries with_order(int order) const;

  TruncSeries operator-() const { return TruncSeries(-poly_, order_); }
  friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b);
  friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b);
  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);
  friend bool operator==(const TruncSeries& a, const TruncSeries& b) {
    return a.order_ == b.order_ && a.poly_ == b.poly_;
  }

  std::string to_string() const;

private:
  SparsePoly poly_;
  std::optional<int> order_;
};

TruncSeries poly_mul(const TruncSeries& a, const TruncSeries& b);
int valuation(const TruncSeries& f);

/// g with f*g == 1 modulo degree N, where N is f's order or `order` if f is
/// exact. Throws NotAUnit when f(0) == 0.
TruncSeries series_reciprocal_unit(const TruncSeries& f, int order = kDefaultTruncation);

/// g with g^2 == f modulo degree N and g(0) the principal root of f(0).
/// Throws NotAUnit when f(0) == 0 and NoExactRoot when f(0) has no root in Q(i).
TruncSeries series_sqrt_unit(const TruncSeries& f, int order = kDefaultTruncation);

}  // namespace cusp
