#pragma once

#include "cusp/poly.hpp"
#include "cusp/upoly.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace cusp {

/// Q(i) or a quadratic extension Q(i)(sqrt(D)) with D not a square in Q(i).
/// A null radicand means the base field.
class QuadField {
public:
  QuadField() = default;
  explicit QuadField(GaussianRational radicand);

  bool is_base() const { return !radicand_; }
  const GaussianRational& radicand() const;
  std::string to_string() const;

  friend bool operator==(const QuadField& a, const QuadField& b) { return a.radicand_ == b.radicand_; }

private:
  std::optional<GaussianRational> radicand_;
};

/// Element a + b*sqrt(D) of a QuadField; b is zero over the base field.
class KElem {
public:
  KElem() = default;
  KElem(GaussianRational a) : a_(std::move(a)) {}  // NOLINT(google-explicit-constructor)
  KElem(long v) : a_(v) {}                         // NOLINT(google-explicit-constructor)
  KElem(QuadField field, GaussianRational a, GaussianRational b);

  const QuadField& field() const { return field_; }
  const GaussianRational& a() const { return a_; }
  const GaussianRational& b() const { return b_; }

  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  /// True iff the element lies in Q(i).
  bool in_base() const { return b_.is_zero(); }
  /// True iff the element is a rational number.
  bool is_rational() const { return b_.is_zero() && a_.is_real(); }

  KElem operator-() const { return {field_, -a_, -b_}; }
  friend KElem operator+(const KElem& x, const KElem& y);
  friend KElem operator-(const KElem& x, const KElem& y);
  friend KElem operator*(const KElem& x, const KElem& y);
  friend KElem operator/(const KElem& x, const KElem& y);
  friend bool operator==(const KElem& x, const KElem& y) { return x.a_ == y.a_ && x.b_ == y.b_; }

  KElem inverse() const;
  KElem conjugate() const { return {field_, a_, -b_}; }
  /// x * conjugate(x), an element of Q(i).
  GaussianRational norm() const;

  std::string to_string() const;

private:
  static QuadField join(const KElem& x, const KElem& y);

  QuadField field_;
  GaussianRational a_;
  GaussianRational b_;
};

/// Roots of a monic quadratic over Q(i) with non-square discriminant, as a
/// conjugate pair in the field generated by the discriminant's square root.
std::pair<KElem, KElem> quadratic_pair(const UPoly& monic_quadratic);

/// Polynomial P0 + P1*sqrt(D) with P0, P1 over a common variable list.
class KPoly {
public:
  KPoly() = default;
  explicit KPoly(SparsePoly p) : p0_(std::move(p)), p1_(p0_.vars()) {}
  KPoly(QuadField field, SparsePoly p0, SparsePoly p1);

  static KPoly constant(const VarList& vars, const KElem& c);

  const QuadField& field() const { return field_; }
  const SparsePoly& p0() const { return p0_; }
  const SparsePoly& p1() const { return p1_; }
  const VarList& vars() const { return p0_.vars(); }

  bool is_zero() const { return p0_.is_zero() && p1_.is_zero(); }
  KElem coefficient(const Exponent& e) const;
  int valuation() const { return std::min(p0_.valuation(), p1_.valuation()); }
  KPoly homogeneous_part(int degree) const;
  KPoly derivative(std::size_t var) const;
  KElem evaluate(std::span<const KElem> point) const;
  /// Every exponent that carries a nonzero coefficient, in graded order.
  std::vector<Exponent> support() const;

  friend KPoly operator+(const KPoly& x, const KPoly& y);
  friend KPoly operator-(const KPoly& x, const KPoly& y);
  friend KPoly operator*(const KPoly& x, const KPoly& y);
  friend KPoly operator*(const KElem& c, const KPoly& x);

  std::string to_string() const;

private:
  QuadField field_;
  SparsePoly p0_;
  SparsePoly p1_;
};

/// f(v + shift): every variable j is replaced by v_j + shift[j].
KPoly translate(const SparsePoly& f, std::span<const KElem> shift);

}  // namespace cusp
