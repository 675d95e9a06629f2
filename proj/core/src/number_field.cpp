#include "cusp/number_field.hpp"

namespace cusp {

namespace {

/// Largest square dividing a positive integer, found by trial division.
Integer square_part(Integer n) {
  Integer sq = 1;
  for (Integer f = 2; f * f <= n; ++f) {
    while (n % (f * f) == 0) {
      n /= f * f;
      sq *= f;
    }
    if (f > 100000) break;
  }
  return sq;
}

/// Radicand scaled by a rational square so equal fields compare equal when
/// the radicand is rational.
GaussianRational canonical_radicand(const GaussianRational& d) {
  if (!d.is_real()) return d;
  const Rational& q = d.re();
  Integer n = q.get_num() * q.get_den();
  const int sign = sgn(n);
  if (sign < 0) n = -n;
  const Integer sq = square_part(n);
  return GaussianRational(Rational(Integer(sign) * n / (sq * sq)));
}

}  // namespace

QuadField::QuadField(GaussianRational radicand) {
  if (radicand.sqrt()) throw ContractViolation("radicand is a square in Q(i)");
  radicand_ = canonical_radicand(radicand);
}

const GaussianRational& QuadField::radicand() const {
  if (!radicand_) throw ContractViolation("base field has no radicand");
  return *radicand_;
}

std::string QuadField::to_string() const {
  if (!radicand_) return "Q(I)";
  return "Q(I)(sqrt(" + radicand_->to_string() + "))";
}

KElem::KElem(QuadField field, GaussianRational a, GaussianRational b)
    : field_(std::move(field)), a_(std::move(a)), b_(std::move(b)) {
  if (field_.is_base() && !b_.is_zero()) throw ContractViolation("irrational part over the base field");
  if (b_.is_zero()) field_ = QuadField();
}

QuadField KElem::join(const KElem& x, const KElem& y) {
  if (x.field_.is_base()) return y.field_;
  if (y.field_.is_base() || x.field_ == y.field_) return x.field_;
  throw ContextMismatch("elements of different quadratic fields");
}

KElem operator+(const KElem& x, const KElem& y) { return {KElem::join(x, y), x.a_ + y.a_, x.b_ + y.b_}; }
KElem operator-(const KElem& x, const KElem& y) { return {KElem::join(x, y), x.a_ - y.a_, x.b_ - y.b_}; }

KElem operator*(const KElem& x, const KElem& y) {
  const QuadField f = KElem::join(x, y);
  GaussianRational a = x.a_ * y.a_;
  if (!x.b_.is_zero() && !y.b_.is_zero()) a += x.b_ * y.b_ * f.radicand();
  return {f, a, x.a_ * y.b_ + x.b_ * y.a_};
}

GaussianRational KElem::norm() const {
  if (b_.is_zero()) return a_ * a_;
  return a_ * a_ - b_ * b_ * field_.radicand();
}

KElem KElem::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero in quadratic field");
  if (b_.is_zero()) return KElem(a_.inverse());
  const GaussianRational n = norm().inverse();
  return {field_, a_ * n, -b_ * n};
}

KElem operator/(const KElem& x, const KElem& y) { return x * y.inverse(); }

std::string KElem::to_string() const {
  if (b_.is_zero()) return a_.to_string();
  std::string out = a_.is_zero() ? "" : a_.to_string() + " + ";
  return out + "(" + b_.to_string() + ")*sqrt(" + field_.radicand().to_string() + ")";
}

std::pair<KElem, KElem> quadratic_pair(const UPoly& q) {
  if (q.degree() != 2) throw ContractViolation("quadratic_pair needs a degree-2 polynomial");
  const UPoly m = q.monic();
  const GaussianRational half(Rational(1, 2));
  const GaussianRational center = -m.coeff(1) * half;
  // Roots center +- sqrt(disc)/2 with disc = b^2 - 4c.
  const GaussianRational disc = m.coeff(1) * m.coeff(1) - GaussianRational(4) * m.coeff(0);
  QuadField f(disc);
  // sqrt(disc) = s * sqrt(D) with s^2 = disc / D rational up to Q(i) squares.
  auto s = (disc / f.radicand()).sqrt();
  if (!s) throw ContractViolation("inconsistent radicand normalization");
  const GaussianRational b = *s * half;
  return {KElem(f, center, b), KElem(f, center, -b)};
}

// ---------------------------------------------------------------------------

KPoly::KPoly(QuadField field, SparsePoly p0, SparsePoly p1)
    : field_(std::move(field)), p0_(std::move(p0)), p1_(std::move(p1)) {
  if (field_.is_base() && !p1_.is_zero()) throw ContractViolation("irrational part over the base field");
  if (p1_.is_zero()) field_ = QuadField();
}

KPoly KPoly::constant(const VarList& vars, const KElem& c) {
  return {c.field(), SparsePoly::constant(vars, c.a()), SparsePoly::constant(vars, c.b())};
}

KElem KPoly::coefficient(const Exponent& e) const {
  return {field_, p0_.coefficient(e), p1_.coefficient(e)};
}

KPoly KPoly::homogeneous_part(int degree) const {
  return {field_, p0_.homogeneous_part(degree), p1_.homogeneous_part(degree)};
}

KPoly KPoly::derivative(std::size_t var) const { return {field_, p0_.derivative(var), p1_.derivative(var)}; }

KElem KPoly::evaluate(std::span<const KElem> point) const {
  KElem sum;
  for (const auto& e : support()) {
    KElem t = coefficient(e);
    for (std::size_t v = 0; v < point.size(); ++v) {
      for (unsigned k = 0; k < e[v]; ++k) t = t * point[v];
    }
    sum = sum + t;
  }
  return sum;
}

std::vector<Exponent> KPoly::support() const {
  std::map<Exponent, bool, GradedOrder> keys;
  for (const auto& [e, c] : p0_.terms()) keys[e] = true;
  for (const auto& [e, c] : p1_.terms()) keys[e] = true;
  std::vector<Exponent> out;
  for (const auto& [e, unused] : keys) out.push_back(e);
  return out;
}

namespace {

QuadField join_fields(const QuadField& a, const QuadField& b) {
  if (a.is_base()) return b;
  if (b.is_base() || a == b) return a;
  throw ContextMismatch("polynomials over different quadratic fields");
}

}  // namespace

KPoly operator+(const KPoly& x, const KPoly& y) {
  return {join_fields(x.field_, y.field_), x.p0_ + y.p0_, x.p1_ + y.p1_};
}

KPoly operator-(const KPoly& x, const KPoly& y) {
  return {join_fields(x.field_, y.field_), x.p0_ - y.p0_, x.p1_ - y.p1_};
}

KPoly operator*(const KPoly& x, const KPoly& y) {
  const QuadField f = join_fields(x.field_, y.field_);
  SparsePoly p0 = x.p0_ * y.p0_;
  if (!x.p1_.is_zero() && !y.p1_.is_zero()) p0 += (x.p1_ * y.p1_) * f.radicand();
  SparsePoly p1 = x.p0_ * y.p1_ + x.p1_ * y.p0_;
  return {f, std::move(p0), std::move(p1)};
}

KPoly operator*(const KElem& c, const KPoly& x) { return KPoly::constant(x.vars(), c) * x; }

std::string KPoly::to_string() const {
  if (p1_.is_zero()) return p0_.to_string();
  return "(" + p0_.to_string() + ") + (" + p1_.to_string() + ")*sqrt(" + field_.radicand().to_string() + ")";
}

KPoly translate(const SparsePoly& f, std::span<const KElem> shift) {
  const VarList& vars = f.vars();
  if (shift.size() != vars.size()) throw ContextMismatch("translation vector has wrong dimension");
  std::vector<std::vector<KPoly>> powers(vars.size());
  auto power = [&](std::size_t var, unsigned k) -> const KPoly& {
    auto& cache = powers[var];
    if (cache.empty()) {
      cache.push_back(KPoly(SparsePoly::constant(vars, 1)));
      cache.push_back(KPoly(SparsePoly::variable(vars, var)) + KPoly::constant(vars, shift[var]));
    }
    while (cache.size() <= k) cache.push_back(cache.back() * cache[1]);
    return cache[k];
  };
  KPoly out{SparsePoly(vars)};
  for (const auto& [e, c] : f.terms()) {
    KPoly term(SparsePoly::constant(vars, c));
    for (std::size_t v = 0; v < vars.size(); ++v) {
      if (e[v] != 0) term = term * power(v, e[v]);
    }
    out = out + term;
  }
  return out;
}

}  // namespace cusp
