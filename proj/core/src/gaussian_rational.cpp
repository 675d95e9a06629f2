#include "cusp/gaussian_rational.hpp"

#include <stdexcept>

namespace cusp {

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussianRational GaussianRational::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero in Q(i)");
  if (sgn(im_) == 0) return GaussianRational(Rational(1) / re_);
  Rational n = norm();
  return {re_ / n, -im_ / n};
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  return *this *= o.inverse();
}

GaussianRational GaussianRational::pow(unsigned e) const {
  GaussianRational result(1);
  GaussianRational base = *this;
  while (e != 0) {
    if (e & 1u) result *= base;
    e >>= 1u;
    if (e != 0) base *= base;
  }
  return result;
}

std::optional<Rational> rational_sqrt(const Rational& q) {
  if (sgn(q) < 0) return std::nullopt;
  const Integer& num = q.get_num();
  const Integer& den = q.get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) == 0 || mpz_perfect_square_p(den.get_mpz_t()) == 0) {
    return std::nullopt;
  }
  Integer rn;
  Integer rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  Rational r(rn, rd);
  r.canonicalize();
  return r;
}

std::optional<GaussianRational> GaussianRational::sqrt() const {
  if (is_zero()) return GaussianRational(0);
  // (a + b i)^2 = x + y i  =>  a^2 = (x + m)/2, b^2 = (m - x)/2 with m = |x + y i|.
  auto m = rational_sqrt(norm());
  if (!m) return std::nullopt;
  auto a = rational_sqrt((re_ + *m) / 2);
  auto b = rational_sqrt((*m - re_) / 2);
  if (!a || !b) return std::nullopt;
  Rational bb = sgn(im_) < 0 ? Rational(-*b) : *b;
  GaussianRational root(*a, bb);
  if (sgn(root.re_) < 0 || (sgn(root.re_) == 0 && sgn(root.im_) < 0)) root = -root;
  return root;
}

std::string rational_to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(const std::string& text) {
  Rational q(text);
  q.canonicalize();
  return q;
}

std::string GaussianRational::to_string() const {
  if (sgn(im_) == 0) return re_.get_str();
  std::string imag;
  if (im_ == 1) {
    imag = "I";
  } else if (im_ == -1) {
    imag = "-I";
  } else {
    imag = im_.get_str() + "*I";
  }
  if (sgn(re_) == 0) return imag;
  if (sgn(im_) < 0) return re_.get_str() + " - " + imag.substr(1);
  return re_.get_str() + " + " + imag;
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& g) { return os << g.to_string(); }

}  // namespace cusp
