#include "cusp/upoly.hpp"

#include <algorithm>
#include <set>

namespace cusp {

UPoly::UPoly(std::vector<GaussianRational> coeffs) : c_(std::move(coeffs)) { trim(); }

void UPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

UPoly UPoly::from_sparse(const SparsePoly& p, std::size_t var) {
  std::vector<GaussianRational> c;
  for (const auto& [e, coeff] : p.terms()) {
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      if (i != var && e[i] != 0) throw ContractViolation("polynomial is not univariate in the requested variable");
    }
    if (c.size() <= e[var]) c.resize(e[var] + 1u);
    c[e[var]] += coeff;
  }
  return UPoly(std::move(c));
}

SparsePoly UPoly::to_sparse(const VarList& vars, std::size_t var) const {
  SparsePoly p(vars);
  for (std::size_t k = 0; k < c_.size(); ++k) {
    Exponent e{};
    e[var] = static_cast<std::uint16_t>(k);
    p.add_term(e, c_[k]);
  }
  return p;
}

GaussianRational UPoly::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return GaussianRational(0);
  return c_[static_cast<std::size_t>(k)];
}

UPoly UPoly::monic() const {
  if (c_.empty()) return *this;
  const GaussianRational inv = lead().inverse();
  std::vector<GaussianRational> c = c_;
  for (auto& v : c) v *= inv;
  return UPoly(std::move(c));
}

UPoly UPoly::derivative() const {
  std::vector<GaussianRational> c;
  for (std::size_t k = 1; k < c_.size(); ++k) c.push_back(c_[k] * GaussianRational(static_cast<long>(k)));
  return UPoly(std::move(c));
}

GaussianRational UPoly::evaluate(const GaussianRational& t) const {
  GaussianRational acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

UPoly operator+(const UPoly& a, const UPoly& b) {
  std::vector<GaussianRational> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
  for (std::size_t k = 0; k < b.c_.size(); ++k) c[k] += b.c_[k];
  return UPoly(std::move(c));
}

UPoly operator-(const UPoly& a, const UPoly& b) {
  std::vector<GaussianRational> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
  for (std::size_t k = 0; k < b.c_.size(); ++k) c[k] -= b.c_[k];
  return UPoly(std::move(c));
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<GaussianRational> c(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return UPoly(std::move(c));
}

std::pair<UPoly, UPoly> UPoly::divmod(const UPoly& d) const {
  if (d.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<GaussianRational> r = c_;
  const int dd = d.degree();
  std::vector<GaussianRational> q(c_.size() >= d.c_.size() ? c_.size() - d.c_.size() + 1 : 0);
  const GaussianRational inv = d.lead().inverse();
  for (int k = degree(); k >= dd; --k) {
    const GaussianRational f = r[static_cast<std::size_t>(k)] * inv;
    if (f.is_zero()) continue;
    q[static_cast<std::size_t>(k - dd)] = f;
    for (int j = 0; j <= dd; ++j) r[static_cast<std::size_t>(k - dd + j)] -= f * d.c_[static_cast<std::size_t>(j)];
  }
  return {UPoly(std::move(q)), UPoly(std::move(r))};
}

std::string UPoly::to_string(const std::string& var) const {
  return to_sparse(VarList{var}, 0).to_string();
}

UPoly gcd(const UPoly& a, const UPoly& b) {
  UPoly x = a;
  UPoly y = b;
  while (!y.is_zero()) {
    UPoly r = x.divmod(y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

XgcdResult xgcd(const UPoly& a, const UPoly& b) {
  UPoly r0 = a, r1 = b;
  UPoly s0 = UPoly::constant(1), s1;
  UPoly t0, t1 = UPoly::constant(1);
  while (!r1.is_zero()) {
    auto [q, r] = r0.divmod(r1);
    r0 = std::exchange(r1, r);
    s0 = std::exchange(s1, s0 - q * s1);
    t0 = std::exchange(t1, t0 - q * t1);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  const UPoly scale = UPoly::constant(r0.lead().inverse());
  return {r0 * scale, s0 * scale, t0 * scale};
}

UPoly squarefree_part(const UPoly& f) {
  if (f.degree() <= 0) return f.monic();
  const UPoly g = gcd(f, f.derivative());
  return f.divmod(g).first.monic();
}

std::optional<std::pair<GaussianRational, GaussianRational>> quadratic_roots(const UPoly& q) {
  if (q.degree() != 2) throw ContractViolation("quadratic_roots needs a degree-2 polynomial");
  const UPoly m = q.monic();
  const GaussianRational b = m.coeff(1);
  const GaussianRational c = m.coeff(0);
  auto root = (b * b - GaussianRational(4) * c).sqrt();
  if (!root) return std::nullopt;
  const GaussianRational half(Rational(1, 2));
  return std::make_pair((-b + *root) * half, (-b - *root) * half);
}

namespace {

struct GaussInt {
  Integer re;
  Integer im;
};

constexpr unsigned long kNormSearchLimit = 1'000'000'000'000UL;

std::vector<Integer> integer_divisors(const Integer& n) {
  std::vector<Integer> small;
  std::vector<Integer> large;
  for (Integer d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d * d != n) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

/// All Gaussian-integer divisors of z (every associate included).
std::optional<std::vector<GaussInt>> gaussian_divisors(const GaussInt& z) {
  const Integer norm = z.re * z.re + z.im * z.im;
  if (norm > Integer(std::to_string(kNormSearchLimit))) return std::nullopt;
  std::vector<GaussInt> out;
  for (const Integer& n : integer_divisors(norm)) {
    Integer x_max;
    mpz_sqrt(x_max.get_mpz_t(), n.get_mpz_t());
    for (Integer x = -x_max; x <= x_max; ++x) {
      const Integer rest = n - x * x;
      if (mpz_perfect_square_p(rest.get_mpz_t()) == 0) continue;
      Integer y;
      mpz_sqrt(y.get_mpz_t(), rest.get_mpz_t());
      for (int sign : {1, -1}) {
        if (sign == -1 && y == 0) continue;
        const Integer yy = y * sign;
        // z / d = z * conj(d) / n must be a Gaussian integer.
        const Integer qr = z.re * x + z.im * yy;
        const Integer qi = z.im * x - z.re * yy;
        if (qr % n == 0 && qi % n == 0) out.push_back({x, yy});
      }
    }
  }
  return out;
}

}  // namespace

RootSplit split_qi_roots(const UPoly& f) {
  RootSplit out;
  UPoly rest = f.monic();
  if (rest.degree() <= 0) {
    out.cofactor = rest;
    return out;
  }
  // Peel off the root 0.
  while (rest.degree() >= 1 && rest.coeff(0).is_zero()) {
    out.roots.emplace_back(0);
    rest = rest.divmod(UPoly({GaussianRational(0), GaussianRational(1)})).first;
  }
  auto peel_low_degree = [&]() {
    while (rest.degree() == 1 || rest.degree() == 2) {
      if (rest.degree() == 1) {
        out.roots.push_back(-rest.monic().coeff(0));
        rest = UPoly::constant(1);
        return;
      }
      if (auto r = quadratic_roots(rest)) {
        out.roots.push_back(r->first);
        out.roots.push_back(r->second);
        rest = UPoly::constant(1);
      }
      return;
    }
  };
  peel_low_degree();
  if (rest.degree() >= 3) {
    // Clear denominators to get Gaussian-integer coefficients.
    Integer l = 1;
    for (const auto& c : rest.coeffs()) {
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.re().get_den_mpz_t());
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.im().get_den_mpz_t());
    }
    auto to_gauss = [&](const GaussianRational& c) {
      Rational re = c.re() * Rational(l);
      Rational im = c.im() * Rational(l);
      return GaussInt{re.get_num(), im.get_num()};
    };
    auto num = gaussian_divisors(to_gauss(rest.coeff(0)));
    auto den = gaussian_divisors(to_gauss(rest.lead()));
    if (!num || !den) {
      out.complete = false;
    } else {
      std::vector<GaussianRational> candidates;
      for (const auto& b : *den) {
        if (b.re <= 0 || b.im < 0) continue;  // one associate per class
        const GaussianRational bb{Rational(b.re), Rational(b.im)};
        for (const auto& a : *num) candidates.push_back(GaussianRational(Rational(a.re), Rational(a.im)) / bb);
      }
      for (const auto& r : candidates) {
        if (rest.degree() < 1) break;
        if (rest.evaluate(r).is_zero()) {
          if (std::find(out.roots.begin(), out.roots.end(), r) != out.roots.end()) continue;
          out.roots.push_back(r);
          rest = rest.divmod(UPoly::linear_root(r)).first;
        }
      }
      peel_low_degree();
    }
  }
  out.cofactor = rest.monic();
  // Deterministic order: real part, then imaginary part.
  std::sort(out.roots.begin(), out.roots.end(), [](const GaussianRational& a, const GaussianRational& b) {
    if (a.re() != b.re()) return a.re() < b.re();
    return a.im() < b.im();
  });
  return out;
}

}  // namespace cusp
