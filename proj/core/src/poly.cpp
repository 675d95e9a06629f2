#include "cusp/poly.hpp"

#include <algorithm>
#include <numeric>

namespace cusp {

int total_degree(const Exponent& e) {
  return std::accumulate(e.begin(), e.end(), 0, [](int acc, std::uint16_t v) { return acc + v; });
}

bool GradedOrder::operator()(const Exponent& a, const Exponent& b) const {
  const int da = total_degree(a);
  const int db = total_degree(b);
  if (da != db) return da < db;
  return a > b;
}

VarList::VarList(std::vector<std::string> names) {
  if (names.size() > kMaxVars) throw ContractViolation("at most 6 variables are supported");
  for (std::size_t i = 0; i < names.size(); ++i) {
    for (std::size_t j = i + 1; j < names.size(); ++j) {
      if (names[i] == names[j]) throw ContractViolation("duplicate variable name '" + names[i] + "'");
    }
  }
  names_ = std::make_shared<const std::vector<std::string>>(std::move(names));
}

std::optional<std::size_t> VarList::index_of(const std::string& name) const {
  const auto& n = *names_;
  auto it = std::find(n.begin(), n.end(), name);
  if (it == n.end()) return std::nullopt;
  return static_cast<std::size_t>(it - n.begin());
}

// ---------------------------------------------------------------------------

SparsePoly SparsePoly::constant(VarList vars, const GaussianRational& c) {
  SparsePoly p(std::move(vars));
  p.add_term(Exponent{}, c);
  return p;
}

SparsePoly SparsePoly::variable(VarList vars, std::size_t index) {
  if (index >= vars.size()) throw ContractViolation("variable index out of range");
  Exponent e{};
  e[index] = 1;
  return monomial(std::move(vars), e);
}

SparsePoly SparsePoly::variable(VarList vars, const std::string& name) {
  auto idx = vars.index_of(name);
  if (!idx) throw ContextMismatch("unknown variable '" + name + "'");
  return variable(std::move(vars), *idx);
}

SparsePoly SparsePoly::monomial(VarList vars, const Exponent& e, const GaussianRational& c) {
  SparsePoly p(std::move(vars));
  for (std::size_t i = p.nvars(); i < kMaxVars; ++i) {
    if (e[i] != 0) throw ContractViolation("exponent uses a variable outside the ring");
  }
  p.add_term(e, c);
  return p;
}

bool SparsePoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && cusp::total_degree(terms_.begin()->first) == 0);
}

GaussianRational SparsePoly::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? GaussianRational(0) : it->second;
}

void SparsePoly::add_term(const Exponent& e, const GaussianRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

int SparsePoly::total_degree() const {
  if (terms_.empty()) return -1;
  return cusp::total_degree(terms_.rbegin()->first);
}

int SparsePoly::degree_in(std::size_t var) const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& [e, c] : terms_) d = std::max<int>(d, e[var]);
  return d;
}

int SparsePoly::valuation() const {
  if (terms_.empty()) return kInfiniteValuation;
  return cusp::total_degree(terms_.begin()->first);
}

SparsePoly SparsePoly::homogeneous_part(int degree) const {
  SparsePoly out(vars_);
  for (const auto& [e, c] : terms_) {
    if (cusp::total_degree(e) == degree) out.terms_.emplace_hint(out.terms_.end(), e, c);
  }
  return out;
}

SparsePoly SparsePoly::truncated(int order) const {
  SparsePoly out(vars_);
  for (const auto& [e, c] : terms_) {
    if (cusp::total_degree(e) >= order) break;
    out.terms_.emplace_hint(out.terms_.end(), e, c);
  }
  return out;
}

void SparsePoly::require_same_ring(const SparsePoly& o, const char* op) const {
  if (!(vars_ == o.vars_)) throw ContextMismatch(std::string("variable context mismatch in ") + op);
}

SparsePoly SparsePoly::operator-() const {
  SparsePoly out(*this);
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

SparsePoly& SparsePoly::operator+=(const SparsePoly& o) {
  require_same_ring(o, "addition");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

SparsePoly& SparsePoly::operator-=(const SparsePoly& o) {
  require_same_ring(o, "subtraction");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

SparsePoly& SparsePoly::operator*=(const GaussianRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

namespace {

Exponent add_exponents(const Exponent& a, const Exponent& b) {
  Exponent r{};
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    const unsigned s = unsigned{a[i]} + unsigned{b[i]};
    if (s > std::numeric_limits<std::uint16_t>::max()) throw ContractViolation("exponent overflow");
    r[i] = static_cast<std::uint16_t>(s);
  }
  return r;
}

}  // namespace

SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
  a.require_same_ring(b, "multiplication");
  SparsePoly out(a.vars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) out.add_term(add_exponents(ea, eb), ca * cb);
  }
  return out;
}

SparsePoly SparsePoly::mul_truncated(const SparsePoly& o, int order) const {
  require_same_ring(o, "multiplication");
  SparsePoly out(vars_);
  for (const auto& [ea, ca] : terms_) {
    const int da = cusp::total_degree(ea);
    if (da >= order) break;
    for (const auto& [eb, cb] : o.terms_) {
      if (da + cusp::total_degree(eb) >= order) break;
      out.add_term(add_exponents(ea, eb), ca * cb);
    }
  }
  return out;
}

SparsePoly poly_mul(const SparsePoly& a, const SparsePoly& b) { return a * b; }

int valuation(const SparsePoly& f) { return f.valuation(); }

SparsePoly SparsePoly::pow(unsigned e) const {
  SparsePoly result = constant(vars_, 1);
  SparsePoly base = *this;
  while (e != 0) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e != 0) base = base * base;
  }
  return result;
}

SparsePoly SparsePoly::derivative(std::size_t var) const {
  SparsePoly out(vars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponent d = e;
    --d[var];
    out.add_term(d, c * GaussianRational(static_cast<long>(e[var])));
  }
  return out;
}

SparsePoly SparsePoly::substitute(std::span<const SparsePoly> images) const {
  if (images.size() != nvars()) throw ContextMismatch("substitution needs one image per variable");
  if (images.empty()) return *this;
  const VarList& target = images.front().vars();
  for (const auto& im : images) {
    if (!(im.vars() == target)) throw ContextMismatch("substitution images over different rings");
  }
  // Cache powers per variable; exponents in this engine stay small.
  std::vector<std::vector<SparsePoly>> powers(nvars());
  auto power = [&](std::size_t var, unsigned k) -> const SparsePoly& {
    auto& cache = powers[var];
    if (cache.empty()) cache.push_back(constant(target, 1));
    while (cache.size() <= k) cache.push_back(cache.back() * images[var]);
    return cache[k];
  };
  SparsePoly out(target);
  for (const auto& [e, c] : terms_) {
    SparsePoly term = constant(target, c);
    for (std::size_t v = 0; v < nvars(); ++v) {
      if (e[v] != 0) term = term * power(v, e[v]);
    }
    out += term;
  }
  return out;
}

SparsePoly SparsePoly::evaluate_at(std::size_t var, const GaussianRational& c) const {
  SparsePoly out(vars_);
  std::vector<GaussianRational> pw{GaussianRational(1)};
  for (const auto& [e, coeff] : terms_) {
    while (pw.size() <= e[var]) pw.push_back(pw.back() * c);
    Exponent r = e;
    r[var] = 0;
    out.add_term(r, coeff * pw[e[var]]);
  }
  return out;
}

GaussianRational SparsePoly::evaluate(std::span<const GaussianRational> point) const {
  if (point.size() != nvars()) throw ContextMismatch("evaluation point has wrong dimension");
  GaussianRational sum(0);
  for (const auto& [e, c] : terms_) {
    GaussianRational t = c;
    for (std::size_t v = 0; v < nvars(); ++v) {
      if (e[v] != 0) t *= point[v].pow(e[v]);
    }
    sum += t;
  }
  return sum;
}

Exponent SparsePoly::monomial_content() const {
  if (terms_.empty()) return Exponent{};
  Exponent m = terms_.begin()->first;
  for (const auto& [e, c] : terms_) {
    for (std::size_t i = 0; i < kMaxVars; ++i) m[i] = std::min(m[i], e[i]);
  }
  return m;
}

std::optional<SparsePoly> SparsePoly::divide_monomial(const Exponent& d) const {
  SparsePoly out(vars_);
  for (const auto& [e, c] : terms_) {
    Exponent q{};
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      if (e[i] < d[i]) return std::nullopt;
      q[i] = static_cast<std::uint16_t>(e[i] - d[i]);
    }
    out.terms_.emplace(q, c);
  }
  return out;
}

SparsePoly SparsePoly::multiply_monomial(const Exponent& d) const {
  SparsePoly out(vars_);
  for (const auto& [e, c] : terms_) out.terms_.emplace(add_exponents(e, d), c);
  return out;
}

SparsePoly SparsePoly::embed(const VarList& target) const {
  if (vars_ == target) return *this;
  std::vector<std::size_t> map(nvars());
  std::vector<bool> present(nvars(), false);
  for (std::size_t i = 0; i < nvars(); ++i) {
    if (auto idx = target.index_of(vars_[i])) {
      map[i] = *idx;
      present[i] = true;
    }
  }
  SparsePoly out(target);
  for (const auto& [e, c] : terms_) {
    Exponent r{};
    for (std::size_t i = 0; i < nvars(); ++i) {
      if (e[i] == 0) continue;
      if (!present[i]) throw ContextMismatch("variable '" + vars_[i] + "' is not in the target ring");
      r[map[i]] = e[i];
    }
    out.add_term(r, c);
  }
  return out;
}

std::string exponent_to_string(const VarList& vars, const Exponent& e) {
  std::string out;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += vars[i];
    if (e[i] > 1) out += "^" + std::to_string(e[i]);
  }
  return out;
}

std::string SparsePoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    const std::string mono = exponent_to_string(vars_, e);
    std::string term;
    if (mono.empty()) {
      term = c.to_string();
    } else if (c.is_one()) {
      term = mono;
    } else if (c == GaussianRational(-1)) {
      term = "-" + mono;
    } else if (c.is_real() || sgn(c.re()) == 0) {
      term = c.to_string() + "*" + mono;
    } else {
      term = "(" + c.to_string() + ")*" + mono;
    }
    if (first) {
      out = term;
      first = false;
    } else if (term.front() == '-') {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

TruncSeries::TruncSeries(SparsePoly poly, std::optional<int> order)
    : poly_(order ? poly.truncated(*order) : std::move(poly)), order_(order) {
  if (order_ && *order_ < 0) throw ContractViolation("negative truncation order");
}

int TruncSeries::valuation() const {
  if (poly_.is_zero()) return order_.value_or(kInfiniteValuation);
  return poly_.valuation();
}

TruncSeries TruncSeries::with_order(int order) const {
  return TruncSeries(poly_, std::min(order, effective_order()));
}

namespace {

std::optional<int> min_order(const TruncSeries& a, const TruncSeries& b) {
  if (a.is_exact()) return b.order();
  if (b.is_exact()) return a.order();
  return std::min(*a.order(), *b.order());
}

}  // namespace

TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
  return TruncSeries(a.poly_ + b.poly_, min_order(a, b));
}

TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) {
  return TruncSeries(a.poly_ - b.poly_, min_order(a, b));
}

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
  auto order = min_order(a, b);
  if (order) return TruncSeries(a.poly_.mul_truncated(b.poly_, *order), order);
  return TruncSeries(a.poly_ * b.poly_);
}

TruncSeries poly_mul(const TruncSeries& a, const TruncSeries& b) { return a * b; }

int valuation(const TruncSeries& f) { return f.valuation(); }

std::string TruncSeries::to_string() const {
  std::string s = poly_.to_string();
  if (order_) s += " + O(" + std::to_string(*order_) + ")";
  return s;
}

TruncSeries series_reciprocal_unit(const TruncSeries& f, int order) {
  const int n = f.order().value_or(order);
  const GaussianRational f0 = f.constant_term();
  if (f0.is_zero()) throw NotAUnit("series_reciprocal_unit: f(0) = 0");
  const GaussianRational inv0 = f0.inverse();
  std::vector<SparsePoly> fh;
  fh.reserve(static_cast<std::size_t>(n));
  for (int d = 0; d < n; ++d) fh.push_back(f.poly().homogeneous_part(d));
  // g_d = -(sum_{i=1..d} f_i g_{d-i}) / f_0, degree by degree.
  std::vector<SparsePoly> gh{SparsePoly::constant(f.vars(), inv0)};
  for (int d = 1; d < n; ++d) {
    SparsePoly acc(f.vars());
    for (int i = 1; i <= d; ++i) {
      if (!fh[static_cast<std::size_t>(i)].is_zero()) acc += fh[static_cast<std::size_t>(i)] * gh[static_cast<std::size_t>(d - i)];
    }
    gh.push_back(acc * (-inv0));
  }
  SparsePoly g(f.vars());
  for (const auto& part : gh) g += part;
  return TruncSeries(g, n);
}

TruncSeries series_sqrt_unit(const TruncSeries& f, int order) {
  const int n = f.order().value_or(order);
  const GaussianRational f0 = f.constant_term();
  if (f0.is_zero()) throw NotAUnit("series_sqrt_unit: f(0) = 0");
  auto root = f0.sqrt();
  if (!root) throw NoExactRoot("series_sqrt_unit: " + f0.to_string() + " has no square root in Q(i)");
  const GaussianRational inv2g0 = (GaussianRational(2) * *root).inverse();
  std::vector<SparsePoly> fh;
  for (int d = 0; d < n; ++d) fh.push_back(f.poly().homogeneous_part(d));
  // 2 g_0 g_d + sum_{0<i<d} g_i g_{d-i} = f_d.
  std::vector<SparsePoly> gh{SparsePoly::constant(f.vars(), *root)};
  for (int d = 1; d < n; ++d) {
    SparsePoly acc = fh[static_cast<std::size_t>(d)];
    for (int i = 1; i < d; ++i) acc -= gh[static_cast<std::size_t>(i)] * gh[static_cast<std::size_t>(d - i)];
    gh.push_back(acc * inv2g0);
  }
  SparsePoly g(f.vars());
  for (const auto& part : gh) g += part;
  return TruncSeries(g, n);
}

}  // namespace cusp
