#include "cusp/forms.hpp"

#include <nlohmann/json.hpp>

#include <bit>

namespace cusp {

Chart::Chart(std::string chart_name, VarList chart_vars, std::vector<std::string> steps)
    : name(std::move(chart_name)), vars(std::move(chart_vars)), lineage(std::move(steps)) {}

int key_degree(FormKey key) { return std::popcount(key); }

int wedge_sign(FormKey a, FormKey b) {
  if ((a & b) != 0) return 0;
  int inversions = 0;
  for (unsigned i = 0; i < 32; ++i) {
    if ((a >> i & 1u) == 0) continue;
    // Count members of b below i: each one has to move past dx_i.
    inversions += std::popcount(b & ((1u << i) - 1u));
  }
  return inversions % 2 == 0 ? 1 : -1;
}

KForm::KForm(int degree, Chart chart) : degree_(degree), chart_(std::move(chart)) {
  if (degree < 0 || degree > static_cast<int>(chart_.dim())) throw ContractViolation("form degree out of range");
}

KForm KForm::function(const SparsePoly& f, const Chart& chart) {
  KForm out(0, chart);
  out.add(0, f);
  return out;
}

KForm KForm::one_form(const Chart& chart, const std::vector<SparsePoly>& coeffs) {
  if (coeffs.size() != chart.dim()) throw ContextMismatch("one coefficient per chart variable expected");
  KForm out(1, chart);
  for (std::size_t i = 0; i < coeffs.size(); ++i) out.add(FormKey{1} << i, coeffs[i]);
  return out;
}

KForm KForm::differential(const Chart& chart, std::size_t var) {
  KForm out(1, chart);
  out.add(FormKey{1} << var, SparsePoly::constant(chart.vars, 1));
  return out;
}

SparsePoly KForm::coeff(FormKey key) const {
  auto it = coeffs_.find(key);
  return it == coeffs_.end() ? SparsePoly(chart_.vars) : it->second;
}

void KForm::add(FormKey key, const SparsePoly& c) {
  if (key_degree(key) != degree_ || key >= (1u << chart_.dim())) throw ContractViolation("form key does not match degree");
  if (c.is_zero()) return;
  auto [it, inserted] = coeffs_.try_emplace(key, c.embed(chart_.vars));
  if (!inserted) {
    it->second += c.embed(chart_.vars);
    if (it->second.is_zero()) coeffs_.erase(it);
  }
}

void KForm::require_compatible(const KForm& o, const char* op) const {
  if (!(chart_.vars == o.chart_.vars)) throw ContextMismatch(std::string("chart mismatch in ") + op);
  if (degree_ != o.degree_) throw ContractViolation(std::string("degree mismatch in ") + op);
}

KForm KForm::operator-() const {
  return map_coeffs([](const SparsePoly& c) { return -c; });
}

KForm operator+(const KForm& a, const KForm& b) {
  a.require_compatible(b, "addition");
  KForm out = a;
  for (const auto& [k, c] : b.coeffs_) out.add(k, c);
  return out;
}

KForm operator-(const KForm& a, const KForm& b) { return a + (-b); }

KForm operator*(const SparsePoly& f, const KForm& a) {
  return a.map_coeffs([&](const SparsePoly& c) { return f * c; });
}

int KForm::valuation() const {
  int v = kInfiniteValuation;
  for (const auto& [k, c] : coeffs_) v = std::min(v, c.valuation());
  return v;
}

KForm KForm::truncated(int order) const {
  return map_coeffs([&](const SparsePoly& c) { return c.truncated(order); });
}

std::string KForm::key_name(FormKey key) const {
  if (key == 0) return "1";
  std::string out;
  for (std::size_t i = 0; i < chart_.dim(); ++i) {
    if ((key >> i & 1u) == 0) continue;
    if (!out.empty()) out += "∧";
    out += "d" + chart_.vars[i];
  }
  return out;
}

std::string KForm::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (const auto& [k, c] : coeffs_) {
    if (!out.empty()) out += " + ";
    out += "(" + c.to_string() + ")";
    if (k != 0) out += " " + key_name(k);
  }
  return out;
}

KForm exterior_derivative(const KForm& f) {
  if (f.degree() >= static_cast<int>(f.chart().dim())) throw ContractViolation("d of a top-degree form");
  KForm out(f.degree() + 1, f.chart());
  for (const auto& [k, c] : f.coeffs()) {
    for (std::size_t i = 0; i < f.chart().dim(); ++i) {
      const FormKey di = FormKey{1} << i;
      const int s = wedge_sign(di, k);
      if (s == 0) continue;
      SparsePoly dc = c.derivative(i);
      if (dc.is_zero()) continue;
      out.add(di | k, s > 0 ? dc : -dc);
    }
  }
  return out;
}

KForm wedge(const KForm& a, const KForm& b) {
  if (!(a.vars() == b.vars())) throw ContextMismatch("chart mismatch in wedge");
  const int deg = a.degree() + b.degree();
  if (deg > static_cast<int>(a.chart().dim())) throw ContractViolation("wedge degree overflow");
  KForm out(deg, a.chart());
  for (const auto& [ka, ca] : a.coeffs()) {
    for (const auto& [kb, cb] : b.coeffs()) {
      const int s = wedge_sign(ka, kb);
      if (s == 0) continue;
      SparsePoly prod = ca * cb;
      out.add(ka | kb, s > 0 ? prod : -prod);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

MonomialMap::MonomialMap(Chart source, Chart target, std::vector<SparsePoly> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  if (images_.size() != target_.dim()) throw ContextMismatch("one image per target variable expected");
  for (auto& im : images_) im = im.embed(source_.vars);
}

MonomialMap MonomialMap::identity(const Chart& chart) {
  std::vector<SparsePoly> images;
  for (std::size_t i = 0; i < chart.dim(); ++i) images.push_back(SparsePoly::variable(chart.vars, i));
  return {chart, chart, std::move(images)};
}

SparsePoly MonomialMap::apply(const SparsePoly& f) const {
  return f.embed(target_.vars).substitute(images_);
}

std::map<std::string, std::string> MonomialMap::substitution_text() const {
  std::map<std::string, std::string> out;
  for (std::size_t j = 0; j < target_.dim(); ++j) {
    const std::string& name = target_.vars[j];
    const auto src = source_.vars.index_of(name);
    if (src && images_[j] == SparsePoly::variable(source_.vars, *src)) continue;
    out[name] = images_[j].to_string();
  }
  return out;
}

MonomialMap compose(const MonomialMap& outer, const MonomialMap& inner) {
  if (!(outer.source().vars == inner.target().vars)) throw ContextMismatch("maps do not compose");
  std::vector<SparsePoly> images;
  for (const auto& im : outer.images()) images.push_back(im.substitute(inner.images()));
  return {inner.source(), outer.target(), std::move(images)};
}

KForm pullback(const KForm& f, const MonomialMap& m) {
  if (!(f.vars() == m.target().vars)) throw ContextMismatch("form does not live in the map's target chart");
  const Chart& src = m.source();
  std::vector<KForm> dimages;
  for (const auto& im : m.images()) dimages.push_back(exterior_derivative(KForm::function(im, src)));
  KForm out(f.degree(), src);
  for (const auto& [k, c] : f.coeffs()) {
    KForm term = KForm::function(c.substitute(m.images()), src);
    for (std::size_t j = 0; j < m.target().dim(); ++j) {
      if ((k >> j & 1u) != 0) term = wedge(term, dimages[j]);
    }
    out = out + term;
  }
  return out;
}

DivisionResult divide_exceptional(const KForm& f, const Exponent& mono) {
  KForm out(f.degree(), f.chart());
  for (const auto& [k, c] : f.coeffs()) {
    auto q = c.divide_monomial(mono);
    if (!q) {
      throw NotDivisible("coefficient of " + f.key_name(k) + " is not divisible by " +
                             exponent_to_string(f.vars(), mono),
                         c.to_string());
    }
    out.add(k, *q);
  }
  return {std::move(out), mono};
}

nlohmann::json form_to_json(const KForm& f) {
  nlohmann::json coeffs = nlohmann::json::object();
  for (const auto& [k, c] : f.coeffs()) coeffs[f.key_name(k)] = c.to_string();
  return {{"degree", f.degree()}, {"chart", f.chart().name}, {"coeffs", coeffs}};
}

}  // namespace cusp
