#pragma once

#include "cusp/poly.hpp"

#include <nlohmann/json_fwd.hpp>

#include <map>
#include <string>
#include <vector>

namespace cusp {

/// Coordinate system of three named variables and the blow-up steps that
/// produced it.
struct Chart {
  std::string name;
  VarList vars;
  std::vector<std::string> lineage;

  Chart() = default;
  Chart(std::string chart_name, VarList chart_vars, std::vector<std::string> steps = {});

  std::size_t dim() const { return vars.size(); }
  friend bool operator==(const Chart& a, const Chart& b) { return a.name == b.name && a.vars == b.vars; }
};

/// Bitmask over chart variables: bit i set means dx_i is a factor.
using FormKey = unsigned;

int key_degree(FormKey key);
/// Sign of dx_A ^ dx_B relative to dx_{A|B}; zero if A and B overlap.
int wedge_sign(FormKey a, FormKey b);

/// Polynomial differential form of fixed degree; coefficients are keyed by
/// increasing variable subsets and never zero.
class KForm {
public:
  KForm() = default;
  KForm(int degree, Chart chart);

  static KForm function(const SparsePoly& f, const Chart& chart);
  /// 1-form sum_i coeffs[i] dx_i.
  static KForm one_form(const Chart& chart, const std::vector<SparsePoly>& coeffs);
  static KForm differential(const Chart& chart, std::size_t var);

  int degree() const { return degree_; }
  const Chart& chart() const { return chart_; }
  const VarList& vars() const { return chart_.vars; }
  const std::map<FormKey, SparsePoly>& coeffs() const { return coeffs_; }
  SparsePoly coeff(FormKey key) const;
  /// Coefficient of dx_var for a 1-form.
  SparsePoly component(std::size_t var) const { return coeff(FormKey{1} << var); }

  bool is_zero() const { return coeffs_.empty(); }
  void add(FormKey key, const SparsePoly& c);

  KForm operator-() const;
  friend KForm operator+(const KForm& a, const KForm& b);
  friend KForm operator-(const KForm& a, const KForm& b);
  friend KForm operator*(const SparsePoly& f, const KForm& a);
  friend bool operator==(const KForm& a, const KForm& b) {
    return a.degree_ == b.degree_ && a.chart_.vars == b.chart_.vars && a.coeffs_ == b.coeffs_;
  }

  /// Applies a coefficient-wise map, keeping degree and chart.
  template <class F>
  KForm map_coeffs(F&& f) const {
    KForm out(degree_, chart_);
    for (const auto& [k, c] : coeffs_) out.add(k, f(c));
    return out;
  }

  /// Minimal total degree over all coefficients.
  int valuation() const;
  KForm truncated(int order) const;

  /// "dx∧dy" style name of a basis key in this chart.
  std::string key_name(FormKey key) const;
  std::string to_string() const;

private:
  void require_compatible(const KForm& o, const char* op) const;

  int degree_ = 0;
  Chart chart_;
  std::map<FormKey, SparsePoly> coeffs_;
};

KForm exterior_derivative(const KForm& f);
KForm wedge(const KForm& a, const KForm& b);

/// Ring map from a source chart to a target chart: images[j] expresses target
/// variable j in source variables (a monomial, possibly with one affine shift).
class MonomialMap {
public:
  MonomialMap() = default;
  MonomialMap(Chart source, Chart target, std::vector<SparsePoly> images);

  static MonomialMap identity(const Chart& chart);

  const Chart& source() const { return source_; }
  const Chart& target() const { return target_; }
  const std::vector<SparsePoly>& images() const { return images_; }

  SparsePoly apply(const SparsePoly& f) const;
  /// Substitution text, e.g. {"t1": "x*t2"}; identity images are omitted.
  std::map<std::string, std::string> substitution_text() const;

private:
  Chart source_;
  Chart target_;
  std::vector<SparsePoly> images_;
};

/// outer ∘ inner, where inner maps into outer's source chart.
MonomialMap compose(const MonomialMap& outer, const MonomialMap& inner);

KForm pullback(const KForm& f, const MonomialMap& m);

struct DivisionResult {
  KForm form;
  Exponent witness;
};

/// Exact quotient of every coefficient by the monomial; throws NotDivisible
/// naming the first offending coefficient.
DivisionResult divide_exceptional(const KForm& f, const Exponent& mono);

/// Canonical JSON {degree, chart, coeffs: {"dx∧dy": "<poly>"}}.
nlohmann::json form_to_json(const KForm& f);

}  // namespace cusp
