#include "cusp/blowup.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>

namespace cusp {

std::string center_kind_name(CenterKind k) {
  switch (k) {
    case CenterKind::LineX: return "LineX";
    case CenterKind::LineY: return "LineY";
    case CenterKind::Origin: return "Origin";
    case CenterKind::StrictAxis: return "StrictAxis";
  }
  return "?";
}

namespace {

std::pair<std::size_t, std::size_t> other_two(std::size_t free_var) {
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < 3; ++i) {
    if (i != free_var) rest.push_back(i);
  }
  return {rest[0], rest[1]};
}

std::vector<std::string> renamed(const Chart& chart, std::size_t index, const std::string& name) {
  std::vector<std::string> names = chart.vars.names();
  names[index] = name;
  return names;
}

}  // namespace

BlowupStep line_blowup(const Chart& chart, const LineCenter& center, LineChart which, const std::string& new_name,
                       const std::string& component_id, const std::string& new_chart_name) {
  if (chart.dim() != 3 || center.free_var >= 3) throw ContractViolation("invalid blow-up axis");
  const auto [a, b] = other_two(center.free_var);
  BlowupStep step;
  step.new_component_id = component_id;
  step.center = CenterKind::StrictAxis;
  if (center.free_var == 0) step.center = CenterKind::LineX;
  if (center.free_var == 1) step.center = CenterKind::LineY;
  step.center_text = "{" + chart.vars[a] + " = 0, " + chart.vars[b] + " = " +
                     (center.shift ? center.shift->to_string() : "0") + "}";
  const std::size_t replaced = which == LineChart::Main ? b : a;
  if (center.shift && which == LineChart::Side) throw ContractViolation("recentering is only defined for the main chart");
  step.chart_choice = which == LineChart::Main ? "main" : "side";
  step.replaced_var = replaced;
  step.exceptional_var = which == LineChart::Main ? a : b;

  std::vector<std::string> lineage = chart.lineage;
  lineage.push_back(component_id + ":" + step.chart_choice);
  Chart source(new_chart_name, VarList(renamed(chart, replaced, new_name)), lineage);
  std::vector<SparsePoly> images;
  for (std::size_t j = 0; j < 3; ++j) images.push_back(SparsePoly::variable(source.vars, j));
  const std::size_t keep = which == LineChart::Main ? a : b;
  images[replaced] = images[replaced] * SparsePoly::variable(source.vars, keep);
  if (center.shift) images[replaced] += SparsePoly::constant(source.vars, *center.shift);
  step.map = MonomialMap(source, chart, std::move(images));
  return step;
}

BlowupStep point_blowup(const Chart& chart, std::size_t chart_choice, const std::vector<std::string>& new_names,
                        const std::string& component_id, const std::string& new_chart_name) {
  if (chart.dim() != 3 || chart_choice >= 3) throw ContractViolation("invalid point blow-up chart");
  BlowupStep step;
  step.center = CenterKind::Origin;
  step.center_text = "origin";
  step.chart_choice = "chart" + std::to_string(chart_choice + 1);
  step.new_component_id = component_id;
  step.exceptional_var = chart_choice;
  step.replaced_var = chart_choice;
  std::vector<std::string> names = chart.vars.names();
  for (std::size_t j = 0; j < 3; ++j) {
    if (j != chart_choice) names[j] = new_names.at(j);
  }
  std::vector<std::string> lineage = chart.lineage;
  lineage.push_back(component_id + ":" + step.chart_choice);
  Chart source(new_chart_name, VarList(names), lineage);
  std::vector<SparsePoly> images;
  const SparsePoly pivot = SparsePoly::variable(source.vars, chart_choice);
  for (std::size_t j = 0; j < 3; ++j) {
    SparsePoly v = SparsePoly::variable(source.vars, j);
    images.push_back(j == chart_choice ? v : v * pivot);
  }
  step.map = MonomialMap(source, chart, std::move(images));
  return step;
}

StrictTransformRecord strict_transform(const KForm& f, const BlowupStep& step,
                                       const std::vector<std::size_t>& also_divide) {
  if (f.is_zero()) throw ContractViolation("strict transform of the zero form");
  KForm pulled = pullback(f, step.map);
  std::vector<std::size_t> vars = also_divide;
  vars.push_back(step.exceptional_var);
  Exponent mono{};
  for (std::size_t v : vars) {
    int m = kInfiniteValuation;
    for (const auto& [k, c] : pulled.coeffs()) m = std::min(m, static_cast<int>(c.monomial_content()[v]));
    if (m != kInfiniteValuation) mono[v] = static_cast<std::uint16_t>(m);
  }
  auto divided = divide_exceptional(pulled, mono);
  return {std::move(divided.form), mono, step.map.source()};
}

nlohmann::json step_to_json(const BlowupStep& step) {
  nlohmann::json map = nlohmann::json::object();
  for (const auto& [k, v] : step.map.substitution_text()) map[k] = v;
  return {{"center", center_kind_name(step.center)},
          {"center_equations", step.center_text},
          {"chart_choice", step.chart_choice},
          {"chart", step.map.source().name},
          {"chart_vars", step.map.source().vars.names()},
          {"map", map},
          {"component", step.new_component_id}};
}

// ---------------------------------------------------------------------------

std::vector<std::size_t> ChartNode::boundary_vars() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!labels[i].empty()) out.push_back(i);
  }
  return out;
}

std::optional<std::size_t> ChartNode::var_with_label(const std::string& label) const {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == label) return i;
  }
  return std::nullopt;
}

ChartTree::ChartTree(const Chart& root, const KForm& form, std::vector<std::string> root_labels)
    : nodes_(1) {
  ChartNode& n = nodes_.front();
  n.chart = root;
  n.to_original = MonomialMap::identity(root);
  n.form = form;
  n.labels = std::move(root_labels);
  n.exceptional.assign(root.dim(), false);
}

std::vector<int> ChartTree::leaves() const {
  std::vector<int> out;
  for (const auto& n : nodes_) {
    if (n.is_leaf()) out.push_back(n.id);
  }
  return out;
}

std::string ChartTree::fresh_name(const std::string& stem) { return stem + std::to_string(counter_); }

int ChartTree::add_child(int parent, const BlowupStep& step, std::vector<Exponent> extra_coverage) {
  const ChartNode& p = nodes_.at(static_cast<std::size_t>(parent));
  ChartNode n;
  n.id = static_cast<int>(nodes_.size());
  n.parent = parent;
  n.chart = step.map.source();
  n.step = step;
  n.to_original = compose(p.to_original, step.map);
  n.labels = p.labels;
  n.exceptional = p.exceptional;
  n.labels[step.exceptional_var] = step.new_component_id;
  n.exceptional[step.exceptional_var] = true;
  std::vector<std::size_t> divide;
  for (std::size_t i = 0; i < n.exceptional.size(); ++i) {
    if (n.exceptional[i]) divide.push_back(i);
  }
  n.form = strict_transform(p.form, step, divide).form;
  for (const auto& m : p.coverage) {
    const SparsePoly image = step.map.apply(SparsePoly::monomial(p.chart.vars, m));
    if (image.size() != 1) throw ContractViolation("coverage constraint is not monomial in the new chart");
    n.coverage.push_back(image.terms().begin()->first);
  }
  for (auto& m : extra_coverage) n.coverage.push_back(m);
  nodes_.push_back(std::move(n));
  nodes_[static_cast<std::size_t>(parent)].children.push_back(nodes_.back().id);
  return nodes_.back().id;
}

int ChartTree::blow_up_line(int id, std::size_t free_var, LineChart follow, const std::string& component_id) {
  const Chart chart = node(id).chart;
  if (!node(id).is_leaf()) throw ContractViolation("only leaf charts can be blown up");
  ++counter_;
  if (std::find(components_.begin(), components_.end(), component_id) == components_.end()) {
    components_.push_back(component_id);
  }
  const LineCenter center{free_var, std::nullopt};
  const BlowupStep main = line_blowup(chart, center, LineChart::Main, fresh_name("t"), component_id,
                                      "C" + std::to_string(nodes_.size()));
  const BlowupStep side = line_blowup(chart, center, LineChart::Side, fresh_name("s"), component_id,
                                      "C" + std::to_string(nodes_.size() + 1));
  steps_.push_back(follow == LineChart::Main ? main : side);
  // Main misses only the side chart's plane {a' = 0}, and vice versa {b' = 0}.
  auto plane = [](std::size_t var) {
    Exponent e{};
    e[var] = 1;
    return e;
  };
  const int main_id = add_child(id, main, follow == LineChart::Main ? std::vector<Exponent>{}
                                                                     : std::vector<Exponent>{plane(main.replaced_var)});
  const int side_id = add_child(id, side, follow == LineChart::Side ? std::vector<Exponent>{}
                                                                     : std::vector<Exponent>{plane(side.replaced_var)});
  return follow == LineChart::Main ? main_id : side_id;
}

std::vector<int> ChartTree::blow_up_point(int id, std::size_t follow, const std::string& component_id) {
  const Chart chart = node(id).chart;
  if (!node(id).is_leaf()) throw ContractViolation("only leaf charts can be blown up");
  if (follow >= 3) throw ContractViolation("invalid point blow-up chart");
  ++counter_;
  if (std::find(components_.begin(), components_.end(), component_id) == components_.end()) {
    components_.push_back(component_id);
  }
  std::vector<std::string> names;
  for (std::size_t j = 0; j < 3; ++j) names.push_back(fresh_name(chart.vars[j].substr(0, 1)));
  std::vector<int> ids(3);
  // Charts are ordered: followed first, then the rest by index. A chart only
  // covers points missed by every chart before it.
  std::vector<std::size_t> order{follow};
  for (std::size_t j = 0; j < 3; ++j) {
    if (j != follow) order.push_back(j);
  }
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    const std::size_t k = order[pos];
    const BlowupStep step = point_blowup(chart, k, names, component_id, "C" + std::to_string(nodes_.size()));
    if (k == follow) steps_.push_back(step);
    std::vector<Exponent> extra;
    for (std::size_t before = 0; before < pos; ++before) {
      // In chart k, the ratio x_j / x_k for an earlier chart j vanishes.
      Exponent e{};
      e[order[before]] = 1;
      extra.push_back(e);
    }
    ids[k] = add_child(id, step, extra);
  }
  return ids;
}

}  // namespace cusp
