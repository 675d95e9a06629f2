#pragma once

#include "cusp/forms.hpp"

#include <nlohmann/json_fwd.hpp>

#include <optional>
#include <string>
#include <vector>

namespace cusp {

enum class CenterKind { LineX, LineY, Origin, StrictAxis };

std::string center_kind_name(CenterKind k);

/// Line center {a = 0, b = shift} with a < b; `free_var` is the remaining
/// chart variable (the line's direction).
struct LineCenter {
  std::size_t free_var = 0;
  std::optional<GaussianRational> shift;  ///< recentering of the replaced variable
};

enum class LineChart { Main, Side };

/// One standard chart of one blow-up, as a map new chart -> old chart.
struct BlowupStep {
  CenterKind center = CenterKind::LineY;
  std::string center_text;  ///< e.g. "{x = 0, t1 = 0}"
  std::string chart_choice; ///< "main", "side", "chart1", ...
  MonomialMap map;
  std::string new_component_id;
  std::size_t exceptional_var = 0;  ///< index, in the new chart, of the exceptional plane
  /// Index in the old chart of the variable replaced by the new chart variable.
  std::size_t replaced_var = 0;
};

/// Blow-up of the coordinate line of `chart` in direction `center.free_var`.
/// Main chart: b = a * b' (exceptional {a = 0}); side chart: a = a' * b
/// (exceptional {b = 0}), where {a, b} are the two other variables, a < b.
/// `new_name` names the fresh chart variable.
BlowupStep line_blowup(const Chart& chart, const LineCenter& center, LineChart which, const std::string& new_name,
                       const std::string& component_id, const std::string& new_chart_name);

/// Chart `chart_choice` (0-based) of the blow-up of the origin: x_j = x_j' * x_k
/// for j != k. `new_names[j]` names the replacement of variable j != k.
BlowupStep point_blowup(const Chart& chart, std::size_t chart_choice, const std::vector<std::string>& new_names,
                        const std::string& component_id, const std::string& new_chart_name);

struct StrictTransformRecord {
  KForm form;
  Exponent exceptional_monomial{};
  Chart chart;
};

/// Pull back through the step and divide the largest power of the new
/// exceptional variable (and of `also_divide` variables) out of all
/// coefficients. Throws ContractViolation on a zero form.
StrictTransformRecord strict_transform(const KForm& f, const BlowupStep& step,
                                       const std::vector<std::size_t>& also_divide = {});

nlohmann::json step_to_json(const BlowupStep& step);

/// Node of the chart tree. Labels name the divisor (or original plane) each
/// coordinate plane belongs to; an empty label marks a plane outside the
/// total transform of {xy = 0}.
struct ChartNode {
  int id = 0;
  int parent = -1;
  Chart chart;
  std::optional<BlowupStep> step;  ///< step producing this node from its parent
  MonomialMap to_original;
  KForm form;
  std::vector<std::string> labels;
  std::vector<bool> exceptional;
  /// The census of this node only covers points where every monomial here
  /// vanishes; the other points are covered by other leaves.
  std::vector<Exponent> coverage;
  std::vector<int> children;

  bool is_leaf() const { return children.empty(); }
  /// Variables whose coordinate plane lies in the total transform of {xy = 0}.
  std::vector<std::size_t> boundary_vars() const;
  std::optional<std::size_t> var_with_label(const std::string& label) const;
};

/// Chart tree of an executed blow-up sequence, rooted at the original chart.
class ChartTree {
public:
  ChartTree() = default;
  ChartTree(const Chart& root, const KForm& form, std::vector<std::string> root_labels);

  const std::vector<ChartNode>& nodes() const { return nodes_; }
  const ChartNode& node(int id) const { return nodes_.at(static_cast<std::size_t>(id)); }
  const std::vector<BlowupStep>& steps() const { return steps_; }
  std::vector<int> leaves() const;
  const std::vector<std::string>& components() const { return components_; }

  /// Blows up a coordinate line of node `id`; both charts become children and
  /// the followed one is returned. The other child only covers points outside
  /// the followed chart.
  int blow_up_line(int id, std::size_t free_var, LineChart follow, const std::string& component_id);
  /// Blows up the origin of node `id`; returns the ids of all three charts
  /// (index = chart choice). The followed chart covers everything it sees.
  std::vector<int> blow_up_point(int id, std::size_t follow, const std::string& component_id);

private:
  int add_child(int parent, const BlowupStep& step, std::vector<Exponent> extra_coverage);
  std::string fresh_name(const std::string& stem);

  std::vector<ChartNode> nodes_;
  std::vector<BlowupStep> steps_;
  std::vector<std::string> components_;
  int counter_ = 0;
};

}  // namespace cusp
