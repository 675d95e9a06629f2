#pragma once

#include "cusp/blowup.hpp"
#include "cusp/number_field.hpp"

#include <nlohmann/json_fwd.hpp>

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace cusp {

using Point3 = std::array<KElem, 3>;

enum class PointKind { SimpleDim2, SimpleDim3Resonant, SimpleDim3Linearizable, SaddleNode, NotSimple };

std::string point_kind_name(PointKind k);

struct Classification {
  PointKind kind = PointKind::NotSimple;
  /// SimpleDim2: lambda/mu of the transversal linear 1-form (text, exact).
  std::string eigenratio;
  /// SimpleDim3*: residues in chart-variable order; normalized to coprime
  /// positive integers in the resonant case.
  std::vector<std::string> residues;
  /// SaddleNode: 2 or 3.
  int saddle_dim = 0;
  /// SaddleNode: "CONVERGENT-COORDINATE-PLANE", "FORMAL-TO-ORDER-N" or "NOT-COMPUTED".
  std::string center_manifold_flag;
  std::string center_manifold;  ///< graph s = phi(...) when computed
  std::string reason;           ///< NotSimple explanation
};

bool is_simple(const Classification& c);

/// Classifies the foliation germ of a 1-form at one of its singular points.
/// Throws ContractViolation if the point is not singular.
Classification classify_singular_point(const KForm& local, const Point3& point, int order = kDefaultTruncation);

/// Coordinate-parallel singular line {fixed[0] = values[0], fixed[1] = values[1]}.
struct SingularLine {
  int node = 0;
  std::string chart;
  std::size_t free_var = 0;
  std::array<std::size_t, 2> fixed{};
  std::array<KElem, 2> values{};
  std::vector<std::string> components;  ///< divisor planes containing the line
  Classification generic;               ///< class at a generic point
  std::string equations;                ///< e.g. "{x = 0, t2 = I}"
};

struct SingularPointRecord {
  int node = 0;
  std::string chart;
  Point3 coords{};
  std::vector<std::string> components;  ///< divisor planes through the point
  std::vector<std::string> vars;
  Classification classification;
  std::string coords_text() const;
};

struct Census {
  std::vector<SingularLine> lines;
  std::vector<SingularPointRecord> points;
  /// Configurations the census could not decide; each one is also reported as
  /// a NotSimple point so it cannot be mistaken for a reduced model.
  std::vector<std::string> incomplete;
};

/// Singular locus of a leaf's strict transform restricted to the part of the
/// boundary the leaf covers, with every line and special point classified.
Census singular_census(const ChartNode& node, int order = kDefaultTruncation);

nlohmann::json classification_to_json(const Classification& c);
nlohmann::json line_to_json(const SingularLine& l);
nlohmann::json point_to_json(const SingularPointRecord& p);

/// Resultant in the variable `var` of two polynomials that only involve
/// `var` and `other`; the result is univariate in `other`.
UPoly resultant(const SparsePoly& a, const SparsePoly& b, std::size_t var, std::size_t other);

/// Roots of a univariate polynomial in Q(i) or in one quadratic extension;
/// `complete` is cleared when a factor of degree >= 3 had no Q(i) roots.
std::vector<KElem> univariate_roots(const UPoly& f, bool& complete);

}  // namespace cusp
