#pragma once

#include "cusp/resolution.hpp"

#include <nlohmann/json_fwd.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cusp {

/// A word is a list of (generator index, exponent) syllables.
using Word = std::vector<std::pair<int, int>>;

struct GroupPresentation {
  std::vector<std::string> generators;
  /// lhs = rhs
  std::vector<std::pair<Word, Word>> relations;
  std::string to_string() const;
};

struct Abelianization {
  int free_rank = 0;
  std::vector<Integer> torsion;  ///< invariant factors > 1
  /// Rank one and torsion free: image of each generator in Z.
  std::vector<Integer> images;
  std::string to_string() const;
};

/// Via the Smith normal form of the exponent-sum matrix of the relations.
Abelianization abelianize(const GroupPresentation& g);

/// Group of the distinguished component: D_{p/2} for p even, P for p, q odd.
/// Swaps (p, q) when p is odd and q is even.
GroupPresentation pi1_presentation(CaseTag c, int p, int q);

/// <a, b | a^m b = b a^m>: complement of two smooth curves with contact order m.
GroupPresentation tangent_pair_presentation(int m);

class CensusMismatch : public Error {
public:
  using Error::Error;
};

struct DivisorNode {
  std::string name;
  std::string role;      ///< "y-run", "x-run", "P", "D'", "D''", "extra"
  std::string topology;  ///< empty until labeled
  std::string loops;     ///< generator loop description
  GroupPresentation pi1;
  int separatrix_traces = 0;  ///< counted from the census
  int expected_traces = 0;    ///< required by the label
  bool extrapolated = false;  ///< label carried over from a neighboring case
};

struct DivisorEdge {
  std::string a;
  std::string b;
  std::string name;
};

/// Intersection of the separatrix with one component.
struct SeparatrixTrace {
  std::string component;
  std::string name;
  std::string chart;
  std::string equations;
};

struct MarkedPoint {
  std::string name;
  std::vector<std::string> components;
  bool on_separatrix = false;
  std::string chart;
  std::string coords;
  PointKind kind = PointKind::NotSimple;
};

struct DivisorGraph {
  CaseTag case_tag = CaseTag::EvenEven;
  std::string regime;
  int p = 0;
  int q = 0;
  int k = 0;
  int y_run = 0;  ///< components from the first y-axis run
  int x_run = 0;  ///< components from the following x-axis run
  std::string distinguished;
  std::vector<DivisorNode> nodes;
  std::vector<DivisorEdge> edges;
  std::vector<SeparatrixTrace> traces;
  std::vector<MarkedPoint> marked;
  bool connected = false;
  int expected_nodes = 0;
  std::optional<int> expected_edges;  ///< unset after repair steps
  std::vector<std::string> mismatches;
  bool census_ok() const { return mismatches.empty(); }
  const DivisorNode* find(const std::string& name) const;
};

/// Nodes, edges, separatrix traces and marked points from the census of a
/// resolved model; divisors of the original axes are left out.
DivisorGraph build_divisor_graph(const ResolvedModel& m);

/// Attaches topology labels and presentations by template and checks each
/// label against the trace count. Throws CensusMismatch when the node or edge
/// census or a trace count disagrees with the schedule.
void component_topologies(DivisorGraph& g);

struct HolonomyGenerator {
  std::string name;
  int order = 0;       ///< h^order = id
  Rational rotation;   ///< h'(0) = exp(2 pi i rotation), unreduced
  Rational reduced;    ///< rotation mod 1, in [0, 1)
  int root_order = 1;  ///< order of h'(0) as a root of unity
};

struct HolonomyConstraints {
  int p = 0;
  int q = 0;
  bool applicable = false;  ///< p even
  std::vector<HolonomyGenerator> generators;
  std::string note;
};

HolonomyConstraints holonomy_constraints(int p, int q);

std::string graph_to_dot(const DivisorGraph& g);
nlohmann::json presentation_to_json(const GroupPresentation& g);
nlohmann::json graph_to_json(const DivisorGraph& g);
nlohmann::json holonomy_to_json(const HolonomyConstraints& h);

}  // namespace cusp
