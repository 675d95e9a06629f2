#include "helpers.hpp"

#include "cusp/parse.hpp"
#include "cusp/resolution.hpp"

#include <gtest/gtest.h>

using namespace cusp;
using testing_helpers::P;
using testing_helpers::S;

TEST(ClassifyPoint, ResonantCorner) {
  const KForm w = KForm::one_form(original_chart(), {P("y*z"), P("x*z"), P("x*y")});
  const Classification c = classify_singular_point(w, Point3{}, 16);
  EXPECT_EQ(c.kind, PointKind::SimpleDim3Resonant);
  EXPECT_EQ(c.residues, (std::vector<std::string>{"1", "1", "1"}));
}

TEST(ClassifyPoint, NilpotentIsNotSimple) {
  const KForm w = exterior_derivative(KForm::function(P("z^2 + x^2*y^2"), original_chart()));
  EXPECT_EQ(classify_singular_point(w, Point3{}, 16).kind, PointKind::NotSimple);
}

TEST(ClassifyPoint, RegularPointRejected) {
  const KForm w = KForm::one_form(original_chart(), {P("1"), P("0"), P("0")});
  EXPECT_THROW(classify_singular_point(w, Point3{}, 16), ContractViolation);
}

TEST(ClassifyPoint, CaseOneLineAtPlusI) {
  // Strict transform of (2, 2, 2, 1) in (x, y, t); at (0, y0, i) the germ is of dimensional type two.
  const Chart c("C", {"x", "y", "t"});
  const VarList& v = c.vars;
  const KForm w = KForm::one_form(c, {P("2*y + 2*y*t^2 + x*y^2*t", v), P("2*x + 2*x*t^2 + x^2*y*t", v),
                                      P("2*x*y*t + x^2*y^2", v)});
  const Classification cl = classify_singular_point(w, Point3{KElem(0), KElem(3), KElem(GaussianRational::i())}, 16);
  EXPECT_EQ(cl.kind, PointKind::SimpleDim2);
  const Classification corner = classify_singular_point(w, Point3{KElem(0), KElem(0), KElem(GaussianRational::i())}, 16);
  EXPECT_EQ(corner.kind, PointKind::SimpleDim3Resonant);
}

TEST(Census, CaseOneLinesAndPoints) {
  const ResolvedModel m = resolve(build_omega(2, 2, 2, S("1")));
  ASSERT_TRUE(m.reduced);
  int divisor_lines = 0;
  int traces = 0;
  for (const auto& l : m.lines) {
    if (l.components == std::vector<std::string>{"D1", "D2"}) ++divisor_lines;
    if (l.components.size() == 1 && (l.components[0] == "D1" || l.components[0] == "D2")) {
      ++traces;
      EXPECT_EQ(l.generic.kind, PointKind::SimpleDim2);
      EXPECT_TRUE(l.equations.find("I") != std::string::npos) << l.equations;
    }
  }
  EXPECT_EQ(divisor_lines, 1);
  EXPECT_EQ(traces, 4);
  int corners = 0;
  for (const auto& p : m.points) {
    if (p.classification.kind == PointKind::SimpleDim3Resonant && p.components.size() == 2) ++corners;
  }
  EXPECT_EQ(corners, 2);
}
