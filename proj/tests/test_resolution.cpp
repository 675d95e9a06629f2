#include "helpers.hpp"

#include "cusp/resolution.hpp"

#include <gtest/gtest.h>

#include <numeric>

using namespace cusp;
using testing_helpers::S;

namespace {

std::vector<std::string> components(const BlowupSchedule& s) {
  std::vector<std::string> out;
  for (const auto& st : s.steps) out.push_back(st.component);
  return out;
}

}  // namespace

TEST(Schedule, CaseOne) {
  const BlowupSchedule s = schedule(2, 2, 2);
  EXPECT_EQ(s.case_tag, CaseTag::EvenEven);
  EXPECT_EQ(s.regime, "k>d'");
  ASSERT_EQ(s.steps.size(), 2U);
  EXPECT_EQ(s.steps[0].axis, 1U);
  EXPECT_EQ(s.steps[1].axis, 0U);
  EXPECT_EQ(s.expected_component_count, 2);
  EXPECT_FALSE(s.needs_trace_check);
}

TEST(Schedule, CaseTwoFigureInstance) {
  const BlowupSchedule s = schedule(2, 3, 2);
  EXPECT_EQ(s.case_tag, CaseTag::EvenOdd);
  EXPECT_EQ(components(s), (std::vector<std::string>{"D1", "D2", "D'", "D''"}));
  EXPECT_EQ(s.steps[2].chart, LineChart::Side);
  EXPECT_EQ(s.steps[3].chart, LineChart::Main);
  EXPECT_EQ(s.expected_component_count, 4);
}

TEST(Schedule, TraceCheckAtEquality) {
  const BlowupSchedule s = schedule(6, 4, 1);
  EXPECT_EQ(s.regime, "k=d'");
  EXPECT_TRUE(s.needs_trace_check);
  EXPECT_EQ(s.steps.size(), 5U);
}

TEST(Schedule, SwapAndSmallK) {
  const BlowupSchedule s = schedule(9, 6, 1);
  EXPECT_TRUE(s.swapped);
  EXPECT_EQ(s.p, 6);
  EXPECT_EQ(s.q, 9);
  EXPECT_EQ(s.regime, "2k<d");
  EXPECT_EQ(s.expected_component_count, 2 + 3);
  EXPECT_EQ(schedule(4, 4, 1).expected_component_count, 2);
  EXPECT_EQ(schedule(3, 5, 1).expected_component_count, 1 + 2 + 5);
}

TEST(Resolve, CaseOneReduced) {
  const ResolvedModel m = resolve(build_omega(2, 2, 2, S("1")));
  EXPECT_TRUE(m.reduced);
  EXPECT_TRUE(m.integrable_everywhere);
  EXPECT_EQ(m.tree.components(), (std::vector<std::string>{"D1", "D2"}));
  EXPECT_FALSE(m.has_saddle_node);
}

TEST(Resolve, ExcludedTraceRaises) {
  try {
    resolve(build_omega(2, 2, 1, S("4")));
    FAIL() << "h(0) = 4 accepted";
  } catch (const ExcludedTrace& e) {
    EXPECT_EQ(e.verdict().status, TraceExclusionVerdict::Status::SaddleNodeBoundary);
  }
  EXPECT_THROW(resolve(build_omega(2, 2, 1, S("-4 + u"))), ExcludedTrace);
  EXPECT_THROW(resolve(build_omega(2, 2, 1, S("5"))), ExcludedTrace);
  EXPECT_TRUE(resolve(build_omega(2, 2, 1, S("1"))).reduced);
}

TEST(Resolve, SmallKSaddleNode) {
  const ResolvedModel m = resolve(build_omega(4, 4, 1, S("1")));
  EXPECT_TRUE(m.reduced);
  EXPECT_TRUE(m.has_saddle_node);
  bool flagged = false;
  for (const auto& p : m.points) {
    if (p.classification.kind == PointKind::SaddleNode && p.classification.saddle_dim == 3) {
      flagged = p.classification.center_manifold_flag.rfind("FORMAL-TO-ORDER-", 0) == 0 ||
                p.classification.center_manifold_flag == "CONVERGENT-COORDINATE-PLANE";
    }
  }
  EXPECT_TRUE(flagged);
}

TEST(Resolve, RequireReducedFlag) {
  ResolveOptions o;
  o.require_reduced = true;
  EXPECT_NO_THROW(resolve(build_omega(2, 3, 1, S("1")), o));
}

TEST(TraceExclusion, Examples) {
  const auto four = check_excluded_trace(GaussianRational(4));
  EXPECT_EQ(four.status, TraceExclusionVerdict::Status::SaddleNodeBoundary);
  EXPECT_EQ(*four.r, 0);
  EXPECT_EQ(check_excluded_trace(GaussianRational(-4)).status, TraceExclusionVerdict::Status::SaddleNodeBoundary);
  const auto five = check_excluded_trace(GaussianRational(5));
  EXPECT_EQ(five.status, TraceExclusionVerdict::Status::ExcludedAt);
  EXPECT_EQ(*five.r, 24);
  EXPECT_EQ((16 + *five.r) * (16 + *five.r) / (16 + 2 * *five.r), 25);
  for (const Rational h : {Rational(1), Rational(3), Rational(7, 2)}) {
    const auto v = check_excluded_trace(GaussianRational(h));
    EXPECT_EQ(v.status, TraceExclusionVerdict::Status::Allowed) << h;
    EXPECT_FALSE(v.r.has_value());
  }
  // Discriminant for h0 = 1: c = 1, 4c(c - 16) = -60 < 0.
  EXPECT_NE(check_excluded_trace(GaussianRational(1)).explanation.find("negative"), std::string::npos);
  const auto cplx = check_excluded_trace(GaussianRational(Rational(1), Rational(1)));
  EXPECT_TRUE(cplx.complex_caveat);
  EXPECT_EQ(cplx.status, TraceExclusionVerdict::Status::Allowed);
}

TEST(TraceExclusion, AgreesWithReciprocalForm) {
  // h0 = 2(sqrt(r) + 1/sqrt(r)) for r in (0, 1] has h0^2 = 4(r + 2 + 1/r), always rational.
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> den(1, 60);
  for (int t = 0; t < 200; ++t) {
    const int b = den(rng);
    std::uniform_int_distribution<int> num(1, b);
    Rational r(num(rng), b);
    r.canonicalize();
    const Rational c2 = 4 * (r + 2 + 1 / r);
    const auto v = check_excluded_trace_squared(GaussianRational(c2));
    EXPECT_NE(v.status, TraceExclusionVerdict::Status::Allowed) << r;
    ASSERT_TRUE(v.r.has_value());
    EXPECT_EQ((16 + *v.r) * (16 + *v.r) / (16 + 2 * *v.r), c2);
    EXPECT_EQ(v.status == TraceExclusionVerdict::Status::SaddleNodeBoundary, r == 1);
  }
}
