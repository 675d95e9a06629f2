#include "helpers.hpp"

#include "cusp/blowup.hpp"
#include "cusp/foliation.hpp"

#include <gtest/gtest.h>

using namespace cusp;
using testing_helpers::P;
using testing_helpers::random_poly;

namespace {

const Chart& C0() {
  static const Chart c("C0", {"x", "y", "z"});
  return c;
}

KForm one(const std::string& a, const std::string& b, const std::string& c) {
  return KForm::one_form(C0(), {P(a), P(b), P(c)});
}

KForm dvar(std::size_t i) { return KForm::differential(C0(), i); }

}  // namespace

TEST(ExteriorDerivative, Examples) {
  for (int p : {2, 3, 4}) {
    for (int q : {1, 2, 5}) {
      const std::string ps = std::to_string(p);
      const std::string qs = std::to_string(q);
      const KForm df = exterior_derivative(KForm::function(P("z^2 + x^" + ps + "*y^" + qs), C0()));
      const KForm expected = one(ps + "*x^" + std::to_string(p - 1) + "*y^" + qs,
                                 qs + "*x^" + ps + "*y^" + std::to_string(q - 1), "2*z");
      EXPECT_EQ(df, expected);
    }
  }
  EXPECT_EQ(exterior_derivative(one("0", "x", "0")), wedge(dvar(0), dvar(1)));
}

TEST(ExteriorDerivative, SquareIsZero) {
  std::mt19937 rng(5);
  for (int t = 0; t < 30; ++t) {
    const KForm f = KForm::function(random_poly(rng, C0().vars, 6, 6), C0());
    EXPECT_TRUE(exterior_derivative(exterior_derivative(f)).is_zero());
    const KForm w = KForm::one_form(C0(), {random_poly(rng, C0().vars, 4, 4), random_poly(rng, C0().vars, 4, 4),
                                           random_poly(rng, C0().vars, 4, 4)});
    EXPECT_TRUE(exterior_derivative(exterior_derivative(w)).is_zero());
  }
}

TEST(Wedge, Examples) {
  EXPECT_TRUE(wedge(dvar(0), dvar(0)).is_zero());
  EXPECT_TRUE(wedge(one("y", "0", "0"), wedge(dvar(0), dvar(1))).is_zero());
  EXPECT_FALSE(wedge(one("0", "0", "1"), wedge(dvar(0), dvar(1))).is_zero());
}

TEST(Wedge, GradedAnticommutative) {
  std::mt19937 rng(8);
  for (int t = 0; t < 20; ++t) {
    auto r = [&] { return random_poly(rng, C0().vars, 3, 3); };
    const KForm a = KForm::one_form(C0(), {r(), r(), r()});
    const KForm b = KForm::one_form(C0(), {r(), r(), r()});
    EXPECT_EQ(wedge(a, b), -wedge(b, a));
    const KForm two = exterior_derivative(b);
    EXPECT_EQ(wedge(a, two), wedge(two, a));
  }
}

TEST(Wedge, LinearIntegrabilityCoefficient) {
  // w = sum c_ij x_j dx_i has w ∧ dw = [a1 (c32 - c23) - a2 (c31 - c13) + a3 (c21 - c12)] dx∧dy∧dz.
  std::mt19937 rng(13);
  std::uniform_int_distribution<int> d(-4, 4);
  for (int t = 0; t < 20; ++t) {
    Matrix<GaussianRational> c(3, std::vector<GaussianRational>(3));
    for (auto& row : c) {
      for (auto& e : row) e = GaussianRational(d(rng));
    }
    const KForm w = linear_form(c);
    std::vector<SparsePoly> a;
    for (std::size_t i = 0; i < 3; ++i) {
      SparsePoly ai(w.vars());
      for (std::size_t j = 0; j < 3; ++j) ai += c[i][j] * SparsePoly::variable(w.vars(), j);
      a.push_back(ai);
    }
    const SparsePoly oracle =
        (c[2][1] - c[1][2]) * a[0] - (c[2][0] - c[0][2]) * a[1] + (c[1][0] - c[0][1]) * a[2];
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(w.component(i), a[i]);
    EXPECT_EQ(wedge(w, exterior_derivative(w)).coeff(7), oracle);
  }
}

TEST(Pullback, LeibnizExample) {
  const Chart target("C1", {"x", "y", "t"});
  const MonomialMap m(target, C0(), {P("x", target.vars), P("y", target.vars), P("x*t", target.vars)});
  const KForm pulled = pullback(dvar(2), m);
  EXPECT_EQ(pulled, KForm::one_form(target, {P("t", target.vars), P("0", target.vars), P("x", target.vars)}));
}

TEST(Pullback, CommutesWithD) {
  std::mt19937 rng(21);
  const Chart target("C1", {"x", "y", "t"});
  const MonomialMap m(target, C0(), {P("x", target.vars), P("x*y", target.vars), P("x*t + y", target.vars)});
  for (int t = 0; t < 50; ++t) {
    auto r = [&] { return random_poly(rng, C0().vars, 3, 3); };
    const KForm f = KForm::function(r(), C0());
    const KForm w = KForm::one_form(C0(), {r(), r(), r()});
    EXPECT_EQ(pullback(exterior_derivative(f), m), exterior_derivative(pullback(f, m)));
    EXPECT_EQ(pullback(exterior_derivative(w), m), exterior_derivative(pullback(w, m)));
    // Closed forms stay closed.
    EXPECT_TRUE(exterior_derivative(pullback(exterior_derivative(f), m)).is_zero());
  }
}

TEST(DivideExceptional, Examples) {
  const DivisionResult r = divide_exceptional(one("x^2*y", "x^3", "0"), Exponent{2, 0, 0});
  EXPECT_EQ(r.form, one("y", "x", "0"));
  EXPECT_THROW(divide_exceptional(dvar(0), Exponent{1, 0, 0}), NotDivisible);
}

TEST(DivideExceptional, CaseOnePullbackBracket) {
  // (p, q, k, h) = (2, 2, 2, 1): pull back along z = x y t by direct substitution.
  const Chart c("C", {"x", "y", "t"});
  const VarList& v = c.vars;
  const CuspidalFoliation f = build_omega(2, 2, 2, TruncSeries::exact(P("1", VarList{"u"})));
  const MonomialMap m(c, C0(), {P("x", v), P("y", v), P("x*y*t", v)});
  const KForm pulled = pullback(f.omega, m);
  const KForm bracket = KForm::one_form(c, {P("2*y + 2*y*t^2 + x*y^2*t", v), P("2*x + 2*x*t^2 + x^2*y*t", v),
                                            P("2*x*y*t + x^2*y^2", v)});
  EXPECT_EQ(pulled, P("x*y", v) * bracket);
  EXPECT_EQ(divide_exceptional(pulled, Exponent{1, 1, 0}).form, bracket);
}
