#include "cusp/separatrix.hpp"

#include "cusp/errors.hpp"
#include "helpers.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace cusp;
using namespace testing_helpers;

namespace {

/// Omega ∧ dW reduced modulo W, computed directly:
/// R1 = 2 a' a + 2d u^(d-1) - 2b' - u^k h a',  R0 = 2 a' b + d u^(d-1) a - u^k h b'.
/// Both must vanish below u^N, where a and b are exact modulo u^(N+1).
bool oracle_residual_vanishes(int d, int k, const SparsePoly& h, const SparsePoly& a, const SparsePoly& b, int N) {
  const SparsePoly da = a.derivative(0);
  const SparsePoly db = b.derivative(0);
  const SparsePoly ud1 = U("u").pow(static_cast<unsigned>(d - 1)) * GaussianRational(d);
  const SparsePoly ukh = U("u").pow(static_cast<unsigned>(k)) * h;
  const SparsePoly r1 = da * a * GaussianRational(2) + ud1 * GaussianRational(2) - db * GaussianRational(2) - ukh * da;
  const SparsePoly r0 = da * b * GaussianRational(2) + ud1 * a - ukh * db;
  for (const SparsePoly* r : {&r1, &r0}) {
    for (const auto& [e, c] : r->terms()) {
      if (e[0] < N && !c.is_zero()) return false;
    }
  }
  return true;
}

}  // namespace

TEST(Separatrix, ZeroPerturbationIsExactFirstIntegral) {
  for (int d = 1; d <= 6; ++d) {
    const auto s = solve_formal_separatrix(d, 2, S("0"), 16);
    EXPECT_TRUE(s.a.poly().is_zero());
    EXPECT_EQ(s.b.poly(), U("u").pow(static_cast<unsigned>(d)));
    EXPECT_EQ(s.residual_order, 16);
  }
}

TEST(Separatrix, ExponentExamples) {
  EXPECT_EQ(separatrix_exponent(3, 2), 3);
  EXPECT_EQ(separatrix_exponent(4, 1), 2);
  EXPECT_EQ(separatrix_exponent(4, 2), 4);
  EXPECT_EQ(separatrix_exponent(5, 2), 4);

  const auto s32 = solve_formal_separatrix(3, 2, S("1"), 16);
  EXPECT_EQ(tschirnhausen(s32.a, s32.b).r, 3);
  const auto s41 = solve_formal_separatrix(4, 1, S("1"), 16);
  EXPECT_EQ(tschirnhausen(s41.a, s41.b).r, 2);
}

TEST(Separatrix, TruncationContract) {
  EXPECT_THROW(solve_formal_separatrix(6, 2, S("1"), 7), ContractViolation);
  EXPECT_NO_THROW(solve_formal_separatrix(6, 2, S("1"), 8));
  EXPECT_THROW(solve_formal_separatrix(2, 4, S("1"), 9), ContractViolation);
}

TEST(Separatrix, GridResidualAndExponent) {
  const TruncSeries hs[] = {S("1"), S("1+u"), S("2-3*u+u^2/2"), S("I+u^3")};
  for (const auto& h : hs) {
    for (int d = 1; d <= 6; ++d) {
      for (int k = 1; k <= 6; ++k) {
        const int N = std::max(16, std::max(d, 2 * k) + 2);
        SCOPED_TRACE("d=" + std::to_string(d) + " k=" + std::to_string(k) + " h=" + h.to_string());
        const auto s = solve_formal_separatrix(d, k, h, N);
        EXPECT_GE(s.residual_order, 16);
        EXPECT_TRUE(oracle_residual_vanishes(d, k, h.poly(), s.a.poly(), s.b.poly(), N));
        EXPECT_EQ(tschirnhausen(s.a, s.b).r, separatrix_exponent(d, k));
      }
    }
  }
}

TEST(Separatrix, ValuationOfHMovesIntoK) {
  // u^1 * (u h') = u^2 h'.
  const auto s = solve_formal_separatrix(5, 1, S("u+u^2"), 16);
  EXPECT_EQ(s.k, 1);
  EXPECT_TRUE(oracle_residual_vanishes(5, 1, U("u+u^2"), s.a.poly(), s.b.poly(), 16));
  EXPECT_EQ(tschirnhausen(s.a, s.b).r, separatrix_exponent(5, 2));
}

TEST(Tschirnhausen, Examples) {
  auto t = tschirnhausen(S("0"), S("u^3"));
  EXPECT_EQ(t.c.poly(), U("u^3"));
  EXPECT_EQ(t.r, 3);
  EXPECT_EQ(t.f.poly(), U("1"));

  t = tschirnhausen(S("2*u"), S("u^2+u^3"));
  EXPECT_EQ(t.c.poly(), U("u^3"));
  EXPECT_EQ(t.r, 3);

  t = tschirnhausen(S("2*u^2"), S("u^4+2*u^5"));
  EXPECT_EQ(t.c.poly(), U("2*u^5"));
  EXPECT_EQ(t.r, 5);
  EXPECT_EQ(t.f.poly(), U("2"));

  EXPECT_THROW(tschirnhausen(S("1"), S("u")), ContractViolation);
  EXPECT_THROW(tschirnhausen(S("2*u"), S("u^2")), ContractViolation);
}

TEST(Tschirnhausen, Splitting) {
  // z^2 - u^2 = (z - u)(z + u).
  auto f = factor_separatrix(tschirnhausen(S("0"), S("-u^2")));
  EXPECT_TRUE(f.splits);
  ASSERT_TRUE(f.root.has_value());
  EXPECT_EQ((f.root->poly() * f.root->poly()), U("u^2"));
  // Over Q(i) even z^2 + u^2 splits.
  EXPECT_TRUE(factor_separatrix(tschirnhausen(S("0"), S("u^2"))).splits);
  EXPECT_FALSE(factor_separatrix(tschirnhausen(S("0"), S("u^3"))).splits);
  EXPECT_FALSE(factor_separatrix(tschirnhausen(S("0"), S("2*u^2"))).splits);
}

TEST(Normalization, Identity) {
  const auto m = normalization_map(1, 1, 3, S("0"), S("1"));
  EXPECT_TRUE(m.verified);
  ASSERT_EQ(m.F.size(), 3u);
  EXPECT_EQ(m.F[0], P("x"));
  EXPECT_EQ(m.F[1], P("y"));
  EXPECT_EQ(m.F[2], P("z"));
}

TEST(Normalization, Translation) {
  // W = z^2 + 2u z + u^2 + u^3: c = u^3, f = 1, F3 = z - u with u = xy.
  const auto m = normalization_map(1, 1, 3, S("2*u"), S("1"));
  EXPECT_TRUE(m.verified);
  EXPECT_EQ(m.F[2], P("z - x*y"));
  const auto m2 = normalization_map(2, 1, 3, S("2*u"), S("1"));
  EXPECT_EQ(m2.F[2], P("z - x^2*y"));
}

TEST(Normalization, RandomPairs) {
  std::mt19937 rng(29);
  std::uniform_int_distribution<int> coef(-4, 4);
  std::uniform_int_distribution<int> rdist(1, 6);
  int done = 0;
  while (done < 20) {
    // Random a with a(0) = 0 and c = u^r * f with f(0) a square.
    SparsePoly a(VarList{"u"}), f(VarList{"u"});
    for (int j = 1; j <= 4; ++j) a += U("u").pow(static_cast<unsigned>(j)) * GaussianRational(coef(rng));
    const int root = coef(rng);
    if (root == 0) continue;
    f += U("1") * GaussianRational(root * root);
    for (int j = 1; j <= 3; ++j) f += U("u").pow(static_cast<unsigned>(j)) * GaussianRational(coef(rng));
    const int r = rdist(rng);
    const SparsePoly ur = U("u").pow(static_cast<unsigned>(r));
    const SparsePoly b = a * a * GaussianRational(Rational(1, 4)) + ur * f;
    const auto t = tschirnhausen(TruncSeries(a), TruncSeries(b));
    ASSERT_EQ(t.r, r);
    ASSERT_EQ(t.f.poly(), f);
    const auto m = normalization_map(1, 2, r, TruncSeries(a), t.f);
    EXPECT_TRUE(m.verified) << "a=" << a.to_string() << " b=" << b.to_string();
    // sqrt(f)^2 = f modulo the working order.
    const SparsePoly sq = m.sqrt_f.poly() * m.sqrt_f.poly() - f;
    for (const auto& [e, c] : sq.terms()) EXPECT_GT(static_cast<int>(e[0]), m.order);
    ++done;
  }
}

TEST(Normalization, NoRootInField) {
  EXPECT_THROW(normalization_map(1, 1, 3, S("0"), S("2")), NoExactRoot);
}

TEST(Hopf, Fields) {
  EXPECT_EQ(hopf_vector_field(2, 1).to_string(), "x∂x + z∂z");
  EXPECT_EQ(hopf_vector_field(2, 3).to_string(), "x∂x + z∂z");
  EXPECT_EQ(hopf_vector_field(4, 2).to_string(), "x∂x + 2z∂z");
  EXPECT_EQ(hopf_vector_field(3, 3).to_string(), "x∂x + y∂y + 3z∂z");
  EXPECT_THROW(hopf_vector_field(3, 2), ContractViolation);
}

TEST(Hopf, InvarianceExactlyAtRIsD) {
  // p = p' d, q = q' d: the normal form z^2 + (x^p' y^q')^r is X-invariant iff r = d.
  for (int pp = 1; pp <= 3; ++pp) {
    for (int qp = 1; qp <= 3; ++qp) {
      for (int d = 1; d <= 4; ++d) {
        const int p = pp * d, q = qp * d;
        if (p % 2 == 1 && q % 2 == 0) continue;
        const auto X = hopf_vector_field(p, q);
        for (int r = 1; r <= 5; ++r) {
          const auto c = hopf_invariance(X, pp, qp, r);
          const bool expect = r == d;
          EXPECT_EQ(c.has_value(), expect) << p << "," << q << " r=" << r;
          if (c) EXPECT_EQ(*c, Rational(p % 2 == 0 ? p : p + q));
        }
      }
    }
  }
}
