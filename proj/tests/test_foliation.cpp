#include "helpers.hpp"

#include "cusp/foliation.hpp"
#include "cusp/linalg.hpp"

#include <gtest/gtest.h>

using namespace cusp;
using testing_helpers::P;
using testing_helpers::S;

TEST(BuildOmega, CaseOneExample) {
  const CuspidalFoliation f = build_omega(2, 2, 2, S("1"));
  EXPECT_EQ(f.d, 2);
  const KForm expected = KForm::one_form(original_chart(), {P("2*x*y^2"), P("2*x^2*y"), P("2*z + x^2*y^2")});
  EXPECT_EQ(f.omega, expected);
}

TEST(BuildOmega, GcdArithmetic) {
  const CuspidalFoliation f = build_omega(2, 3, 2, S("1"));
  EXPECT_EQ(f.d, 1);
  EXPECT_EQ(f.pp, 2);
  EXPECT_EQ(f.qp, 3);
  EXPECT_EQ(f.u_monomial().pow(2), P("x^4*y^6"));
  EXPECT_THROW(build_omega(2, 3, 0, S("1")), ContractViolation);
  EXPECT_THROW(build_omega(2, 3, 1, S("u")), ContractViolation);
}

TEST(BuildOmega, IntegrableForPolynomialH) {
  for (int p = 1; p <= 5; ++p) {
    for (int q = 1; q <= 5; ++q) {
      for (int k = 1; k <= 3; ++k) {
        for (const char* h : {"1", "1+u", "3 - 2*u^2 + I*u^3"}) {
          const auto cert = check_integrability(build_omega(p, q, k, S(h)).omega);
          EXPECT_TRUE(cert.vanishes) << p << " " << q << " " << k << " " << h;
          EXPECT_TRUE(cert.three_form.is_zero());
        }
      }
    }
  }
}

TEST(Integrability, NonIntegrableAndExact) {
  // d(z^2 + x^2 y^3) + x dz: w ∧ dw = -3 x^2 y^2 dx∧dy∧dz by hand.
  const KForm w = KForm::one_form(original_chart(), {P("2*x*y^3"), P("3*x^2*y^2"), P("2*z + x")});
  const auto cert = check_integrability(w);
  EXPECT_FALSE(cert.vanishes);
  EXPECT_EQ(cert.three_form.coeff(7), P("-3*x^2*y^2"));
  const KForm df = exterior_derivative(KForm::function(P("x^3*y - z^5 + I*x*y*z"), original_chart()));
  EXPECT_TRUE(check_integrability(df).vanishes);
}

TEST(ClassifyLinear, Examples) {
  const GaussianRational o(1);
  const GaussianRational z(0);
  const LinearPartReport id = classify_linear_part({{o, z, z}, {z, o, z}, {z, z, o}});
  EXPECT_EQ(id.verdict, LinearPartReport::Verdict::Symmetric);
  EXPECT_EQ(id.rank, 3);
  const LinearPartReport zz = classify_linear_part({{z, z, z}, {z, z, z}, {z, z, o}});
  EXPECT_EQ(zz.verdict, LinearPartReport::Verdict::Symmetric);
  EXPECT_EQ(zz.rank, 1);
  EXPECT_TRUE(zz.normal_form_exact);
  const Matrix<GaussianRational> c{{z, o, z}, {z, z, z}, {z, z, z}};
  const LinearPartReport k = classify_linear_part(c);
  EXPECT_EQ(k.verdict, LinearPartReport::Verdict::Kupka);
  EXPECT_LE(rank(c), 2);
  EXPECT_NE(c[static_cast<std::size_t>(k.witness.second)][static_cast<std::size_t>(k.witness.first)],
            c[static_cast<std::size_t>(k.witness.first)][static_cast<std::size_t>(k.witness.second)]);
  // x dy - y dx is not integrable in three variables... it is (no dz); use x dy - y dx + z(...) instead.
  EXPECT_THROW(classify_linear_part({{z, z, z}, {z, z, o}, {o, z, z}}), ContractViolation);
}

TEST(ClassifyLinear, CongruenceInvariance) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> d(-3, 3);
  const std::vector<std::vector<int>> bases{{1, 0, 0, 0, 2, 0, 0, 0, -1}, {0, 0, 0, 0, 1, 0, 0, 0, 1}, {0, 0, 0, 0, 0, 0, 0, 0, 3}};
  for (const auto& b : bases) {
    Matrix<GaussianRational> c(3, std::vector<GaussianRational>(3));
    for (std::size_t i = 0; i < 9; ++i) c[i / 3][i % 3] = GaussianRational(b[i]);
    const int r0 = classify_linear_part(c).rank;
    for (int t = 0; t < 10; ++t) {
      Matrix<GaussianRational> pm(3, std::vector<GaussianRational>(3));
      do {
        for (auto& row : pm) {
          for (auto& e : row) e = GaussianRational(d(rng));
        }
      } while (rank(pm) < 3);
      Matrix<GaussianRational> m(3, std::vector<GaussianRational>(3));
      for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
          for (std::size_t a = 0; a < 3; ++a) {
            for (std::size_t bb = 0; bb < 3; ++bb) m[i][j] += pm[a][i] * c[a][bb] * pm[bb][j];
          }
        }
      }
      const LinearPartReport r = classify_linear_part(m);
      EXPECT_EQ(r.verdict, LinearPartReport::Verdict::Symmetric);
      EXPECT_EQ(r.rank, r0);
    }
  }
}
