#include "ltk/lorentz_group.hpp"
#include "ltk/sampling.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace ltk;

namespace {

double dist(const CMatrix& a, const CMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST(Validate, Classification) {
  EXPECT_EQ(validate_group(CMatrix::Identity(3, 3)).classification(), GroupClass::real_SO0);
  EXPECT_EQ(epsilon_element(2).classification(), GroupClass::real_SO_other);
  CMatrix flip = CMatrix::Identity(3, 3);
  flip(2, 2) = -1.0;
  EXPECT_EQ(validate_group(flip).classification(), GroupClass::invalid);
  CMatrix scaled = 2.0 * CMatrix::Identity(3, 3);
  EXPECT_EQ(validate_group(scaled).classification(), GroupClass::invalid);
  EXPECT_THROW(validate_group(CMatrix::Identity(3, 2)), DimensionError);
}

TEST(Validate, ComplexElements) {
  const GroupElement g = random_group_element(3, 21, 0.5, Realness::complex);
  EXPECT_EQ(g.classification(), GroupClass::complex_SO);
  EXPECT_LT(g.residual(), 1e-12);
}

TEST(Algebra, Basis) {
  const auto b1 = algebra_basis(1);
  ASSERT_EQ(b1.size(), 1u);
  CMatrix boost(2, 2);
  boost << 0.0, 1.0, 1.0, 0.0;
  EXPECT_EQ(b1[0].matrix(), boost);
  EXPECT_EQ(algebra_basis(2).size(), 3u);
  for (int n = 1; n <= 4; ++n) {
    const auto basis = algebra_basis(n);
    EXPECT_EQ(static_cast<int>(basis.size()), algebra_dimension(n));
    for (const auto& xi : basis) EXPECT_EQ(xi.residual(), 0.0);
  }
  CMatrix sym = CMatrix::Identity(3, 3);
  EXPECT_THROW(AlgebraElement{sym}, PreconditionError);
}

TEST(Exp, ClosedForms) {
  const auto basis = algebra_basis(2);
  EXPECT_LT(dist(exp_algebra(basis[0], 0.0).matrix(), CMatrix::Identity(3, 3)), 1e-15);

  const double s = 0.7;
  CMatrix boost = CMatrix::Identity(3, 3);
  boost(0, 0) = boost(1, 1) = std::cosh(s);
  boost(0, 1) = boost(1, 0) = std::sinh(s);
  EXPECT_LT(dist(exp_algebra(basis[0], s).matrix(), boost), 1e-14);

  const double q = std::numbers::pi / 2;
  CMatrix rot = CMatrix::Identity(3, 3);
  rot(1, 1) = rot(2, 2) = std::cos(q);
  rot(1, 2) = std::sin(q);
  rot(2, 1) = -std::sin(q);
  EXPECT_LT(dist(exp_algebra(basis[2], q).matrix(), rot), 1e-14);
}

TEST(Exp, AdditiveInParameter) {
  Rng rng(22);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = rng.uniform_int(1, 4);
    CVector c(algebra_dimension(n));
    for (Eigen::Index k = 0; k < c.size(); ++k) c(k) = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
    const AlgebraElement xi(algebra_combination(n, c));
    const Complex s(rng.uniform(-1, 1), rng.uniform(-1, 1)), t(rng.uniform(-1, 1), 0.0);
    const CMatrix lhs = exp_algebra(xi, s).matrix() * exp_algebra(xi, t).matrix();
    const CMatrix rhs = exp_algebra(xi, s + t).matrix();
    EXPECT_LT(dist(lhs, rhs), 1e-10 * std::max(1.0, rhs.cwiseAbs().maxCoeff()));
  }
}

TEST(Exp, CapRaisesOverflow) {
  const auto basis = algebra_basis(2);
  EXPECT_THROW(exp_algebra(basis[0], 100.0), OverflowError);
}

TEST(Group, ZeroCoefficientsGiveIdentity) {
  const AlgebraElement zero(algebra_combination(3, CVector::Zero(6)));
  EXPECT_TRUE(exp_algebra(zero, 1.0).matrix().isIdentity(0.0));
}

TEST(Group, ClosureAndInverse) {
  Rng rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = rng.uniform_int(1, 4);
    const GroupElement a = random_group_element(n, rng.bits(), 1.0, Realness::complex);
    const GroupElement b = random_group_element(n, rng.bits(), 1.0, Realness::complex);
    const GroupElement ab = a * b;
    EXPECT_TRUE(ab.valid());
    EXPECT_LT(std::abs(ab.det() - 1.0), 1e-9);
    const CMatrix id = (a * a.inverse()).matrix();
    EXPECT_LT(dist(id, CMatrix::Identity(n + 1, n + 1)), 1e-9 * std::max(1.0, a.matrix().squaredNorm()));
  }
}

TEST(Group, RealElementsStabilizeTube) {
  Rng rng(24);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = rng.uniform_int(1, 4);
    const int copies = rng.uniform_int(1, 5);
    const ConfigPoint z = sample_tube_point(rng, n, copies);
    const GroupElement g = random_group_element(n, rng.bits(), 1.0, Realness::real0);
    EXPECT_EQ(g.classification(), GroupClass::real_SO0);
    EXPECT_TRUE(in_future_tube(apply(g, z)));
  }
}

TEST(Group, ApplyIdentity) {
  Rng rng(25);
  const ConfigPoint z = sample_complex_point(rng, 3, 4);
  EXPECT_EQ(apply(GroupElement::identity(3), z).matrix(), z.matrix());
  EXPECT_THROW(apply(GroupElement::identity(2), z), DimensionError);
}

TEST(Cartan, IdentityParams) {
  for (auto [v, n] : {std::pair{CartanVariant::H0, 3}, {CartanVariant::H1, 4}, {CartanVariant::H2, 4}}) {
    const CartanParams p = cartan_identity_params(v, n);
    EXPECT_TRUE(cartan_element(p, n).matrix().isIdentity(0.0));
  }
}

TEST(Cartan, SigmaBlock) {
  CartanParams p;
  p.variant = CartanVariant::H0;
  p.circle = std::make_pair(0.0, 1.0);
  const GroupElement g = cartan_element(p, 1);
  CMatrix expected(2, 2);
  expected << 0.0, kI, kI, 0.0;
  EXPECT_EQ(g.matrix(), expected);
  EXPECT_EQ(g.classification(), GroupClass::complex_SO);
}

TEST(Cartan, ParameterValidation) {
  CartanParams p = cartan_identity_params(CartanVariant::H1, 4);
  p.hyperbolas[0] = {2.0, 1.0};
  EXPECT_THROW(cartan_element(p, 4), PreconditionError);
  EXPECT_THROW(cartan_identity_params(CartanVariant::H0, 2), PreconditionError);
  EXPECT_THROW(cartan_identity_params(CartanVariant::H2, 3), PreconditionError);
}

TEST(Cartan, SubgroupsCommute) {
  Rng rng(26);
  for (auto [v, n] : {std::pair{CartanVariant::H0, 3}, {CartanVariant::H1, 4}, {CartanVariant::H2, 4}}) {
    const std::size_t m = cartan_hyperbola_count(v, n);
    for (int trial = 0; trial < 20; ++trial) {
      auto params = [&] {
        CartanParams p;
        p.variant = v;
        if (v != CartanVariant::H2) {
          const double th = rng.uniform(-2, 2);
          p.circle = std::make_pair(std::cos(th), std::sin(th));
        }
        for (std::size_t j = 0; j < m; ++j) {
          const double phi = rng.uniform(-1, 1);
          p.hyperbolas.emplace_back(std::cosh(phi), std::sinh(phi));
        }
        return p;
      };
      const CMatrix a = cartan_element(params(), n).matrix();
      const CMatrix b = cartan_element(params(), n).matrix();
      std::vector<double> angles(m);
      for (auto& x : angles) x = rng.uniform(-3, 3);
      const CMatrix r = cartan_real_element(v, n, rng.uniform(-1, 1), angles).matrix();
      EXPECT_LT(dist(a * b, b * a), 1e-13);
      EXPECT_LT(dist(a * r, r * a), 1e-12);
    }
  }
}

TEST(Epsilon, Matrix) {
  for (int n : {2, 4}) {
    const CMatrix e = epsilon_element(n).matrix();
    CMatrix expected = CMatrix::Identity(n + 1, n + 1);
    expected(0, 0) = -1.0;
    expected(1, 1) = expected(2, 2) = 0.0;
    expected(1, 2) = expected(2, 1) = 1.0;
    EXPECT_EQ(e, expected);
  }
  EXPECT_THROW(epsilon_element(3), PreconditionError);
}

TEST(Epsilon, FlipsTimeDirection) {
  Rng rng(27);
  for (int trial = 0; trial < 100; ++trial) {
    const ConfigPoint w = sample_tube_point(rng, 4, rng.uniform_int(1, 5));
    const ConfigPoint e = apply(epsilon_element(4), w);
    EXPECT_FALSE(in_future_tube(e));
    for (int j = 0; j < w.copies(); ++j) EXPECT_EQ(e.im()(0, j), -w.im()(0, j));
  }
}
