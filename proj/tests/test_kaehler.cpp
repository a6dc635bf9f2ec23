#include "ltk/kaehler.hpp"
#include "ltk/sampling.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace ltk;

namespace {

ConfigPoint imaginary_axis(int n, double t) {
  CMatrix z = CMatrix::Zero(n + 1, 1);
  z(0, 0) = Complex(0, t);
  return ConfigPoint(z);
}

ConfigPoint worked() {
  CMatrix z = CMatrix::Zero(3, 2);
  z(0, 0) = Complex(0, 2);
  z(1, 0) = 1.0;
  z(2, 0) = kI;
  z(0, 1) = kI;
  return ConfigPoint(z);
}

ConfigPoint shift_im(const ConfigPoint& z, Eigen::Index i, Eigen::Index j, double h) {
  CMatrix m = z.matrix();
  m(i, j) += Complex(0, h);
  return ConfigPoint(m);
}

// rho(exp(i A) z) for a real algebra matrix A.
double rho_along(const ConfigPoint& z, const RMatrix& a) {
  return rho(ConfigPoint(matrix_exp(kI * a.cast<Complex>()) * z.matrix()));
}

}  // namespace

TEST(Rho, Examples) {
  EXPECT_EQ(rho(imaginary_axis(2, 1.0)), 1.0);
  EXPECT_NEAR(rho(imaginary_axis(3, 2.5)), 1.0 / 6.25, 1e-15);
  EXPECT_NEAR(rho(worked()), 4.0 / 3.0, 1e-15);
  CMatrix out = CMatrix::Zero(3, 1);
  out(1, 0) = kI;
  EXPECT_THROW(rho(ConfigPoint(out)), DomainError);
}

TEST(Rho, InvariantUnderRealGroup) {
  Rng rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = rng.uniform_int(1, 4);
    const ConfigPoint z = sample_tube_point(rng, n, rng.uniform_int(1, 5));
    const GroupElement g = random_group_element(n, rng.bits(), 1.0, Realness::real0);
    const double r = rho(z);
    EXPECT_NEAR(rho(apply(g, z)), r, 1e-9 * r);
  }
}

TEST(Gradient, Examples) {
  RMatrix g = rho_gradient(imaginary_axis(2, 1.0));
  EXPECT_EQ(g(0, 0), -2.0);
  EXPECT_EQ(g(1, 0), 0.0);
  g = rho_gradient(imaginary_axis(2, 2.0));
  EXPECT_EQ(g(0, 0), -0.25);
}

TEST(Gradient, MatchesCentralDifferences) {
  Rng rng(42);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = rng.uniform_int(1, 4);
    const ConfigPoint z = sample_tube_point(rng, n, rng.uniform_int(1, 3));
    const RMatrix g = rho_gradient(z);
    const double h = 1e-6;
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
      for (Eigen::Index i = 0; i < g.rows(); ++i) {
        const double fd = (rho(shift_im(z, i, j, h)) - rho(shift_im(z, i, j, -h))) / (2 * h);
        EXPECT_NEAR(g(i, j), fd, 1e-5 * (1.0 + std::abs(fd)));
      }
    }
  }
}

TEST(Levi, AxisExample) {
  const RVector ev = levi_eigenvalues(imaginary_axis(2, 1.0));
  ASSERT_EQ(ev.size(), 3);
  EXPECT_NEAR(ev(0), 0.5, 1e-15);
  EXPECT_NEAR(ev(1), 0.5, 1e-15);
  EXPECT_NEAR(ev(2), 1.5, 1e-15);
  for (double t : {0.5, 2.0, 3.0}) {
    EXPECT_NEAR(levi_min_eigenvalue(imaginary_axis(2, t)), 0.5 * std::pow(t, -4.0), 1e-12);
  }
}

TEST(Levi, QuarterHessianByDifferences) {
  Rng rng(43);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = rng.uniform_int(1, 4);
    const ConfigPoint z = sample_tube_point(rng, n, 1);
    const RMatrix block = levi_block(z.im().col(0));
    const double h = 1e-5;
    for (Eigen::Index i = 0; i <= n; ++i) {
      const RMatrix gp = rho_gradient(shift_im(z, i, 0, h));
      const RMatrix gm = rho_gradient(shift_im(z, i, 0, -h));
      const RVector col = (gp.col(0) - gm.col(0)) / (2 * h) / 4.0;
      EXPECT_LT((block.col(i) - col).cwiseAbs().maxCoeff(), 1e-5 * (1.0 + block.cwiseAbs().maxCoeff()));
    }
  }
}

TEST(Levi, PositiveOnTube) {
  Rng rng(44);
  for (int trial = 0; trial < 200; ++trial) {
    const ConfigPoint z = sample_tube_point(rng, rng.uniform_int(1, 4), rng.uniform_int(1, 5));
    EXPECT_GT(levi_min_eigenvalue(z), 0.0);
  }
}

TEST(Moment, Examples) {
  CMatrix z(2, 1);
  z << kI, 1.0;
  const MomentValue mv = moment_map(ConfigPoint(z));
  ASSERT_EQ(mv.coefficients.size(), 1);
  EXPECT_EQ(mv.coefficients(0), -2.0);

  Rng rng(45);
  const MomentValue zero = moment_map(sample_imaginary_tube_point(rng, 4, 5));
  EXPECT_TRUE(zero.coefficients.isZero(0.0));
}

TEST(Moment, DerivativeOfRhoAlongOrbit) {
  Rng rng(46);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = rng.uniform_int(1, 4);
    const ConfigPoint z = sample_tube_point(rng, n, rng.uniform_int(1, 3));
    const MomentValue mv = moment_map(z);
    const auto basis = algebra_basis(n);
    const double h = 1e-5;
    for (std::size_t a = 0; a < basis.size(); ++a) {
      const RMatrix xi = basis[a].matrix().real();
      const double fd = (rho_along(z, h * xi) - rho_along(z, -h * xi)) / (2 * h);
      EXPECT_NEAR(mv.coefficients(static_cast<Eigen::Index>(a)), fd, 1e-5 * (1.0 + std::abs(fd)));
    }
  }
}

TEST(Moment, LinearInAlgebraElement) {
  Rng rng(47);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = rng.uniform_int(1, 4);
    const ConfigPoint z = sample_tube_point(rng, n, 2);
    const MomentValue mv = moment_map(z);
    RVector c(algebra_dimension(n));
    for (Eigen::Index k = 0; k < c.size(); ++k) c(k) = rng.normal();
    const RMatrix xi = algebra_combination(n, c).real();
    EXPECT_NEAR(moment_component(z, xi), c.dot(mv.coefficients), 1e-10 * (1.0 + mv.norm() * c.norm()));
  }
}

TEST(Moment, EquivariantUnderRealGroup) {
  // mu_xi(g z) = mu_{g^-1 xi g}(z) for real g.
  Rng rng(48);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = rng.uniform_int(1, 4);
    const ConfigPoint z = sample_tube_point(rng, n, 2);
    const GroupElement g = random_group_element(n, rng.bits(), 0.5, Realness::real0);
    const RMatrix gm = g.matrix().real();
    const RMatrix ginv = g.inverse().matrix().real();
    for (const auto& b : algebra_basis(n)) {
      const RMatrix xi = b.matrix().real();
      const double lhs = moment_component(apply(g, z), xi);
      const double rhs = moment_component(z, ginv * xi * gm);
      EXPECT_NEAR(lhs, rhs, 1e-9 * (1.0 + std::abs(lhs)));
    }
  }
}

TEST(OrbitHessian, SecondDifferences) {
  Rng rng(49);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = rng.uniform_int(1, 3);
    const ConfigPoint z = sample_tube_point(rng, n, rng.uniform_int(1, 3));
    const RMatrix h = orbit_hessian(z);
    const auto basis = algebra_basis(n);
    auto second = [&](const RMatrix& xa, const RMatrix& xb, double s) {
      return (rho_along(z, s * (xa + xb)) - rho_along(z, s * (xa - xb)) - rho_along(z, s * (xb - xa)) +
              rho_along(z, -s * (xa + xb))) /
             (4 * s * s);
    };
    // Step scaled to the point: boosts act on z with weight ~ |z|.
    const double s = 1e-3 / (1.0 + z.matrix().cwiseAbs().maxCoeff());
    for (std::size_t a = 0; a < basis.size(); ++a) {
      for (std::size_t b = 0; b < basis.size(); ++b) {
        const RMatrix xa = basis[a].matrix().real(), xb = basis[b].matrix().real();
        // Richardson: cancels the s^2 term of the central difference.
        const double fd = (4.0 * second(xa, xb, s / 2) - second(xa, xb, s)) / 3.0;
        EXPECT_NEAR(h(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)), fd,
                    1e-5 * (1.0 + std::abs(fd)));
      }
    }
  }
}

TEST(Flow, ImaginaryStartIsStationary) {
  Rng rng(50);
  const ConfigPoint z = sample_imaginary_tube_point(rng, 3, 3);
  const FlowResult fr = minimize_rho_on_orbit(z);
  EXPECT_TRUE(fr.converged);
  EXPECT_EQ(fr.iterations, 0);
  EXPECT_EQ(fr.trace.back().rho, rho(z));
}

TEST(Flow, ReturnsToClosedOrbitMinimum) {
  const auto basis = algebra_basis(2);
  const ConfigPoint z = apply(exp_algebra(basis[0], Complex(0, 0.3)), imaginary_axis(2, 1.0));
  ASSERT_TRUE(in_future_tube(z));
  EXPECT_GT(rho(z), 1.0);
  for (auto dir : {FlowDirection::newton, FlowDirection::gradient}) {
    FlowOptions opts;
    opts.direction = dir;
    const FlowResult fr = minimize_rho_on_orbit(z, opts);
    EXPECT_TRUE(fr.converged);
    EXPECT_NEAR(fr.trace.back().rho, 1.0, 1e-5);
    EXPECT_TRUE(in_future_tube(fr.final_point));
    const ConfigPoint moved = apply(fr.accumulated_group, z);
    EXPECT_LT((moved.matrix() - fr.final_point.matrix()).cwiseAbs().maxCoeff(), 1e-8);
  }
}

TEST(Flow, NonClosedOrbitApproachesInfimum) {
  FlowOptions opts;
  opts.direction = FlowDirection::gradient;
  opts.max_iter = 2000;
  const FlowResult fr = minimize_rho_on_orbit(worked(), opts);
  EXPECT_FALSE(fr.converged);
  EXPECT_FALSE(fr.diagnostic.empty());
  EXPECT_GT(fr.trace.back().rho, 1.25);
  EXPECT_LT(fr.trace.back().rho, 4.0 / 3.0);
  for (std::size_t i = 1; i < fr.trace.size(); ++i) EXPECT_LE(fr.trace[i].rho, fr.trace[i - 1].rho);

  const FlowResult nt = minimize_rho_on_orbit(worked());
  EXPECT_GT(nt.trace.back().rho, 1.25);
  EXPECT_NEAR(nt.trace.back().rho, 1.25, 1e-5);
}

TEST(Certify, TubePointIsItsOwnWitness) {
  Rng rng(51);
  const ConfigPoint z = sample_tube_point(rng, 2, 3);
  const MembershipVerdict v = membership_certify(z);
  EXPECT_EQ(v.status, MembershipStatus::member);
  ASSERT_TRUE(v.witness);
  EXPECT_TRUE(v.witness->matrix().isIdentity(0.0));
}

TEST(Certify, ZeroIsUnknown) {
  const MembershipVerdict v = membership_certify(ConfigPoint(CMatrix::Zero(3, 2)));
  EXPECT_EQ(v.status, MembershipStatus::unknown);
  EXPECT_FALSE(v.witness);
}

TEST(Certify, FindsWitnessForMovedPoints) {
  Rng rng(52);
  int members = 0, moved_out = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const int n = rng.uniform_int(1, 4);
    const ConfigPoint w = sample_tube_point_with_margin(rng, n, rng.uniform_int(1, 4), 0.1);
    const ConfigPoint z = apply(random_group_element(n, rng.bits(), 0.5, Realness::complex), w);
    if (!in_future_tube(z)) ++moved_out;
    const MembershipVerdict v = membership_certify(z);
    if (v.status == MembershipStatus::member) {
      ++members;
      ASSERT_TRUE(v.witness);
      EXPECT_TRUE(in_future_tube(apply(*v.witness, z)));
    }
  }
  EXPECT_GT(moved_out, 0);
  EXPECT_GE(members, 19);
}

TEST(Slice, Examples) {
  Rng rng(53);
  CMatrix z = sample_tube_point(rng, 2, 2).matrix();
  z.col(0).imag() << 1.0, 0.0, 0.0;
  auto [g, w] = slice_normalize(ConfigPoint(z));
  EXPECT_TRUE(g.matrix().isIdentity(0.0));
  EXPECT_EQ(w.matrix(), z);

  z.col(0).imag() << std::cosh(1.0), std::sinh(1.0), 0.0;
  auto [g2, w2] = slice_normalize(ConfigPoint(z));
  EXPECT_NEAR(w2.im()(0, 0), 1.0, 1e-14);
  EXPECT_NEAR(w2.im()(1, 0), 0.0, 1e-14);
  EXPECT_NEAR(rho(w2), rho(ConfigPoint(z)), 1e-12);
}

TEST(Bounds, Examples) {
  const ExhaustionBounds zero = exhaustion_bounds(0.0);
  EXPECT_EQ(zero.eta_y_max, 0.0);
  EXPECT_EQ(zero.eta_x_max, 0.0);
  EXPECT_EQ(zero.xy_max, 0.0);
  EXPECT_NEAR(exhaustion_bounds(1.0).eta_y_max, 1.6180339887498949, 1e-15);
  EXPECT_EQ(pair_mixed_max(2.0, 2.0), 3.0);
  EXPECT_THROW(exhaustion_bounds(-1.0), DomainError);
}

TEST(Bounds, SingleCopyChainOnTube) {
  Rng rng(54);
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = rng.uniform_int(1, 4);
    const ConfigPoint z = sample_tube_point(rng, n, 1, 3.0, ConeSampling{3.0, 0.1, 10.0});
    const RVector x = z.re().col(0), y = z.im().col(0);
    const double m = single_copy_bound(eta(z.column(0)));
    const ExhaustionBounds b = exhaustion_bounds(m);
    EXPECT_LE(lorentz_eta(y), b.eta_y_max * (1 + 1e-12) + 1e-12);
    EXPECT_LE(std::abs(lorentz_eta(x)), b.eta_x_max * (1 + 1e-12) + 1e-12);
    EXPECT_LE(std::abs(lorentz_dot(x, y)), b.xy_max * (1 + 1e-12) + 1e-12);
  }
}

TEST(Audit, EmptyFilterIsReported) {
  const ExhaustionAudit a = exhaustion_audit(10.0, 1e-6, 500, 3);
  EXPECT_TRUE(a.empty);
  EXPECT_FALSE(a.passed());
}

TEST(Audit, SmallRunIsConsistent) {
  const ExhaustionAudit a = exhaustion_audit(10.0, 10.0, 2000, 3);
  EXPECT_FALSE(a.empty);
  EXPECT_TRUE(a.finite);
  EXPECT_EQ(a.bound_violations, 0);
  EXPECT_EQ(a.slice_violations, 0);
  EXPECT_GE(a.doubled.supremum, a.base.supremum);
}
