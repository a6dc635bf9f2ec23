#pragma once

// Random generators shared by the tests, the verification suites and the
// audit. Cone vectors follow one convention everywhere: spatial part uniform
// in a ball of radius `scale`, y0 = sqrt(|s|^2 + m^2) with margin m
// log-uniform in [0.1, 10].

#include "ltk/lorentz_group.hpp"
#include "ltk/minkowski.hpp"
#include "ltk/random.hpp"
#include "ltk/types.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ltk {

struct ConeSampling {
  double scale = 1.0;
  double margin_lo = 0.1;
  double margin_hi = 10.0;
};

inline RVector sample_unit_ball(Rng& rng, int dim) {
  RVector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = rng.normal();
  const double norm = v.norm();
  if (norm > 0.0) v /= norm;
  return v * std::pow(rng.uniform(), 1.0 / dim);
}

inline RVector sample_cone_vector(Rng& rng, int n, const ConeSampling& opts = {}) {
  const RVector s = opts.scale * sample_unit_ball(rng, n);
  const double m = rng.log_uniform(opts.margin_lo, opts.margin_hi);
  RVector y(n + 1);
  y(0) = std::sqrt(s.squaredNorm() + m * m);
  y.tail(n) = s;
  return y;
}

// z = x + i y with x uniform in [-x_scale, x_scale] and y from the cone
// convention.
inline ConfigPoint sample_tube_point(Rng& rng, int n, int copies, double x_scale = 1.0,
                                     const ConeSampling& cone = {}) {
  RMatrix re(n + 1, copies), im(n + 1, copies);
  for (int j = 0; j < copies; ++j) {
    for (int i = 0; i <= n; ++i) re(i, j) = rng.uniform(-x_scale, x_scale);
    im.col(j) = sample_cone_vector(rng, n, cone);
  }
  return ConfigPoint(re, im);
}

// Purely imaginary tube point (x = 0), so the moment map vanishes.
inline ConfigPoint sample_imaginary_tube_point(Rng& rng, int n, int copies,
                                               const ConeSampling& cone = {}) {
  RMatrix im(n + 1, copies);
  for (int j = 0; j < copies; ++j) im.col(j) = sample_cone_vector(rng, n, cone);
  return ConfigPoint(RMatrix::Zero(n + 1, copies), im);
}

// Entries with real and imaginary parts uniform in [-scale, scale].
inline ConfigPoint sample_complex_point(Rng& rng, int n, int copies, double scale = 1.0) {
  RMatrix re(n + 1, copies), im(n + 1, copies);
  for (int j = 0; j < copies; ++j) {
    for (int i = 0; i <= n; ++i) {
      re(i, j) = rng.uniform(-scale, scale);
      im(i, j) = rng.uniform(-scale, scale);
    }
  }
  return ConfigPoint(re, im);
}

// Tube point with the smallest eta(Im z_j) at least `margin`; rejection on
// top of sample_tube_point.
inline ConfigPoint sample_tube_point_with_margin(Rng& rng, int n, int copies, double margin,
                                                 double x_scale = 1.0) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    ConfigPoint z = sample_tube_point(rng, n, copies, x_scale);
    const RMatrix y = z.im();
    bool ok = true;
    for (int j = 0; j < copies && ok; ++j) {
      ok = lorentz_eta(y.col(j)) >= margin && y(0, j) >= margin;
    }
    if (ok) return z;
  }
  throw std::runtime_error("sample_tube_point_with_margin: rejection sampling exhausted");
}

// ---------------------------------------------------------------------------
// Tube points with a planted isotropic radical.
//
// In C^{1+n} the vectors omega_b = e_{2b-1} + i e_{2b} (b = 1..k) are null,
// mutually orthogonal, and their imaginary parts are spacelike. Columns are
// u_j + omega_j where the u_j live in W = {v : v_1 = ... = v_{2k} = 0} and
// span a subspace on which the form is nondegenerate, so L(z)^0 is exactly
// span{omega_b}. A random real boost/rotation is applied at the end.

struct PlantedCase {
  ConfigPoint z;
  int planted_dim = 0;
  GroupElement frame;  // real element applied to the canonical construction
};

inline PlantedCase make_planted_case(Rng& rng, int n, int k, double margin = 0.1,
                                     double frame_scale = 0.5) {
  if (2 * k > n) throw std::invalid_argument("planted radical needs 2k <= n");
  const int d = n + 1;
  const int w_dim = d - 2 * k;  // coordinates 0 and 2k+1..n
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const int du = rng.uniform_int(1, std::min(w_dim, std::max(1, 5 - k)));
    const int copies = du + k;
    // Basis directions of the u-span: tube-like vectors in W.
    CMatrix u(d, copies);
    u.setZero();
    for (int j = 0; j < du; ++j) {
      RVector yw = sample_cone_vector(rng, w_dim - 1, ConeSampling{1.0, 0.3, 3.0});
      RVector xw(w_dim);
      for (int i = 0; i < w_dim; ++i) xw(i) = rng.uniform(-1.0, 1.0);
      u(0, j) = Complex(xw(0), yw(0));
      for (int i = 1; i < w_dim; ++i) u(2 * k + i, j) = Complex(xw(i), yw(i));
    }
    // Remaining columns: positive combinations, which stay in the tube.
    for (int j = du; j < copies; ++j) {
      CVector c = CVector::Zero(d);
      for (int i = 0; i < du; ++i) c += rng.uniform(0.2, 1.0) * u.col(i);
      u.col(j) = c;
    }
    CMatrix omega_dirs = CMatrix::Zero(d, k);
    for (int b = 0; b < k; ++b) {
      omega_dirs(2 * b + 1, b) = 1.0;
      omega_dirs(2 * b + 2, b) = kI;
    }
    // Coefficients; eta(Im omega_j) = -sum_b |alpha_jb|^2.
    CMatrix alpha = CMatrix::Zero(k, copies);
    for (int j = 0; j < copies; ++j) {
      const double eta_u = lorentz_eta(RVector(u.col(j).imag()));
      const double budget = eta_u - margin;
      if (budget <= 0.0) continue;
      CVector a(k);
      for (int b = 0; b < k; ++b) a(b) = Complex(rng.normal(), rng.normal());
      const double frac = rng.uniform(0.2, 0.8);
      if (k > 0) a *= std::sqrt(frac * budget) / a.norm();
      alpha.col(j) = a;
    }
    CMatrix z = u + omega_dirs * alpha;

    // Full coefficient matrix in the basis (u_1..u_du, omega_1..omega_k).
    CMatrix coeff = CMatrix::Zero(du + k, copies);
    coeff.topLeftCorner(du, du).setIdentity();
    for (int j = du; j < copies; ++j) {
      coeff.block(0, j, du, 1) =
          u.leftCols(du).colPivHouseholderQr().solve(u.col(j));
    }
    coeff.bottomRows(k) = alpha;
    Eigen::JacobiSVD<CMatrix> csvd(coeff);
    if (csvd.singularValues().minCoeff() < margin) continue;

    // Nondegeneracy of the form on the u-span.
    CMatrix ub = u.leftCols(du);
    CMatrix jub = ub;
    jub.bottomRows(d - 1) *= -1.0;
    Eigen::JacobiSVD<CMatrix> gsvd(ub.transpose() * jub);
    const RVector gs = gsvd.singularValues();
    if (gs.minCoeff() < margin * std::max(1.0, gs.maxCoeff()) * 0.1) continue;

    ConfigPoint zc(z);
    bool in_tube = true;
    const RMatrix y = zc.im();
    for (int j = 0; j < copies; ++j) {
      if (lorentz_eta(y.col(j)) < margin || y(0, j) < margin) in_tube = false;
    }
    if (!in_tube) continue;

    GroupElement frame = random_group_element(n, rng.bits(), frame_scale, Realness::real0);
    return PlantedCase{apply(frame, zc), k, frame};
  }
  throw std::runtime_error("make_planted_case: could not satisfy the planting margin");
}

}  // namespace ltk
