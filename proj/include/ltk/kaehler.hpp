#pragma once

// The exhaustion rho(z) = sum_j 1/eta(Im z_j) on the tube, its gradient and
// Levi form, the moment map mu_xi(z) = d/dt rho(exp(i t xi) z) at t = 0, the
// rho-minimizing flow along imaginary group directions, certification of
// membership in the extended tube, the slice normalization onto
// R + i R_{>0} e0, and the explicit boundedness chain behind the exhaustion
// property.

#include "ltk/lorentz_group.hpp"
#include "ltk/minkowski.hpp"
#include "ltk/quotient.hpp"
#include "ltk/random.hpp"
#include "ltk/sampling.hpp"
#include "ltk/types.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ltk {

namespace detail {

inline void require_tube(const ConfigPoint& z, const char* what) {
  if (!in_future_tube(z)) {
    throw DomainError(std::string(what) + ": point is outside the future tube");
  }
}

}  // namespace detail

inline double rho(const ConfigPoint& z) {
  detail::require_tube(z, "rho");
  const RMatrix y = z.im();
  double sum = 0.0;
  for (Eigen::Index j = 0; j < y.cols(); ++j) sum += 1.0 / lorentz_eta(y.col(j));
  return sum;
}

// d rho / d y: column j is -2 eta(y_j)^{-2} J y_j. rho does not depend on x.
inline RMatrix rho_gradient(const ConfigPoint& z) {
  detail::require_tube(z, "rho_gradient");
  const RMatrix y = z.im();
  RMatrix g(y.rows(), y.cols());
  for (Eigen::Index j = 0; j < y.cols(); ++j) {
    const double e = lorentz_eta(y.col(j));
    g.col(j) = -2.0 / (e * e) * apply_metric(y.col(j));
  }
  return g;
}

// Block j of the complex Hessian d^2 rho / dz dzbar: (1/4) Hess_y(1/eta)(y_j)
// with Hess_y(1/eta) = 8 eta^{-3} (Jy) t(Jy) - 2 eta^{-2} J.
inline RMatrix levi_block(const RVector& y) {
  const double e = lorentz_eta(y);
  const RVector jy = apply_metric(y);
  const Eigen::Index d = y.size();
  return 0.25 * (8.0 / (e * e * e) * jy * jy.transpose() -
                 2.0 / (e * e) * minkowski_metric(static_cast<int>(d) - 1));
}

// All eigenvalues of the Levi form, ascending.
inline RVector levi_eigenvalues(const ConfigPoint& z) {
  detail::require_tube(z, "levi_eigenvalues");
  const RMatrix y = z.im();
  const Eigen::Index d = y.rows();
  RVector all(d * y.cols());
  for (Eigen::Index j = 0; j < y.cols(); ++j) {
    Eigen::SelfAdjointEigenSolver<RMatrix> es(levi_block(y.col(j)), Eigen::EigenvaluesOnly);
    all.segment(j * d, d) = es.eigenvalues();
  }
  std::sort(all.data(), all.data() + all.size());
  return all;
}

inline double levi_min_eigenvalue(const ConfigPoint& z) { return levi_eigenvalues(z)(0); }

struct MomentValue {
  int dim_n = 0;
  RVector coefficients;  // ordered as algebra_basis(dim_n)

  double norm() const { return coefficients.norm(); }
};

// mu_xi(z) = sum_j -2 eta(y_j)^{-2} (y_j . xi x_j) for a real algebra element.
inline double moment_component(const ConfigPoint& z, const RMatrix& xi) {
  detail::require_tube(z, "moment_map");
  if (xi.rows() != z.dim_n() + 1 || xi.cols() != xi.rows()) {
    throw DimensionError("moment_component: algebra element has wrong size");
  }
  const RMatrix x = z.re();
  const RMatrix y = z.im();
  double sum = 0.0;
  for (Eigen::Index j = 0; j < y.cols(); ++j) {
    const double e = lorentz_eta(y.col(j));
    const RVector xix = xi * x.col(j);
    sum += -2.0 / (e * e) * lorentz_dot(y.col(j), xix);
  }
  return sum;
}

inline MomentValue moment_map(const ConfigPoint& z) {
  detail::require_tube(z, "moment_map");
  const int n = z.dim_n();
  const auto basis = algebra_basis(n);
  MomentValue mv;
  mv.dim_n = n;
  mv.coefficients.resize(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t a = 0; a < basis.size(); ++a) {
    mv.coefficients(static_cast<Eigen::Index>(a)) =
        moment_component(z, basis[a].matrix().real());
  }
  return mv;
}

// ---------------------------------------------------------------------------
// Flow

enum class FlowDirection {
  // xi* = -sum_a mu_a xi_a against the fixed basis.
  gradient,
  // xi* = -sum_a v_a xi_a with H v = mu, H the Hessian of
  // xi -> rho(exp(i xi) z) at 0 with eigenvalues floored to stay positive.
  newton
};

struct FlowOptions {
  FlowDirection direction = FlowDirection::newton;
  double step0 = 0.1;
  double mu_tol = 1e-6;
  int max_iter = 5000;
  double min_step = 1e-14;
  // Boost Im of the column sum onto the e0 axis before each step.
  bool recenter = true;
};

struct FlowTraceEntry {
  int iteration = 0;
  double rho = 0.0;
  double moment_norm = 0.0;
  // rho change from the previous entry, computed from the step increment
  // (0 for the first entry).
  double change = 0.0;
};

struct FlowResult {
  ConfigPoint final_point;
  GroupElement accumulated_group;
  bool converged = false;
  int iterations = 0;
  std::vector<FlowTraceEntry> trace;
  std::string diagnostic;
};

// Hessian at xi = 0 of xi -> rho(exp(i xi) z) in the coordinates of
// algebra_basis. With Im(exp(i xi) z_j) = y_j + xi x_j - xi^2 y_j / 2 + ...,
// H_ab = sum_j (xi_a x_j)^T D2_j (xi_b x_j) - g_j^T sym(xi_a xi_b) y_j
// where g_j, D2_j are the gradient and Hessian of 1/eta at y_j.
inline RMatrix orbit_hessian(const ConfigPoint& z) {
  detail::require_tube(z, "orbit_hessian");
  const int n = z.dim_n();
  const auto basis = algebra_basis(n);
  const Eigen::Index dim = static_cast<Eigen::Index>(basis.size());
  std::vector<RMatrix> xi;
  for (const auto& b : basis) xi.push_back(b.matrix().real());
  const RMatrix x = z.re();
  const RMatrix y = z.im();
  RMatrix h = RMatrix::Zero(dim, dim);
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    const RVector yj = y.col(j);
    const double e = lorentz_eta(yj);
    const RVector g = -2.0 / (e * e) * apply_metric(yj);
    const RMatrix d2 = 4.0 * levi_block(yj);
    RMatrix xx(n + 1, dim);
    for (Eigen::Index a = 0; a < dim; ++a) xx.col(a) = xi[a] * x.col(j);
    h += xx.transpose() * d2 * xx;
    for (Eigen::Index a = 0; a < dim; ++a) {
      for (Eigen::Index b = a; b < dim; ++b) {
        const RVector sym = 0.5 * (xi[a] * (xi[b] * yj) + xi[b] * (xi[a] * yj));
        const double c = g.dot(sym);
        h(a, b) -= c;
        if (b != a) h(b, a) -= c;
      }
    }
  }
  return h;
}

namespace detail {

// exp(A) - I without cancellation: Taylor tail for the scaled argument, then
// exp(2B) - I = (exp(B) - I)(exp(B) - I + 2I) for each squaring.
inline CMatrix expm1_matrix(const CMatrix& a) {
  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm1 / 0.5)));
  const CMatrix scaled = a / std::ldexp(1.0, squarings);
  const Eigen::Index d = a.rows();
  CMatrix term = scaled;
  CMatrix result = scaled;
  for (int k = 2; k <= 18; ++k) {
    term = (term * scaled) / static_cast<double>(k);
    result += term;
  }
  const CMatrix two = 2.0 * CMatrix::Identity(d, d);
  for (int s = 0; s < squarings; ++s) result = (result * (result + two)).eval();
  return result;
}

// rho(z + dz) - rho(z) evaluated from the increment, so that decreases far
// below the rounding level of rho itself are still resolved.
inline double rho_increment(const RMatrix& y, const RMatrix& dy) {
  double sum = 0.0;
  for (Eigen::Index j = 0; j < y.cols(); ++j) {
    const double e0 = lorentz_eta(y.col(j));
    const RVector yn = y.col(j) + dy.col(j);
    const double e1 = lorentz_eta(yn);
    const RVector mid = 2.0 * y.col(j) + dy.col(j);
    const double de = lorentz_dot(dy.col(j), mid);
    sum += -de / (e0 * e1);
  }
  return sum;
}

}  // namespace detail

// Descent z <- exp(i s xi*) z along xi* from opts.direction; both directions
// pair positively with mu, so rho decreases for small s. Backtracking halves s
// until rho decreases and the iterate stays in the tube. Newton trials start
// at s = 1; gradient trials at twice the last accepted step (step0 at first).
// With opts.recenter each iteration first applies a real boost, which leaves
// rho unchanged and keeps the frame well conditioned.
inline FlowResult minimize_rho_on_orbit(const ConfigPoint& z0, const FlowOptions& opts = {}) {
  detail::require_tube(z0, "minimize_rho_on_orbit");
  const int n = z0.dim_n();
  const auto basis = algebra_basis(n);
  CMatrix z = z0.matrix();
  CMatrix acc = CMatrix::Identity(n + 1, n + 1);
  FlowResult out{z0, GroupElement::identity(n), false, 0, {}, {}};

  double current = rho(z0);
  double trial_step = opts.step0;
  double last_change = 0.0;
  int iter = 0;
  for (;; ++iter) {
    if (opts.recenter) {
      const RVector ysum = z.imag().rowwise().sum();
      const CMatrix b = cone_boost_matrix(ysum).cast<Complex>();
      z = (b * z).eval();
      acc = (b * acc).eval();
    }
    const ConfigPoint zp(z);
    const MomentValue mu = moment_map(zp);
    const double mu_norm = mu.norm();
    out.trace.push_back({iter, current, mu_norm, last_change});
    if (mu_norm <= opts.mu_tol) {
      out.converged = true;
      break;
    }
    if (iter >= opts.max_iter) {
      out.diagnostic = "max_iter reached with moment norm " + std::to_string(mu_norm);
      break;
    }
    RVector coeff = mu.coefficients;
    double first = opts.step0;
    if (opts.direction == FlowDirection::newton) {
      Eigen::SelfAdjointEigenSolver<RMatrix> es(orbit_hessian(zp));
      RVector lam = es.eigenvalues();
      const double floor = std::max(1e-10 * lam.cwiseAbs().maxCoeff(), 1e-300);
      for (Eigen::Index i = 0; i < lam.size(); ++i) lam(i) = std::max(lam(i), floor);
      coeff = es.eigenvectors() * ((es.eigenvectors().transpose() * coeff).cwiseQuotient(lam));
      first = 1.0;
    } else {
      first = trial_step;
    }
    RMatrix dir = RMatrix::Zero(n + 1, n + 1);
    for (std::size_t a = 0; a < basis.size(); ++a) {
      dir -= coeff(static_cast<Eigen::Index>(a)) * basis[a].matrix().real();
    }
    const RMatrix y = zp.im();
    bool accepted = false;
    for (double s = first; s >= opts.min_step; s *= 0.5) {
      const CMatrix arg = Complex(0.0, s) * dir.cast<Complex>();
      if (arg.cwiseAbs().colwise().sum().maxCoeff() > kExpCap) continue;
      const CMatrix delta = detail::expm1_matrix(arg);
      const CMatrix dz = delta * z;
      const ConfigPoint tp(CMatrix(z + dz));
      if (!in_future_tube(tp)) continue;
      const double change = detail::rho_increment(y, dz.imag());
      if (change < 0.0) {
        z = tp.matrix();
        acc = (acc + delta * acc).eval();
        // Tracked through the increments so the trace resolves changes below
        // the rounding level of rho.
        current += change;
        last_change = change;
        trial_step = 2.0 * s;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      out.diagnostic = "line search failed: no decrease down to step " +
                       std::to_string(opts.min_step) + " at moment norm " +
                       std::to_string(mu_norm);
      break;
    }
  }
  out.iterations = iter;
  out.final_point = ConfigPoint(z);
  out.accumulated_group = validate_group(acc, 1e-8);
  return out;
}

// ---------------------------------------------------------------------------
// Extended-tube membership

struct CertifyOptions {
  int starts = 16;
  double margin = 1e-3;
  std::uint64_t seed = 0;
  int max_iter = 200;
  double start_scale = 1.0;
};

enum class MembershipStatus { member, unknown };

struct MembershipVerdict {
  MembershipStatus status = MembershipStatus::unknown;
  std::optional<GroupElement> witness;
  double residual = 0.0;
  int starts_used = 0;
};

namespace detail {

// g = exp(i A) exp(B) from the 2d coordinates (A, B) over algebra_basis(n).
class CertifyProblem {
 public:
  CertifyProblem(const ConfigPoint& z, double margin)
      : z_(z.matrix()), n_(z.dim_n()), margin_(margin) {
    for (const auto& xi : algebra_basis(n_)) basis_.push_back(xi.matrix().real());
  }

  int dim() const { return static_cast<int>(2 * basis_.size()); }

  std::optional<CMatrix> group(const RVector& theta) const {
    const Eigen::Index d = static_cast<Eigen::Index>(basis_.size());
    RMatrix a = RMatrix::Zero(n_ + 1, n_ + 1);
    RMatrix b = RMatrix::Zero(n_ + 1, n_ + 1);
    for (Eigen::Index k = 0; k < d; ++k) {
      a += theta(k) * basis_[static_cast<std::size_t>(k)];
      b += theta(d + k) * basis_[static_cast<std::size_t>(k)];
    }
    const CMatrix ia = Complex(0.0, 1.0) * a.cast<Complex>();
    if (ia.cwiseAbs().colwise().sum().maxCoeff() > kExpCap ||
        b.cwiseAbs().colwise().sum().maxCoeff() > kExpCap) {
      return std::nullopt;
    }
    return CMatrix(matrix_exp(ia) * matrix_exp(b.cast<Complex>()));
  }

  // Hinge residuals max(0, margin - eta(Im w_j)) and max(0, margin - Im w_j0).
  std::optional<RVector> residuals(const RVector& theta) const {
    const auto g = group(theta);
    if (!g) return std::nullopt;
    const RMatrix y = (*g * z_).imag();
    RVector r(2 * y.cols());
    for (Eigen::Index j = 0; j < y.cols(); ++j) {
      r(2 * j) = std::max(0.0, margin_ - lorentz_eta(y.col(j)));
      r(2 * j + 1) = std::max(0.0, margin_ - y(0, j));
    }
    if (!r.allFinite()) return std::nullopt;
    return r;
  }

 private:
  CMatrix z_;
  int n_;
  double margin_;
  std::vector<RMatrix> basis_;
};

// Levenberg-Marquardt on the hinge residuals with a central-difference
// Jacobian. Stops after 10 consecutive steps with relative gain <= 1e-4.
// Returns the best parameters and the violation sum r.r.
inline std::pair<RVector, double> certify_local(const CertifyProblem& prob, RVector theta,
                                                int max_iter) {
  auto r0 = prob.residuals(theta);
  if (!r0) return {theta, std::numeric_limits<double>::infinity()};
  RVector r = *r0;
  double v = r.squaredNorm();
  double lambda = 1e-3;
  const int p = prob.dim();
  const double h = 1e-6;
  int stalled = 0;
  for (int it = 0; it < max_iter && v > 0.0; ++it) {
    RMatrix jac(r.size(), p);
    bool ok = true;
    for (int k = 0; k < p && ok; ++k) {
      RVector tp = theta, tm = theta;
      tp(k) += h;
      tm(k) -= h;
      const auto rp = prob.residuals(tp);
      const auto rm = prob.residuals(tm);
      if (!rp || !rm) {
        ok = false;
        break;
      }
      jac.col(k) = (*rp - *rm) / (2.0 * h);
    }
    if (!ok) break;
    const RMatrix jtj = jac.transpose() * jac;
    const RVector jtr = jac.transpose() * r;
    bool improved = false;
    for (int tries = 0; tries < 30; ++tries) {
      RMatrix lhs = jtj;
      lhs.diagonal().array() += lambda * (1.0 + jtj.diagonal().array());
      const RVector delta = lhs.ldlt().solve(-jtr);
      const RVector cand = theta + delta;
      const auto rc = prob.residuals(cand);
      if (rc && rc->squaredNorm() < v) {
        const double vn = rc->squaredNorm();
        stalled = v - vn <= 1e-4 * v ? stalled + 1 : 0;
        theta = cand;
        r = *rc;
        v = vn;
        lambda = std::max(lambda / 3.0, 1e-12);
        improved = true;
        break;
      }
      lambda *= 4.0;
    }
    if (!improved || stalled >= 10) break;
  }
  return {theta, v};
}

}  // namespace detail

// Multi-start search for g with g z in the tube (with margin). Never claims
// non-membership: failure to find a witness yields "unknown".
inline MembershipVerdict membership_certify(const ConfigPoint& z, const CertifyOptions& opts = {}) {
  const int n = z.dim_n();
  MembershipVerdict out;
  if (in_future_tube(z)) {
    out.status = MembershipStatus::member;
    out.witness = GroupElement::identity(n);
    out.residual = 0.0;
    return out;
  }
  const detail::CertifyProblem prob(z, opts.margin);
  double best = std::numeric_limits<double>::infinity();
  for (int s = 0; s < opts.starts; ++s) {
    RVector theta = RVector::Zero(prob.dim());
    if (s > 0) {
      Rng rng(derive_seed(opts.seed, "certify-start", static_cast<std::uint64_t>(s)));
      for (int k = 0; k < prob.dim(); ++k) theta(k) = rng.uniform(-opts.start_scale, opts.start_scale);
    }
    const auto [th, v] = detail::certify_local(prob, theta, opts.max_iter);
    out.starts_used = s + 1;
    best = std::min(best, v);
    if (v == 0.0) {
      const auto g = prob.group(th);
      const ConfigPoint moved(*g * z.matrix());
      if (in_future_tube(moved)) {
        out.status = MembershipStatus::member;
        out.witness = validate_group(*g, 1e-8);
        out.residual = 0.0;
        return out;
      }
    }
  }
  out.residual = best;
  return out;
}

// ---------------------------------------------------------------------------
// Slice and exhaustion

// g = cone_boost(Im z_1); returns (g, g z) with Im (g z)_1 on the positive e0 axis.
inline std::pair<GroupElement, ConfigPoint> slice_normalize(const ConfigPoint& z) {
  detail::require_tube(z, "slice_normalize");
  const GroupElement g = cone_boost(MinkowskiVector::real(z.im().col(0)));
  return {g, apply(g, z)};
}

struct ExhaustionBounds {
  double eta_y_max = 0.0;  // eta(y) <= M (1 + sqrt 5) / 2
  double eta_x_max = 0.0;  // |eta(x)| <= eta_y_max + M
  double xy_max = 0.0;     // |x . y| <= M
};

// Single-copy chain: |eta(x) - eta(y)| <= M and |x.y| <= M together with
// eta(x) eta(y) <= (x.y)^2 give eta(y) (eta(y) - M) <= M^2.
inline ExhaustionBounds exhaustion_bounds(double m) {
  if (!(m >= 0.0)) throw DomainError("exhaustion_bounds: M must be >= 0");
  ExhaustionBounds b;
  b.eta_y_max = m * (1.0 + std::sqrt(5.0)) / 2.0;
  b.eta_x_max = b.eta_y_max + m;
  b.xy_max = m;
  return b;
}

// Two copies: |x1.x2|, |y1.y2| <= (3/2) max{M1, M2}.
inline double pair_mixed_max(double m1, double m2) {
  if (!(m1 >= 0.0) || !(m2 >= 0.0)) throw DomainError("pair_mixed_max: bounds must be >= 0");
  return 1.5 * std::max(m1, m2);
}

// Single-copy M for a tube vector from its quotient value eta(z) =
// eta(x) - eta(y) + 2i x.y.
inline double single_copy_bound(Complex eta_z) {
  return std::max(std::abs(eta_z.real()), 0.5 * std::abs(eta_z.imag()));
}

struct AuditOptions {
  int n = 2;
  int copies = 2;
  double x_scale = 3.0;
  ConeSampling cone{3.0, 0.1, 10.0};
};

struct AuditPass {
  int samples = 0;
  int accepted = 0;
  double supremum = 0.0;
};

struct ExhaustionAudit {
  double gram_bound = 0.0;
  double r = 0.0;
  AuditPass base;
  AuditPass doubled;
  bool empty = true;
  bool finite = false;
  double relative_change = 0.0;
  bool stable = false;
  int bound_checks = 0;
  int bound_violations = 0;
  int slice_violations = 0;
  std::vector<std::string> violation_notes;

  bool passed() const {
    return !empty && finite && stable && bound_violations == 0 && slice_violations == 0;
  }
};

namespace detail {

inline bool le(double a, double b) { return a <= b * (1.0 + 1e-12) + 1e-12; }

// Checks the bound chain and the slice relation on one accepted sample.
inline void check_exhaustion_chain(const ConfigPoint& z, const ConfigPoint& normalized, double r,
                                   ExhaustionAudit& audit) {
  auto record = [&](bool ok, const std::string& what, int& counter) {
    ++audit.bound_checks;
    if (!ok) {
      ++counter;
      if (audit.violation_notes.size() < 20) audit.violation_notes.push_back(what);
    }
  };
  auto check = [&](bool ok, const std::string& what) { record(ok, what, audit.bound_violations); };
  auto check_slice = [&](bool ok, const std::string& what) {
    record(ok, what, audit.slice_violations);
  };
  const RMatrix x = z.re();
  const RMatrix y = z.im();
  const CMatrix gram = gram_quotient(z).entries();
  const int copies = z.copies();
  std::vector<double> m_single(static_cast<std::size_t>(copies));
  for (int j = 0; j < copies; ++j) {
    const double m = single_copy_bound(gram(j, j));
    m_single[static_cast<std::size_t>(j)] = m;
    const ExhaustionBounds b = exhaustion_bounds(m);
    const double ey = lorentz_eta(y.col(j));
    const double ex = lorentz_eta(x.col(j));
    const double xy = lorentz_dot(x.col(j), y.col(j));
    check(le(ey, b.eta_y_max), "eta(y) chain bound");
    check(le(std::abs(ex), b.eta_x_max), "eta(x) chain bound");
    check(le(std::abs(xy), b.xy_max), "x.y chain bound");
  }
  for (int j = 0; j < copies; ++j) {
    for (int k = j + 1; k < copies; ++k) {
      const double m1 = exhaustion_bounds(std::max(m_single[static_cast<std::size_t>(j)],
                                                   m_single[static_cast<std::size_t>(k)]))
                            .eta_x_max;
      // z_j + z_k is in the tube; eta(z_j + z_k) from the quotient entries.
      const Complex eta_sum = gram(j, j) + gram(k, k) + 2.0 * gram(j, k);
      const double m2 = exhaustion_bounds(single_copy_bound(eta_sum)).eta_x_max;
      const double bound = pair_mixed_max(m1, m2);
      check(le(std::abs(lorentz_dot(x.col(j), x.col(k))), bound), "x_j.x_k pair bound");
      check(le(std::abs(lorentz_dot(y.col(j), y.col(k))), bound), "y_j.y_k pair bound");
    }
  }
  // Normalized first column is t e0 with 1/r <= t^2 <= eta_y_max(M_1).
  const RVector y1 = normalized.im().col(0);
  const double t = y1(0);
  check_slice(y1.tail(y1.size() - 1).cwiseAbs().maxCoeff() <= 1e-9 * std::max(1.0, t),
              "slice: first imaginary column not on the e0 axis");
  check_slice(t > 0.0 && le(1.0 / r, t * t), "slice: t^2 >= 1/r");
  check_slice(le(t * t, exhaustion_bounds(m_single[0]).eta_y_max), "slice: t^2 <= eta_y_max");
}

inline AuditPass run_audit_pass(double gram_bound, double r, int samples, std::uint64_t seed,
                                const AuditOptions& opts, ExhaustionAudit* sink) {
  AuditPass pass;
  pass.samples = samples;
  for (int s = 0; s < samples; ++s) {
    Rng rng(derive_seed(seed, "exhaustion-audit", static_cast<std::uint64_t>(s)));
    const ConfigPoint z = sample_tube_point(rng, opts.n, opts.copies, opts.x_scale, opts.cone);
    if (gram_quotient(z).max_abs() > gram_bound || rho(z) > r) continue;
    ++pass.accepted;
    const auto [g, normalized] = slice_normalize(z);
    const double norm = normalized.matrix().norm();
    pass.supremum = std::max(pass.supremum, norm);
    if (sink) check_exhaustion_chain(z, normalized, r, *sink);
  }
  return pass;
}

}  // namespace detail

// Samples tube points, keeps those with |gram|_max <= gram_bound and
// rho <= r, slice-normalizes them and records the largest Euclidean norm of
// the normalized representative. Repeats with twice the samples to measure
// stability. Every accepted sample is checked against the bound chain.
inline ExhaustionAudit exhaustion_audit(double gram_bound, double r, int samples,
                                        std::uint64_t seed, const AuditOptions& opts = {}) {
  if (!(r > 0.0) || !(gram_bound > 0.0) || samples < 1) {
    throw DomainError("exhaustion_audit: need r > 0, gram_bound > 0, samples >= 1");
  }
  ExhaustionAudit audit;
  audit.gram_bound = gram_bound;
  audit.r = r;
  // The doubled pass is a superset of the base pass (same per-sample seeds).
  audit.doubled = detail::run_audit_pass(gram_bound, r, 2 * samples, seed, opts, &audit);
  audit.base = detail::run_audit_pass(gram_bound, r, samples, seed, opts, nullptr);
  audit.empty = audit.base.accepted == 0;
  audit.finite = std::isfinite(audit.doubled.supremum);
  if (!audit.empty && audit.base.supremum > 0.0) {
    audit.relative_change =
        std::abs(audit.doubled.supremum - audit.base.supremum) / audit.base.supremum;
    audit.stable = audit.relative_change < 0.2;
  }
  return audit;
}

}  // namespace ltk
