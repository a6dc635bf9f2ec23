#pragma once

// Orbit connectedness through the Cartan subgroups: membership in
// Sigma(w) = {g : g w in T^N}, the explicit path from the identity to any
// h in Sigma_{H_I}(w) built by straight-line interpolation in parameter space
// followed by blockwise renormalization, and the two monotonicity properties
// the path argument rests on.

#include "ltk/lorentz_group.hpp"
#include "ltk/minkowski.hpp"
#include "ltk/random.hpp"
#include "ltk/sampling.hpp"
#include "ltk/types.hpp"

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace ltk {

inline bool sigma_contains(const GroupElement& g, const ConfigPoint& w, const Tolerance& tol = {}) {
  return in_future_tube(apply(g, w), tol);
}

// p -> Im(psi(p) w_k). Linear for H0; for H1 and H2 the fixed unit
// coordinate adds a constant, so the map is affine.
inline RVector phi_tilde(CartanVariant v, const RVector& p, const MinkowskiVector& wk) {
  const int n = wk.dim_n();
  return (cartan_linear_matrix(v, n, p) * wk.coords()).imag();
}

struct PathSample {
  double t = 0.0;
  CartanParams params;
  GroupElement element;
};

struct CartanPath {
  CartanVariant variant = CartanVariant::H0;
  CartanParams start_params;
  CartanParams end_params;
  int sample_count = 0;
  std::vector<PathSample> samples;
};

inline constexpr int kDefaultPathSamples = 64;
inline constexpr double kPathConstraintTol = 1e-9;

// Normalizes q blockwise: the circle pair by its Euclidean norm, each
// hyperbolic pair by sqrt(c^2 - d^2).
inline RVector normalize_cartan_params(CartanVariant v, RVector q, double tol, double t) {
  Eigen::Index k = 0;
  if (v != CartanVariant::H2) {
    const double norm = q.head(2).norm();
    if (norm <= tol) {
      throw DegenerateInputError("cartan_path: circle block vanishes at t = " + std::to_string(t));
    }
    q.head(2) /= norm;
    k = 2;
  }
  for (; k + 1 < q.size(); k += 2) {
    const double c = q(k), d = q(k + 1);
    const double e = c * c - d * d;
    if (e <= tol) {
      throw DegenerateInputError("cartan_path: hyperbolic block degenerates at t = " +
                                 std::to_string(t));
    }
    q.segment(k, 2) /= std::sqrt(e);
  }
  return q;
}

inline CartanPath cartan_path(CartanVariant variant, const CartanParams& end_params,
                              const ConfigPoint& w, int sample_count = kDefaultPathSamples,
                              const Tolerance& tol = {}) {
  if (sample_count < 2) throw PreconditionError("cartan_path: need at least 2 samples");
  if (end_params.variant != variant) throw PreconditionError("cartan_path: variant mismatch");
  const int n = w.dim_n();
  const GroupElement h = cartan_element(end_params, n);
  if (!in_future_tube(w, tol)) throw PreconditionError("cartan_path: w is not in the tube");
  if (!sigma_contains(h, w, tol)) {
    throw PreconditionError("cartan_path: end element does not map w into the tube");
  }
  CartanPath path;
  path.variant = variant;
  path.start_params = cartan_identity_params(variant, n);
  path.end_params = end_params;
  path.sample_count = sample_count;
  const RVector e = path.start_params.flat();
  const RVector p = end_params.flat();
  for (int i = 0; i < sample_count; ++i) {
    const double t = static_cast<double>(i) / (sample_count - 1);
    const RVector q = normalize_cartan_params(variant, e + t * (p - e), tol.abs_tol, t);
    const CartanParams params = CartanParams::from_flat(variant, q);
    validate_cartan_params(params, n, kPathConstraintTol);
    GroupElement g = validate_group(cartan_linear_matrix(variant, n, q));
    if (!sigma_contains(g, w, tol)) {
      throw ContainmentError("cartan_path: sample at t = " + std::to_string(t) +
                             " leaves Sigma(w)");
    }
    path.samples.push_back({t, params, std::move(g)});
  }
  return path;
}

struct MonotonicityOptions {
  // Negative control: enlarge hyperbolic pairs (r > 1) instead of shrinking.
  bool flip_shrink = false;
  int random_extra = 16;
};

struct MonotonicityReport {
  int checks = 0;
  int violations = 0;
  std::vector<std::string> notes;
};

inline MonotonicityReport hi_monotonicity_check(CartanVariant variant, const CartanParams& params,
                                                const ConfigPoint& w, std::uint64_t seed,
                                                const MonotonicityOptions& opts = {}) {
  const int n = w.dim_n();
  const GroupElement h = cartan_element(params, n);
  if (!sigma_contains(h, w)) {
    throw PreconditionError("hi_monotonicity_check: element does not map w into the tube");
  }
  Rng rng(derive_seed(seed, "hi-monotonicity", 0));
  MonotonicityReport rep;
  const RVector p = params.flat();
  auto probe = [&](const RVector& q, const std::string& what) {
    ++rep.checks;
    const ConfigPoint moved(cartan_linear_matrix(variant, n, q) * w.matrix());
    if (!in_future_tube(moved)) {
      ++rep.violations;
      if (rep.notes.size() < 20) rep.notes.push_back(what);
    }
  };

  std::vector<double> rs;
  for (int i = 1; i <= 10; ++i) rs.push_back(opts.flip_shrink ? 1.0 / (0.1 * i) : 0.1 * i);
  for (int i = 0; i < opts.random_extra; ++i) {
    const double r = rng.uniform(1e-3, 1.0);
    rs.push_back(opts.flip_shrink ? 1.0 / r : r);
  }
  const Eigen::Index first = variant == CartanVariant::H2 ? 0 : 2;
  for (Eigen::Index k = first; k + 1 < p.size(); k += 2) {
    for (double r : rs) {
      RVector q = p;
      q.segment(k, 2) *= r;
      probe(q, "hyperbolic pair " + std::to_string(k / 2) + " scaled by " + std::to_string(r));
    }
  }
  if (variant != CartanVariant::H2) {
    std::vector<double> ss;
    for (int i = 0; i <= 6; ++i) ss.push_back(1.0 + 0.5 * i);
    for (int i = 0; i < opts.random_extra; ++i) ss.push_back(rng.uniform(1.0, 4.0));
    for (double s : ss) {
      RVector q = p;
      q.head(2) *= s;
      probe(q, "circle pair scaled by " + std::to_string(s));
    }
  }
  return rep;
}

// Random H_I parameters. Circle angle uniform in [-angle, angle]; hyperbolic
// rapidities uniform in [-rapidity, rapidity].
inline CartanParams sample_cartan_params(Rng& rng, CartanVariant v, int n, double angle = 1.0,
                                         double rapidity = 1.0) {
  CartanParams p;
  p.variant = v;
  if (v != CartanVariant::H2) {
    const double th = rng.uniform(-angle, angle);
    p.circle = std::make_pair(std::cos(th), std::sin(th));
  }
  const std::size_t count = cartan_hyperbola_count(v, n);
  for (std::size_t j = 0; j < count; ++j) {
    const double phi = rng.uniform(-rapidity, rapidity);
    p.hyperbolas.emplace_back(std::cosh(phi), std::sinh(phi));
  }
  return p;
}

struct ConformingPair {
  CartanParams params;
  ConfigPoint w;
};

// (h, w) with w and h w both in the tube, by rejection.
inline ConformingPair sample_conforming_pair(Rng& rng, CartanVariant v, int n, int copies) {
  for (int attempt = 0; attempt < 100000; ++attempt) {
    ConfigPoint w = sample_tube_point(rng, n, copies, 1.0);
    CartanParams params = sample_cartan_params(rng, v, n);
    if (sigma_contains(cartan_element(params, n), w)) return {params, w};
  }
  throw std::runtime_error("sample_conforming_pair: rejection sampling exhausted");
}

}  // namespace ltk
