#pragma once

// Named verification suites. Each suite draws its cases from seeds derived
// from (master seed, suite name, case index), evaluates them on a small
// worker pool and reports aggregated checks in case order, so the report is
// independent of the number of workers. Inputs of failing cases are attached
// for replay.

#include "ltk/io.hpp"
#include "ltk/kaehler.hpp"
#include "ltk/lorentz_group.hpp"
#include "ltk/minkowski.hpp"
#include "ltk/orbit_connect.hpp"
#include "ltk/quotient.hpp"
#include "ltk/random.hpp"
#include "ltk/sampling.hpp"
#include "ltk/types.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace ltk {

struct RunConfig {
  std::uint64_t seed = 7;
  Tolerance tol;
  int samples = 0;  // 0: the suite's own default
  int n = 0;        // 0: drawn per case
  int copies = 0;   // 0: drawn per case
  int threads = 0;  // 0: LTK_THREADS, else hardware concurrency
};

struct Check {
  std::string id;
  std::string name;
  std::string relation;  // measured <relation> threshold is the pass condition
  double measured = 0.0;
  double threshold = 0.0;
  int cases = 0;
  int failures = 0;
  bool passed = false;
};

struct SuiteReport {
  std::string suite;
  std::vector<Check> checks;
  std::vector<json> failures;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
  }
  const Check* find(const std::string& id) const {
    for (const auto& c : checks) {
      if (c.id == id) return &c;
    }
    return nullptr;
  }
};

inline json to_json(const Check& c) {
  auto num = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
  return json{{"id", c.id},          {"name", c.name},         {"passed", c.passed},
              {"measured", num(c.measured)}, {"relation", c.relation}, {"threshold", num(c.threshold)},
              {"cases", c.cases},    {"failures", c.failures}};
}

inline json to_json(const SuiteReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  return json{{"suite", r.suite}, {"passed", r.passed()}, {"checks", checks}, {"failures", r.failures}};
}

inline constexpr std::size_t kMaxFailureArtifacts = 20;

inline int worker_count(const RunConfig& cfg) {
  int cap = static_cast<int>(std::thread::hardware_concurrency());
  if (cap < 1) cap = 1;
  if (const char* env = std::getenv("LTK_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) cap = std::min(cap, v);
  }
  if (cfg.threads >= 1) cap = std::min(cap, cfg.threads);
  return std::max(cap, 1);
}

// results[k] = fn(k), computed on up to worker_count(cfg) threads.
template <class F>
auto run_cases(int count, const RunConfig& cfg, F fn) -> std::vector<decltype(fn(0))> {
  using R = decltype(fn(0));
  std::vector<std::optional<R>> slots(static_cast<std::size_t>(count));
  const int workers = std::min(worker_count(cfg), std::max(count, 1));
  std::atomic<int> next{0};
  auto work = [&]() {
    for (int k = next++; k < count; k = next++) slots[static_cast<std::size_t>(k)] = fn(k);
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  std::vector<R> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

namespace suite_detail {

inline int pick(int configured, Rng& rng, int lo, int hi) {
  return configured > 0 ? configured : rng.uniform_int(lo, hi);
}

inline int samples_or(const RunConfig& cfg, int fallback) {
  return cfg.samples > 0 ? cfg.samples : fallback;
}

// Pass iff every value <= threshold; measured is the largest value.
inline Check max_check(std::string id, std::string name, const std::vector<double>& values,
                       double threshold) {
  Check c{std::move(id), std::move(name), "<=", -std::numeric_limits<double>::infinity(),
          threshold, static_cast<int>(values.size()), 0, false};
  for (double v : values) {
    if (!(v <= threshold)) ++c.failures;
    if (std::isnan(v) || v > c.measured) c.measured = std::isnan(c.measured) ? c.measured : v;
  }
  if (values.empty()) c.measured = 0.0;
  c.passed = c.failures == 0 && !values.empty();
  return c;
}

// Pass iff every value > threshold (strict) or >= threshold.
inline Check min_check(std::string id, std::string name, const std::vector<double>& values,
                       double threshold, bool strict) {
  Check c{std::move(id), std::move(name), strict ? ">" : ">=",
          std::numeric_limits<double>::infinity(), threshold, static_cast<int>(values.size()), 0,
          false};
  for (double v : values) {
    const bool ok = strict ? v > threshold : v >= threshold;
    if (!ok) ++c.failures;
    if (std::isnan(v) || v < c.measured) c.measured = std::isnan(c.measured) ? c.measured : v;
  }
  if (values.empty()) c.measured = 0.0;
  c.passed = c.failures == 0 && !values.empty();
  return c;
}

// Pass iff no case failed; measured is the failure count.
inline Check count_check(std::string id, std::string name, const std::vector<bool>& oks) {
  Check c{std::move(id), std::move(name), "==", 0.0, 0.0, static_cast<int>(oks.size()), 0, false};
  for (bool ok : oks) {
    if (!ok) ++c.failures;
  }
  c.measured = c.failures;
  c.passed = c.failures == 0 && !oks.empty();
  return c;
}

// Pass iff the fraction of successes is >= min_rate.
inline Check rate_check(std::string id, std::string name, const std::vector<bool>& oks,
                        double min_rate) {
  Check c{std::move(id), std::move(name), ">=", 0.0, min_rate, static_cast<int>(oks.size()), 0,
          false};
  for (bool ok : oks) {
    if (!ok) ++c.failures;
  }
  c.measured = oks.empty() ? 0.0 : 1.0 - static_cast<double>(c.failures) / oks.size();
  c.passed = !oks.empty() && c.measured >= min_rate;
  return c;
}

inline void add_artifact(SuiteReport& rep, json artifact) {
  if (rep.failures.size() < kMaxFailureArtifacts) rep.failures.push_back(std::move(artifact));
}

inline json vector_json(const RVector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

inline ConfigPoint worked_example() {
  CMatrix z = CMatrix::Zero(3, 2);
  z(0, 0) = Complex(0.0, 2.0);
  z(1, 0) = 1.0;
  z(2, 0) = kI;
  z(0, 1) = kI;
  return ConfigPoint(z);
}

// Planted-radical family shared by the closed-orbit and degeneration suites.
inline PlantedCase planted_family_case(const RunConfig& cfg, int k, int max_rank, int offset,
                                       const char* stream) {
  Rng rng(derive_seed(cfg.seed, stream, static_cast<std::uint64_t>(k)));
  const int n = cfg.n >= 2 ? cfg.n : 4;
  const int cap = std::min(max_rank, n / 2);
  const int planted = offset + k % (cap - offset + 1);
  return make_planted_case(rng, n, planted, 0.1);
}

}  // namespace suite_detail

// ---------------------------------------------------------------------------

inline constexpr double kCsRandomFloor = -1e-12;
inline constexpr double kCsDependentFactor = 1e-10;

inline SuiteReport suite_cauchy_schwarz(const RunConfig& cfg) {
  using namespace suite_detail;
  SuiteReport rep{"cauchy-schwarz", {}, {}};
  const int samples = samples_or(cfg, 100000);
  struct Case {
    double defect;
    json input;
  };
  const auto random = run_cases(samples, cfg, [&](int k) {
    Rng rng(derive_seed(cfg.seed, "cauchy-schwarz", static_cast<std::uint64_t>(k)));
    const int n = pick(cfg.n, rng, 1, 4);
    RVector x(n + 1);
    for (int i = 0; i <= n; ++i) x(i) = rng.uniform(-1.0, 1.0);
    const RVector y = sample_cone_vector(rng, n);
    const double d = cauchy_schwarz_defect(MinkowskiVector::real(x), MinkowskiVector::real(y));
    json input;
    if (!(d >= kCsRandomFloor)) input = json{{"case", k}, {"x", vector_json(x)}, {"y", vector_json(y)}};
    return Case{d, input};
  });
  const int dependent = 1000;
  const auto dep = run_cases(dependent, cfg, [&](int k) {
    Rng rng(derive_seed(cfg.seed, "cauchy-schwarz-dependent", static_cast<std::uint64_t>(k)));
    const int n = pick(cfg.n, rng, 1, 4);
    const double scale = rng.log_uniform(0.1, 10.0);
    const RVector y = scale * sample_cone_vector(rng, n);
    const RVector x = rng.uniform(-2.0, 2.0) * y;
    const double s = std::max(x.cwiseAbs().maxCoeff(), y.cwiseAbs().maxCoeff());
    const double d = cauchy_schwarz_defect(MinkowskiVector::real(x), MinkowskiVector::real(y));
    const double ratio = std::abs(d) / (kCsDependentFactor * std::pow(s, 4));
    json input;
    if (!(ratio <= 1.0)) input = json{{"case", k}, {"x", vector_json(x)}, {"y", vector_json(y)}};
    return Case{ratio, input};
  });
  std::vector<double> defects, ratios;
  for (const auto& c : random) {
    defects.push_back(c.defect);
    if (!c.input.is_null()) add_artifact(rep, c.input);
  }
  for (const auto& c : dep) {
    ratios.push_back(c.defect);
    if (!c.input.is_null()) add_artifact(rep, c.input);
  }
  rep.checks.push_back(min_check("cs-random", "defect of random pairs with eta(y) > 0", defects,
                                 kCsRandomFloor, false));
  rep.checks.push_back(max_check("cs-dependent",
                                 "|defect| / (1e-10 scale^4) for dependent pairs x = l y", ratios,
                                 1.0));
  return rep;
}

// ---------------------------------------------------------------------------

inline SuiteReport suite_invariance(const RunConfig& cfg) {
  using namespace suite_detail;
  SuiteReport rep{"invariance", {}, {}};
  const int samples = samples_or(cfg, 1000);
  struct Case {
    double ratio;
    bool rank_ok;
    json input;
  };
  const auto cases = run_cases(samples, cfg, [&](int k) {
    Rng rng(derive_seed(cfg.seed, "invariance", static_cast<std::uint64_t>(k)));
    const int n = pick(cfg.n, rng, 1, 4);
    const int copies = pick(cfg.copies, rng, 1, 5);
    const ConfigPoint z = sample_complex_point(rng, n, copies, 1.0);
    const double scale = rng.uniform(0.05, 1.0);
    const GroupElement g = random_group_element(n, rng.bits(), scale, Realness::complex);
    const GramMatrix before = gram_quotient(z);
    const GramMatrix after = gram_quotient(apply(g, z));
    const double err = (after.entries() - before.entries()).cwiseAbs().maxCoeff();
    const double ratio = err / (1e-9 * before.max_abs() + 1e-12);
    const int bound = std::min(n + 1, copies);
    const bool rank_ok = numeric_rank(before.entries(), cfg.tol) <= bound &&
                         numeric_rank(after.entries(), cfg.tol) <= bound;
    json input;
    if (!(ratio <= 1.0) || !rank_ok) input = json{{"case", k}, {"z", to_json(z)}, {"g", to_json(g)}};
    return Case{ratio, rank_ok, input};
  });
  std::vector<double> ratios;
  std::vector<bool> ranks;
  for (const auto& c : cases) {
    ratios.push_back(c.ratio);
    ranks.push_back(c.rank_ok);
    if (!c.input.is_null()) add_artifact(rep, c.input);
  }
  rep.checks.push_back(max_check(
      "quotient-invariance", "|pi(g z) - pi(z)|_max / (1e-9 |pi(z)|_max + 1e-12)", ratios, 1.0));
  rep.checks.push_back(count_check("rank-bound", "rank pi(z) <= min(1+n, N)", ranks));

  const auto stab = run_cases(500, cfg, [&](int k) {
    Rng rng(derive_seed(cfg.seed, "tube-stability", static_cast<std::uint64_t>(k)));
    const int n = pick(cfg.n, rng, 1, 4);
    const int copies = pick(cfg.copies, rng, 1, 5);
    const ConfigPoint z = sample_tube_point(rng, n, copies);
    const GroupElement g = random_group_element(n, rng.bits(), 1.0, Realness::real0);
    const ConfigPoint gz = apply(g, z);
    const bool ok = in_future_tube(gz) && std::abs(rho(gz) - rho(z)) <= 1e-10 * rho(z);
    return ok;
  });
  rep.checks.push_back(count_check("tube-stability",
                                   "real SO0 elements keep T^N and rho (1e-10 relative)", stab));
  return rep;
}

// ---------------------------------------------------------------------------

inline constexpr double kRadicalSignTol = -1e-6;

inline SuiteReport suite_radical_lemmas(const RunConfig& cfg) {
  using namespace suite_detail;
  SuiteReport rep{"radical-lemmas", {}, {}};
  const int samples = samples_or(cfg, 500);
  struct Case {
    bool dim_ok, verdict_ok, no_warning;
    json input;
  };
  const auto fam = run_cases(samples, cfg, [&](int k) {
    const PlantedCase pc = planted_family_case(cfg, k, 2, 0, "planted-family");
    const RadicalResult rad = radical_basis_info(pc.z, cfg.tol);
    const ClosedOrbitVerdict v = is_orbit_closed(pc.z, cfg.tol);
    Case c{rad.dimension() == pc.planted_dim, v.closed == (pc.planted_dim == 0),
           !rad.warning && !v.warning, json()};
    if (!c.dim_ok || !c.verdict_ok || !c.no_warning) {
      c.input = json{{"case", k}, {"planted_dim", pc.planted_dim}, {"found_dim", rad.dimension()},
                     {"z", to_json(pc.z)}};
    }
    return c;
  });
  std::vector<bool> dims, verdicts, warnings;
  for (const auto& c : fam) {
    dims.push_back(c.dim_ok);
    verdicts.push_back(c.verdict_ok);
    warnings.push_back(c.no_warning);
    if (!c.input.is_null()) add_artifact(rep, c.input);
  }
  rep.checks.push_back(count_check("radical-dimension", "radical size equals planted dimension", dims));
  rep.checks.push_back(count_check("closed-verdict", "is_orbit_closed agrees with planting", verdicts));
  rep.checks.push_back(count_check("rank-warnings", "no rank-decision warnings at margin 0.1", warnings));

  struct SignCase {
    double eta_im, pairing;
    json input;
  };
  const auto signs = run_cases(samples, cfg, [&](int k) {
    const PlantedCase pc = planted_family_case(cfg, k, 2, 1, "planted-radical");
    const RadicalResult rad = radical_basis_info(pc.z, cfg.tol);
    Rng rng(derive_seed(cfg.seed, "radical-combinations", static_cast<std::uint64_t>(k)));
    std::vector<CVector> probes;
    for (Eigen::Index b = 0; b < rad.basis.cols(); ++b) probes.emplace_back(rad.basis.col(b));
    for (int t = 0; t < 8 && rad.basis.cols() > 0; ++t) {
      CVector c(rad.basis.cols());
      for (Eigen::Index b = 0; b < c.size(); ++b) c(b) = Complex(rng.normal(), rng.normal());
      CVector r = rad.basis * c;
      probes.emplace_back(r / r.norm());
    }
    double worst_eta = -std::numeric_limits<double>::infinity();
    double worst_pair = -std::numeric_limits<double>::infinity();
    for (const auto& r : probes) {
      worst_eta = std::max(worst_eta, lorentz_eta(RVector(r.imag())));
      worst_pair = std::max(worst_pair, lorentz_dot(r, CVector(r.conjugate())).real());
    }
    if (probes.empty()) worst_eta = worst_pair = std::numeric_limits<double>::quiet_NaN();
    json input;
    if (!(worst_eta < kRadicalSignTol) || !(worst_pair < kRadicalSignTol)) {
      input = json{{"case", k}, {"z", to_json(pc.z)}};
    }
    return SignCase{worst_eta, worst_pair, input};
  });
  std::vector<double> etas, pairs;
  for (const auto& c : signs) {
    etas.push_back(-c.eta_im);
    pairs.push_back(-c.pairing);
    if (!c.input.is_null()) add_artifact(rep, c.input);
  }
  // Stored negated so that min_check expresses "value < -1e-6".
  Check eta_check = min_check("radical-eta-im", "-eta(Im r) for unit radical vectors", etas,
                              -kRadicalSignTol, true);
  Check pair_check = min_check("radical-pairing", "-(r . conj r) for unit radical vectors", pairs,
                               -kRadicalSignTol, true);
  rep.checks.push_back(eta_check);
  rep.checks.push_back(pair_check);
  return rep;
}

// ---------------------------------------------------------------------------

inline SuiteReport suite_degeneration(const RunConfig& cfg) {
  using namespace suite_detail;
  SuiteReport rep{"degeneration", {}, {}};
  const int samples = samples_or(cfg, 500);
  const std::vector<double> ts{-1.0, -0.5, 0.0, 0.5, 1.0};
  const std::vector<double> ts_wide{-2.0, 2.0};
  struct Case {
    double gram_ratio, recon, identity;
    bool rho_drop, closed, curve, curve_wide, concave;
    json input;
  };
  const auto cases = run_cases(samples, cfg, [&](int k) {
    const PlantedCase pc = planted_family_case(cfg, k, 2, 0, "planted-family");
    const IsotropicSplit split = isotropic_split(pc.z, cfg.tol);
    const ConfigPoint& u = split.u_part;
    Case c{};
    const GramMatrix gz = gram_quotient(pc.z);
    const GramMatrix gu = gram_quotient(u);
    c.gram_ratio = (gu.entries() - gz.entries()).cwiseAbs().maxCoeff() / (1e-8 * gz.max_abs());
    const double zscale = pc.z.matrix().cwiseAbs().maxCoeff();
    c.recon = (u.matrix() + split.omega_part.matrix() - pc.z.matrix()).cwiseAbs().maxCoeff() /
              (1e-9 * zscale);
    c.rho_drop = split.radical_dimension() == 0 || (in_future_tube(u) && rho(u) < rho(pc.z));
    c.closed = is_orbit_closed(u, cfg.tol).closed;
    c.curve = true;
    for (double t : ts) c.curve = c.curve && in_future_tube(gamma_scale(split, t));
    c.curve_wide = true;
    for (double t : ts_wide) c.curve_wide = c.curve_wide && in_future_tube(gamma_scale(split, t));
    // eta(Im(u + t w)) = eta(Im u) + t^2 eta(Im w), and strict concavity in t.
    c.identity = 0.0;
    c.concave = true;
    const RMatrix yu = u.im();
    const RMatrix yw = split.omega_part.im();
    for (int j = 0; j < pc.z.copies(); ++j) {
      const double a = lorentz_eta(RVector(yu.col(j)));
      const double b = lorentz_eta(RVector(yw.col(j)));
      const double s = std::max(1.0, yu.col(j).squaredNorm() + yw.col(j).squaredNorm());
      std::vector<double> f;
      for (int i = 0; i <= 10; ++i) {
        const double t = -2.0 + 0.4 * i;
        const double e = lorentz_eta(RVector(yu.col(j) + t * yw.col(j)));
        c.identity = std::max(c.identity, std::abs(e - (a + t * t * b)) / (1e-9 * s * (1 + t * t)));
        f.push_back(e);
      }
      if (yw.col(j).norm() > 1e-8 * std::max(1.0, yu.col(j).norm())) {
        for (std::size_t i = 1; i + 1 < f.size(); ++i) {
          const double second = f[i + 1] - 2.0 * f[i] + f[i - 1];
          if (!(second < -1e-12 * s)) c.concave = false;
        }
      }
    }
    if (!(c.gram_ratio <= 1.0) || !(c.recon <= 1.0) || !(c.identity <= 1.0) || !c.rho_drop ||
        !c.closed || !c.curve || !c.curve_wide || !c.concave) {
      c.input = json{{"case", k}, {"planted_dim", pc.planted_dim}, {"z", to_json(pc.z)}};
    }
    return c;
  });
  std::vector<double> grams, recons, ids;
  std::vector<bool> drops, closeds, curves, curves_wide, concaves;
  for (const auto& c : cases) {
    grams.push_back(c.gram_ratio);
    recons.push_back(c.recon);
    ids.push_back(c.identity);
    drops.push_back(c.rho_drop);
    closeds.push_back(c.closed);
    curves.push_back(c.curve);
    curves_wide.push_back(c.curve_wide);
    concaves.push_back(c.concave);
    if (!c.input.is_null()) add_artifact(rep, c.input);
  }
  rep.checks.push_back(
      max_check("gram-preserved", "|pi(u) - pi(z)|_max / (1e-8 |pi(z)|_max)", grams, 1.0));
  rep.checks.push_back(count_check("rho-drop", "rho(u) < rho(z) when the radical is nonempty", drops));
  rep.checks.push_back(count_check("u-closed", "closed-orbit representative is closed", closeds));
  rep.checks.push_back(count_check("gamma-curve", "u + t w in T^N for t in {+-1, +-0.5, 0}", curves));
  rep.checks.push_back(count_check("gamma-curve-wide", "u + t w in T^N for t = +-2", curves_wide));
  rep.checks.push_back(max_check("reconstruction", "|u + w - z|_max / (1e-9 |z|_max)", recons, 1.0));
  rep.checks.push_back(max_check("degeneration-identity",
                                 "eta(Im(u + t w)) vs eta(Im u) + t^2 eta(Im w), in units of 1e-9",
                                 ids, 1.0));
  rep.checks.push_back(count_check("concavity", "t -> eta(Im(u + t w)) strictly concave", concaves));

  const ConfigPoint ex = worked_example();
  const IsotropicSplit ex_split = isotropic_split(ex, cfg.tol);
  const double rho_z = rho(ex);
  const double rho_u = rho(ex_split.u_part);
  rep.checks.push_back(max_check("worked-rho-z", "|rho(z) - 4/3| on the worked example",
                                 {std::abs(rho_z - 4.0 / 3.0)}, 1e-9));
  rep.checks.push_back(max_check("worked-rho-u", "|rho(u) - 5/4| on the worked example",
                                 {std::abs(rho_u - 5.0 / 4.0)}, 1e-9));
  return rep;
}

// ---------------------------------------------------------------------------

// rho(exp(i t xi) z) differentiated at t = 0 by Richardson-extrapolated
// central differences.
inline double moment_fd(const ConfigPoint& z, const RMatrix& xi, double h) {
  auto f = [&](double t) {
    const CMatrix g = matrix_exp(Complex(0.0, t) * xi.cast<Complex>());
    return rho(ConfigPoint(g * z.matrix()));
  };
  const double d1 = (f(h) - f(-h)) / (2.0 * h);
  const double d2 = (f(0.5 * h) - f(-0.5 * h)) / h;
  return (4.0 * d2 - d1) / 3.0;
}

inline SuiteReport suite_moment_fd(const RunConfig& cfg) {
  using namespace suite_detail;
  SuiteReport rep{"moment-fd", {}, {}};
  const int samples = samples_or(cfg, 200);
  struct Case {
    double rel;
    json input;
  };
  const auto cases = run_cases(samples, cfg, [&](int k) {
    Rng rng(derive_seed(cfg.seed, "moment-fd", static_cast<std::uint64_t>(k)));
    const int n = pick(cfg.n, rng, 1, 4);
    const int copies = pick(cfg.copies, rng, 1, 5);
    const ConfigPoint z = sample_tube_point(rng, n, copies);
    const MomentValue mu = moment_map(z);
    const auto basis = algebra_basis(n);
    // Step small against the distance to the cone boundary.
    double h = 1e-3;
    const RMatrix y = z.im();
    for (int j = 0; j < copies; ++j) {
      const double e = lorentz_eta(RVector(y.col(j)));
      h = std::min(h, 1e-2 * e / std::max(1.0, z.matrix().col(j).squaredNorm()));
    }
    RVector fd(mu.coefficients.size());
    for (std::size_t a = 0; a < basis.size(); ++a) {
      fd(static_cast<Eigen::Index>(a)) = moment_fd(z, basis[a].matrix().real(), h);
    }
    const double denom = std::max(mu.coefficients.cwiseAbs().maxCoeff(), 1e-8 * rho(z));
    const double rel = (fd - mu.coefficients).cwiseAbs().maxCoeff() / denom;
    json input;
    if (!(rel <= 1e-6)) input = json{{"case", k}, {"z", to_json(z)}, {"relative_error", rel}};
    return Case{rel, input};
  });
  std::vector<double> rels;
  for (const auto& c : cases) {
    rels.push_back(c.rel);
    if (!c.input.is_null()) add_artifact(rep, c.input);
  }
  rep.checks.push_back(max_check("moment-fd", "analytic vs finite-difference moment map (relative)",
                                 rels, 1e-6));

  const auto zeros = run_cases(100, cfg, [&](int k) {
    Rng rng(derive_seed(cfg.seed, "moment-zero", static_cast<std::uint64_t>(k)));
    const int n = pick(cfg.n, rng, 1, 4);
    const int copies = pick(cfg.copies, rng, 1, 5);
    const ConfigPoint z = sample_imaginary_tube_point(rng, n, copies);
    return moment_map(z).coefficients.cwiseAbs().maxCoeff();
  });
  rep.checks.push_back(max_check("moment-zero", "|mu|_max at purely imaginary points", zeros, 0.0));
  return rep;
}

// ---------------------------------------------------------------------------

inline SuiteReport suite_levi(const RunConfig& cfg) {
  using namespace suite_detail;
  SuiteReport rep{"levi", {}, {}};
  const int samples = samples_or(cfg, 200);
  struct Case {
    double min_eig;
    json input;
  };
  const auto cases = run_cases(samples, cfg, [&](int k) {
    Rng rng(derive_seed(cfg.seed, "levi", static_cast<std::uint64_t>(k)));
    const int n = pick(cfg.n, rng, 1, 4);
    const int copies = pick(cfg.copies, rng, 1, 5);
    const ConfigPoint z = sample_tube_point(rng, n, copies);
    const double m = levi_min_eigenvalue(z);
    json input;
    if (!(m > 0.0)) input = json{{"case", k}, {"z", to_json(z)}};
    return Case{m, input};
  });
  std::vector<double> mins;
  for (const auto& c : cases) {
    mins.push_back(c.min_eig);
    if (!c.input.is_null()) add_artifact(rep, c.input);
  }
  rep.checks.push_back(min_check("levi-positive", "minimum Levi eigenvalue", mins, 0.0, true));

  CMatrix e0 = CMatrix::Zero(3, 1);
  e0(0, 0) = kI;
  const RVector eig = levi_eigenvalues(ConfigPoint(e0));
  RVector expected(3);
  expected << 0.5, 0.5, 1.5;
  rep.checks.push_back(max_check("levi-worked", "eigenvalues at i e0 (n=2) vs {0.5, 0.5, 1.5}",
                                 {(eig - expected).cwiseAbs().maxCoeff()}, 1e-10));
  return rep;
}

// ---------------------------------------------------------------------------

inline constexpr double kReductionRhoTol = 1e-5;

inline SuiteReport suite_reduction(const RunConfig& cfg) {
  using namespace suite_detail;
  SuiteReport rep{"reduction", {}, {}};
  const int samples = samples_or(cfg, 50);
  struct Case {
    bool converged, monotone, consistent;
    double mu, drho;
    json input;
  };
  const auto cases = run_cases(samples, cfg, [&](int k) {
    Rng rng(derive_seed(cfg.seed, "reduction", static_cast<std::uint64_t>(k)));
    const int n = pick(cfg.n, rng, 1, 4);
    const int copies = pick(cfg.copies, rng, 1, 5);
    const ConfigPoint z0 = sample_imaginary_tube_point(rng, n, copies);
    const Realness realness = rng.uniform() < 0.5 ? Realness::real0 : Realness::complex;
    // Complex elements may leave the tube; redraw (scale uniform in (0, 0.5])
    // until g z0 is in T^N.
    GroupElement g = GroupElement::identity(n);
    ConfigPoint z = z0;
    for (int attempt = 0; attempt < 1000; ++attempt) {
      const double scale = 0.5 * (1.0 - rng.uniform());
      g = random_group_element(n, rng.bits(), scale, realness);
      z = apply(g, z0);
      if (in_future_tube(z)) break;
    }
    Case c{};
    if (!in_future_tube(z)) {
      c.input = json{{"case", k}, {"error", "no tube-preserving element drawn"}, {"z0", to_json(z0)}};
      c.drho = c.mu = std::numeric_limits<double>::infinity();
      return c;
    }
    const FlowResult fr = minimize_rho_on_orbit(z);
    c.converged = fr.converged;
    c.mu = fr.trace.back().moment_norm;
    c.drho = std::abs(fr.trace.back().rho - rho(z0));
    c.monotone = true;
    for (std::size_t i = 1; i < fr.trace.size(); ++i) {
      c.monotone = c.monotone && fr.trace[i].change < 0.0 && fr.trace[i].rho <= fr.trace[i - 1].rho;
    }
    const double scale = z.matrix().cwiseAbs().maxCoeff();
    c.consistent = in_future_tube(fr.final_point) && fr.accumulated_group.valid() &&
                   (fr.accumulated_group.matrix() * z.matrix() - fr.final_point.matrix())
                           .cwiseAbs()
                           .maxCoeff() <= 1e-8 * std::max(1.0, scale) *
                                              fr.accumulated_group.matrix().cwiseAbs().maxCoeff();
    if (!c.converged || !(c.drho <= kReductionRhoTol) || !c.monotone || !c.consistent) {
      c.input = json{{"case", k}, {"z0", to_json(z0)}, {"g", to_json(g)},
                     {"diagnostic", fr.diagnostic}};
    }
    return c;
  });
  std::vector<bool> conv, mono, cons;
  std::vector<double> mus, drhos;
  for (const auto& c : cases) {
    conv.push_back(c.converged);
    mono.push_back(c.monotone);
    cons.push_back(c.consistent);
    mus.push_back(c.mu);
    drhos.push_back(c.drho);
    if (!c.input.is_null()) add_artifact(rep, c.input);
  }
  rep.checks.push_back(count_check("flow-converged", "flow reports convergence", conv));
  rep.checks.push_back(max_check("flow-moment", "final moment norm", mus, 1e-6));
  rep.checks.push_back(max_check("flow-rho", "|rho_final - rho(z0)|", drhos, kReductionRhoTol));
  rep.checks.push_back(count_check("flow-monotone", "trace rho strictly decreasing", mono));
  rep.checks.push_back(count_check("flow-group", "accumulated group maps start to final point", cons));
  return rep;
}

// ---------------------------------------------------------------------------

inline SuiteReport suite_membership(const RunConfig& cfg) {
  using namespace suite_detail;
  SuiteReport rep{"membership", {}, {}};
  const int samples = samples_or(cfg, 200);
  struct Case {
    bool member, honest;
    json input;
  };
  auto honest = [](const ConfigPoint& z, const MembershipVerdict& v) {
    if (v.status != MembershipStatus::member) return true;
    return v.witness.has_value() && v.witness->valid() && in_future_tube(apply(*v.witness, z));
  };
  const auto members = run_cases(samples, cfg, [&](int k) {
    Rng rng(derive_seed(cfg.seed, "membership", static_cast<std::uint64_t>(k)));
    const int n = pick(cfg.n, rng, 1, 4);
    const int copies = pick(cfg.copies, rng, 1, 5);
    const ConfigPoint w = sample_tube_point_with_margin(rng, n, copies, 0.1);
    // Prefer elements that move w out of the tube so the search has work to do.
    ConfigPoint z = w;
    for (int attempt = 0; attempt < 50; ++attempt) {
      const GroupElement g = random_group_element(n, rng.bits(), 0.5, Realness::complex);
      z = apply(g, w);
      if (!in_future_tube(z)) break;
    }
    CertifyOptions opts;
    opts.seed = derive_seed(cfg.seed, "membership-certify", static_cast<std::uint64_t>(k));
    const MembershipVerdict v = membership_certify(z, opts);
    Case c{v.status == MembershipStatus::member, honest(z, v), json()};
    if (!c.member || !c.honest) c.input = json{{"case", k}, {"z", to_json(z)}, {"residual", v.residual}};
    return c;
  });
  std::vector<bool> found, honest_members;
  for (const auto& c : members) {
    found.push_back(c.member);
    honest_members.push_back(c.honest);
    if (!c.input.is_null()) add_artifact(rep, c.input);
  }
  rep.checks.push_back(rate_check("member-rate", "member verdicts on constructed members", found, 0.95));
  rep.checks.push_back(count_check("member-witness", "every member witness maps into T^N", honest_members));

  std::vector<bool> zero_ok;
  for (int k = 0; k < 4; ++k) {
    const int n = 1 + k, copies = 1 + k % 3;
    const ConfigPoint z(CMatrix::Zero(n + 1, copies));
    CertifyOptions opts;
    opts.seed = derive_seed(cfg.seed, "membership-zero", static_cast<std::uint64_t>(k));
    zero_ok.push_back(membership_certify(z, opts).status == MembershipStatus::unknown);
  }
  rep.checks.push_back(count_check("zero-unknown", "z = 0 is never certified", zero_ok));

  const auto spacelike = run_cases(50, cfg, [&](int k) {
    Rng rng(derive_seed(cfg.seed, "membership-spacelike", static_cast<std::uint64_t>(k)));
    const int n = pick(cfg.n, rng, 1, 4);
    const int copies = pick(cfg.copies, rng, 1, 5);
    RMatrix x(n + 1, copies);
    for (int j = 0; j < copies; ++j) {
      const double x0 = rng.uniform(-1.0, 1.0);
      RVector s = sample_unit_ball(rng, n);
      while (s.norm() == 0.0) s = sample_unit_ball(rng, n);
      s *= (std::abs(x0) + rng.uniform(0.1, 1.0)) / s.norm();
      x(0, j) = x0;
      x.col(j).tail(n) = s;
    }
    const ConfigPoint z(x, RMatrix::Zero(n + 1, copies));
    CertifyOptions opts;
    opts.seed = derive_seed(cfg.seed, "membership-spacelike-certify", static_cast<std::uint64_t>(k));
    const MembershipVerdict v = membership_certify(z, opts);
    return honest(z, v);
  });
  rep.checks.push_back(count_check("spacelike-honest",
                                   "real spacelike points: unknown or a verified witness", spacelike));
  return rep;
}

// ---------------------------------------------------------------------------

inline SuiteReport suite_cartan_path(const RunConfig& cfg) {
  using namespace suite_detail;
  SuiteReport rep{"cartan-path", {}, {}};
  const int samples = samples_or(cfg, 100);
  struct Case {
    bool contained;
    double endpoint, start, constraint;
    int violations;
    int flipped;
    json input;
  };
  for (CartanVariant v : {CartanVariant::H0, CartanVariant::H1, CartanVariant::H2}) {
    const std::string tag = to_string(v);
    const auto cases = run_cases(samples, cfg, [&](int k) {
      Rng rng(derive_seed(cfg.seed, "cartan-path-" + tag, static_cast<std::uint64_t>(k)));
      int n = cfg.n;
      const bool odd = v == CartanVariant::H0;
      if (n <= 0 || (n % 2 == 1) != odd) n = odd ? (rng.uniform() < 0.5 ? 1 : 3) : (rng.uniform() < 0.5 ? 2 : 4);
      const int copies = pick(cfg.copies, rng, 1, 3);
      const ConformingPair pair = sample_conforming_pair(rng, v, n, copies);
      Case c{};
      c.contained = true;
      try {
        const CartanPath path = cartan_path(v, pair.params, pair.w, kDefaultPathSamples);
        const GroupElement h = cartan_element(pair.params, n);
        c.endpoint = (path.samples.back().element.matrix() - h.matrix()).cwiseAbs().maxCoeff();
        c.start = (path.samples.front().element.matrix() - CMatrix::Identity(n + 1, n + 1))
                      .cwiseAbs()
                      .maxCoeff();
        for (const auto& s : path.samples) {
          c.contained = c.contained && sigma_contains(s.element, pair.w);
          if (s.params.circle) {
            const auto [a, b] = *s.params.circle;
            c.constraint = std::max(c.constraint, std::abs(a * a + b * b - 1.0));
          }
          for (const auto& [cc, d] : s.params.hyperbolas) {
            c.constraint = std::max(c.constraint, std::abs(cc * cc - d * d - 1.0));
          }
        }
      } catch (const Error& e) {
        c.contained = false;
        c.endpoint = c.start = c.constraint = std::numeric_limits<double>::infinity();
        c.input = json{{"case", k}, {"error", e.what()}};
      }
      const MonotonicityReport mono = hi_monotonicity_check(
          v, pair.params, pair.w, derive_seed(cfg.seed, "hi-monotonicity-" + tag, static_cast<std::uint64_t>(k)));
      c.violations = mono.violations;
      MonotonicityOptions flip;
      flip.flip_shrink = true;
      c.flipped = hi_monotonicity_check(v, pair.params, pair.w, 0, flip).violations;
      if (!c.contained || !(c.endpoint <= 1e-9) || !(c.constraint <= 1e-9) || c.violations > 0) {
        json in = json{{"case", k}, {"params", to_json(pair.params)}, {"w", to_json(pair.w)}};
        if (c.input.contains("error")) in["error"] = c.input["error"];
        c.input = in;
      } else {
        c.input = json();
      }
      return c;
    });
    std::vector<bool> contained;
    std::vector<double> ends, starts, cons;
    std::vector<bool> mono_ok;
    int flipped = 0;
    for (const auto& c : cases) {
      contained.push_back(c.contained);
      ends.push_back(c.endpoint);
      starts.push_back(c.start);
      cons.push_back(c.constraint);
      mono_ok.push_back(c.violations == 0);
      flipped += c.flipped;
      if (!c.input.is_null()) add_artifact(rep, c.input);
    }
    rep.checks.push_back(count_check("path-contained-" + tag, tag + ": all 64 path samples in Sigma(w)", contained));
    rep.checks.push_back(max_check("path-endpoint-" + tag, tag + ": |gamma(1) - h|_max", ends, 1e-9));
    rep.checks.push_back(max_check("path-start-" + tag, tag + ": |gamma(0) - Id|_max", starts, 1e-12));
    rep.checks.push_back(max_check("path-constraints-" + tag, tag + ": circle/hyperbola residuals along the path", cons, 1e-9));
    rep.checks.push_back(count_check("monotonicity-" + tag, tag + ": shrink/scale grid stays in the tube", mono_ok));
    Check neg{"monotonicity-control-" + tag, tag + ": flipped grid (r > 1) is detected", ">",
              static_cast<double>(flipped), 0.0, samples, 0, flipped > 0};
    rep.checks.push_back(neg);
  }

  const auto eps = run_cases(samples, cfg, [&](int k) {
    Rng rng(derive_seed(cfg.seed, "epsilon-coset", static_cast<std::uint64_t>(k)));
    int n = cfg.n;
    if (n <= 0 || n % 2 != 0) n = rng.uniform() < 0.5 ? 2 : 4;
    const int copies = pick(cfg.copies, rng, 1, 3);
    const CartanParams p = sample_cartan_params(rng, CartanVariant::H2, n);
    const ConfigPoint w = sample_tube_point(rng, n, copies);
    const GroupElement he = cartan_element(p, n) * epsilon_element(n);
    return !sigma_contains(he, w);
  });
  rep.checks.push_back(count_check("epsilon-coset", "h epsilon w never in T^N (h in H2)", eps));
  return rep;
}

// ---------------------------------------------------------------------------

inline SuiteReport suite_exhaustion(const RunConfig& cfg) {
  using namespace suite_detail;
  SuiteReport rep{"exhaustion", {}, {}};
  const int samples = samples_or(cfg, 10000);
  AuditOptions opts;
  if (cfg.n > 0) opts.n = cfg.n;
  if (cfg.copies > 0) opts.copies = cfg.copies;
  const ExhaustionAudit a = exhaustion_audit(10.0, 10.0, samples, cfg.seed, opts);
  rep.checks.push_back(min_check("audit-nonempty", "accepted samples", {static_cast<double>(a.base.accepted)}, 0.0, true));
  rep.checks.push_back(count_check("audit-finite", "supremum is finite", {a.finite}));
  rep.checks.push_back(max_check("audit-stable", "relative change of the supremum under doubling",
                                 {a.empty ? std::numeric_limits<double>::infinity() : a.relative_change}, 0.2));
  Check bounds{"audit-bounds", "bound-chain violations (single copy and (3/2) max{M1, M2} pairs)",
               "==", static_cast<double>(a.bound_violations), 0.0, a.bound_checks, a.bound_violations,
               a.bound_violations == 0 && a.bound_checks > 0};
  rep.checks.push_back(bounds);
  Check slice{"audit-slice", "slice violations (first column on e0, 1/r <= t^2)", "==",
              static_cast<double>(a.slice_violations), 0.0, a.doubled.accepted, a.slice_violations,
              a.slice_violations == 0};
  rep.checks.push_back(slice);
  for (const auto& note : a.violation_notes) add_artifact(rep, json{{"note", note}});
  return rep;
}

// ---------------------------------------------------------------------------

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{
      "cauchy-schwarz", "invariance", "radical-lemmas", "degeneration", "moment-fd",
      "levi",           "reduction",  "membership",     "cartan-path",  "exhaustion"};
  return names;
}

inline SuiteReport run_suite(const std::string& name, const RunConfig& cfg) {
  if (name == "cauchy-schwarz") return suite_cauchy_schwarz(cfg);
  if (name == "invariance") return suite_invariance(cfg);
  if (name == "radical-lemmas") return suite_radical_lemmas(cfg);
  if (name == "degeneration") return suite_degeneration(cfg);
  if (name == "moment-fd") return suite_moment_fd(cfg);
  if (name == "levi") return suite_levi(cfg);
  if (name == "reduction") return suite_reduction(cfg);
  if (name == "membership") return suite_membership(cfg);
  if (name == "cartan-path") return suite_cartan_path(cfg);
  if (name == "exhaustion") return suite_exhaustion(cfg);
  throw PreconditionError("unknown suite: " + name);
}

}  // namespace ltk
