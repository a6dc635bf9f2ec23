// ltk: command-line front end. Every subcommand prints one JSON object.
//
// Exit codes: 0 success, 1 failed check, 2 usage or input error,
// 3 numerical degeneracy (including raised rank warnings).

#include "ltk/ltk.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace {

using ltk::json;

enum Exit { kOk = 0, kFailed = 1, kUsage = 2, kDegenerate = 3 };

struct Flags {
  std::uint64_t seed = 7;
  double tol_abs = ltk::Tolerance{}.abs_tol;
  double tol_rel = ltk::Tolerance{}.rel_tol;
  int samples = 0;
  int n = 0;
  int copies = 0;
  std::string in;
  std::string out = "-";
  bool envelope = false;

  // per-command knobs
  std::optional<double> t;
  std::string direction = "newton";
  int max_iter = ltk::FlowOptions{}.max_iter;
  int starts = ltk::CertifyOptions{}.starts;
  double margin = ltk::CertifyOptions{}.margin;
  double m1 = -1.0;
  std::optional<double> m2;
  std::string variant = "H0";
  int count = ltk::kDefaultPathSamples;
  double gram_bound = 10.0;
  double r = 10.0;
  std::string suite;

  ltk::Tolerance tol() const { return {tol_abs, tol_rel}; }
};

struct Outcome {
  json body;
  int code = kOk;
};

json complex_json(ltk::Complex c) { return json{{"re", c.real()}, {"im", c.imag()}}; }

json matrix_json(const ltk::CMatrix& m) {
  return json{{"re", ltk::detail::write_real_matrix(m.real())},
              {"im", ltk::detail::write_real_matrix(m.imag())}};
}

json vector_json(const ltk::RVector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

// The configuration from --in, or a seeded tube point of shape (--n, --N).
// Generated inputs are echoed so the run can be replayed from the report.
ltk::ConfigPoint input_point(const Flags& f, json& body) {
  if (!f.in.empty()) return ltk::config_point_from_json(ltk::read_json_input(f.in));
  ltk::Rng rng(ltk::derive_seed(f.seed, "cli-input", 0));
  const int n = f.n > 0 ? f.n : 2;
  const int copies = f.copies > 0 ? f.copies : 2;
  ltk::ConfigPoint z = ltk::sample_tube_point(rng, n, copies);
  body["input"] = ltk::to_json(z);
  return z;
}

Outcome cmd_eta(const Flags& f) {
  Outcome o;
  const ltk::ConfigPoint z = input_point(f, o.body);
  json etas = json::array();
  for (int j = 0; j < z.copies(); ++j) etas.push_back(complex_json(ltk::eta(z.column(j))));
  o.body["eta"] = etas;
  return o;
}

Outcome cmd_product(const Flags& f) {
  Outcome o;
  const ltk::ConfigPoint z = input_point(f, o.body);
  if (z.copies() != 2) throw ltk::DimensionError("product expects exactly two columns (N = 2)");
  o.body["product"] = complex_json(ltk::lorentz_product(z.column(0), z.column(1)));
  return o;
}

Outcome cmd_cone(const Flags& f) {
  Outcome o;
  const ltk::ConfigPoint z = input_point(f, o.body);
  json in = json::array(), etas = json::array();
  for (int j = 0; j < z.copies(); ++j) {
    const ltk::MinkowskiVector v = z.column(j);
    ltk::detail::require_real(v, "cone");
    in.push_back(ltk::in_forward_cone(v, f.tol()));
    etas.push_back(ltk::eta(v).real());
  }
  o.body["in_cone"] = in;
  o.body["eta"] = etas;
  return o;
}

Outcome cmd_tube(const Flags& f) {
  Outcome o;
  const ltk::ConfigPoint z = input_point(f, o.body);
  json cols = json::array();
  for (int j = 0; j < z.copies(); ++j) {
    cols.push_back(ltk::in_forward_cone(ltk::MinkowskiVector::real(z.im().col(j)), f.tol()));
  }
  o.body["in_tube"] = ltk::in_future_tube(z, f.tol());
  o.body["columns"] = cols;
  return o;
}

Outcome cmd_quotient(const Flags& f) {
  Outcome o;
  const ltk::ConfigPoint z = input_point(f, o.body);
  o.body["gram"] = matrix_json(ltk::gram_quotient(z).entries());
  return o;
}

Outcome cmd_rank(const Flags& f) {
  Outcome o;
  const ltk::ConfigPoint z = input_point(f, o.body);
  const ltk::RankInfo info = ltk::numeric_rank_info(z.matrix(), f.tol());
  o.body["rank"] = info.rank;
  o.body["threshold"] = info.threshold;
  o.body["singular_values"] = vector_json(info.singular_values);
  o.body["warning"] = info.warning;
  if (info.warning) o.code = kDegenerate;
  return o;
}

Outcome cmd_radical(const Flags& f) {
  Outcome o;
  const ltk::ConfigPoint z = input_point(f, o.body);
  const ltk::RadicalResult r = ltk::radical_basis_info(z, f.tol());
  o.body["dimension"] = r.dimension();
  o.body["span"] = r.span;
  o.body["gram_rank"] = r.gram_rank;
  o.body["warning"] = r.warning;
  o.body["basis"] = matrix_json(r.basis);
  if (r.warning) o.code = kDegenerate;
  return o;
}

Outcome cmd_closed(const Flags& f) {
  Outcome o;
  const ltk::ConfigPoint z = input_point(f, o.body);
  const ltk::ClosedOrbitVerdict v = ltk::is_orbit_closed(z, f.tol());
  o.body["closed"] = v.closed;
  o.body["span"] = v.span;
  o.body["gram_rank"] = v.gram_rank;
  o.body["warning"] = v.warning;
  if (v.warning) o.code = kDegenerate;
  return o;
}

Outcome cmd_degenerate(const Flags& f) {
  Outcome o;
  const ltk::ConfigPoint z = input_point(f, o.body);
  const ltk::IsotropicSplit s = ltk::isotropic_split(z, f.tol());
  o.body["radical_dimension"] = s.radical_dimension();
  o.body["pairing_condition"] = s.pairing_condition;
  o.body["warning"] = s.warning;
  o.body["u"] = ltk::to_json(s.u_part);
  o.body["omega"] = ltk::to_json(s.omega_part);
  if (ltk::in_future_tube(z, f.tol())) {
    o.body["rho"] = ltk::rho(z);
    o.body["rho_u"] = ltk::rho(s.u_part);
  }
  if (f.t) {
    const ltk::ConfigPoint g = ltk::gamma_scale(s, *f.t);
    o.body["t"] = *f.t;
    o.body["gamma"] = ltk::to_json(g);
    o.body["gamma_in_tube"] = ltk::in_future_tube(g, f.tol());
  }
  if (s.warning) o.code = kDegenerate;
  return o;
}

Outcome cmd_rho(const Flags& f) {
  Outcome o;
  const ltk::ConfigPoint z = input_point(f, o.body);
  o.body["rho"] = ltk::rho(z);
  return o;
}

Outcome cmd_levi(const Flags& f) {
  Outcome o;
  const ltk::ConfigPoint z = input_point(f, o.body);
  const ltk::RVector ev = ltk::levi_eigenvalues(z);
  o.body["eigenvalues"] = vector_json(ev);
  o.body["min_eigenvalue"] = ev(0);
  return o;
}

Outcome cmd_moment(const Flags& f) {
  Outcome o;
  const ltk::ConfigPoint z = input_point(f, o.body);
  const ltk::MomentValue mv = ltk::moment_map(z);
  o.body["coefficients"] = vector_json(mv.coefficients);
  o.body["norm"] = mv.coefficients.norm();
  return o;
}

Outcome cmd_minimize(const Flags& f) {
  Outcome o;
  const ltk::ConfigPoint z = input_point(f, o.body);
  ltk::FlowOptions opts;
  if (f.direction == "gradient") {
    opts.direction = ltk::FlowDirection::gradient;
  } else if (f.direction != "newton") {
    throw ltk::ParseError("--direction", "expected newton or gradient");
  }
  opts.max_iter = f.max_iter;
  const ltk::FlowResult fr = ltk::minimize_rho_on_orbit(z, opts);
  json trace = json::array();
  for (const auto& e : fr.trace) {
    trace.push_back(json{{"iteration", e.iteration},
                         {"rho", e.rho},
                         {"moment_norm", e.moment_norm},
                         {"change", e.change}});
  }
  o.body["converged"] = fr.converged;
  o.body["iterations"] = fr.iterations;
  o.body["rho_initial"] = fr.trace.front().rho;
  o.body["rho_final"] = fr.trace.back().rho;
  o.body["moment_norm"] = fr.trace.back().moment_norm;
  o.body["diagnostic"] = fr.diagnostic;
  o.body["final_point"] = ltk::to_json(fr.final_point);
  o.body["group"] = ltk::to_json(fr.accumulated_group);
  o.body["trace"] = trace;
  return o;
}

Outcome cmd_certify(const Flags& f) {
  Outcome o;
  const ltk::ConfigPoint z = input_point(f, o.body);
  ltk::CertifyOptions opts;
  opts.starts = f.starts;
  opts.margin = f.margin;
  opts.seed = f.seed;
  const ltk::MembershipVerdict v = ltk::membership_certify(z, opts);
  o.body["status"] = v.status == ltk::MembershipStatus::member ? "member" : "unknown";
  o.body["residual"] = v.residual;
  o.body["starts_used"] = v.starts_used;
  if (v.witness) {
    o.body["witness"] = ltk::to_json(*v.witness);
    o.body["image"] = ltk::to_json(ltk::apply(*v.witness, z));
  }
  return o;
}

Outcome cmd_slice(const Flags& f) {
  Outcome o;
  const ltk::ConfigPoint z = input_point(f, o.body);
  const auto [g, w] = ltk::slice_normalize(z);
  o.body["group"] = ltk::to_json(g);
  o.body["point"] = ltk::to_json(w);
  o.body["rho"] = ltk::rho(w);
  return o;
}

Outcome cmd_bounds(const Flags& f) {
  Outcome o;
  const ltk::ExhaustionBounds b = ltk::exhaustion_bounds(f.m1);
  o.body["M"] = f.m1;
  o.body["eta_y_max"] = b.eta_y_max;
  o.body["eta_x_max"] = b.eta_x_max;
  o.body["xy_max"] = b.xy_max;
  if (f.m2) {
    o.body["M2"] = *f.m2;
    o.body["pair_mixed_max"] = ltk::pair_mixed_max(f.m1, *f.m2);
  }
  return o;
}

Outcome cmd_path(const Flags& f) {
  Outcome o;
  ltk::CartanVariant v = ltk::cartan_variant_from_string(f.variant);
  ltk::CartanParams params;
  std::optional<ltk::ConfigPoint> w;
  if (!f.in.empty()) {
    const json in = ltk::read_json_input(f.in);
    params = ltk::cartan_params_from_json(ltk::detail::require_field(in, "params"));
    w = ltk::config_point_from_json(ltk::detail::require_field(in, "w"));
    v = params.variant;
  } else {
    ltk::Rng rng(ltk::derive_seed(f.seed, "cli-input", 0));
    const int n = f.n > 0 ? f.n : (v == ltk::CartanVariant::H0 ? 3 : 2);
    ltk::ConformingPair pair = ltk::sample_conforming_pair(rng, v, n, f.copies > 0 ? f.copies : 2);
    params = pair.params;
    w = pair.w;
    o.body["input"] = json{{"params", ltk::to_json(params)}, {"w", ltk::to_json(*w)}};
  }
  const ltk::CartanPath path = ltk::cartan_path(v, params, *w, f.count, f.tol());
  json samples = json::array();
  for (const auto& s : path.samples) {
    samples.push_back(json{{"t", s.t}, {"params", ltk::to_json(s.params)}, {"element", ltk::to_json(s.element)}});
  }
  o.body["variant"] = ltk::to_string(v);
  o.body["sample_count"] = path.sample_count;
  o.body["samples"] = samples;
  return o;
}

Outcome cmd_audit(const Flags& f) {
  Outcome o;
  ltk::AuditOptions opts;
  if (f.n > 0) opts.n = f.n;
  if (f.copies > 0) opts.copies = f.copies;
  const int samples = f.samples > 0 ? f.samples : 10000;
  const ltk::ExhaustionAudit a = ltk::exhaustion_audit(f.gram_bound, f.r, samples, f.seed, opts);
  auto pass_json = [](const ltk::AuditPass& p) {
    return json{{"samples", p.samples}, {"accepted", p.accepted}, {"supremum", p.supremum}};
  };
  o.body["gram_bound"] = a.gram_bound;
  o.body["r"] = a.r;
  o.body["base"] = pass_json(a.base);
  o.body["doubled"] = pass_json(a.doubled);
  o.body["empty"] = a.empty;
  o.body["finite"] = a.finite;
  o.body["relative_change"] = a.relative_change;
  o.body["stable"] = a.stable;
  o.body["bound_checks"] = a.bound_checks;
  o.body["bound_violations"] = a.bound_violations;
  o.body["slice_violations"] = a.slice_violations;
  o.body["violation_notes"] = a.violation_notes;
  o.body["passed"] = a.passed();
  if (!a.passed()) o.code = kFailed;
  return o;
}

Outcome cmd_verify(const Flags& f) {
  Outcome o;
  ltk::RunConfig cfg;
  cfg.seed = f.seed;
  cfg.tol = f.tol();
  cfg.samples = f.samples;
  cfg.n = f.n;
  cfg.copies = f.copies;
  std::vector<std::string> names;
  if (f.suite == "all") {
    names = ltk::suite_names();
  } else {
    names.push_back(f.suite);
  }
  json suites = json::array();
  bool passed = true;
  for (const auto& name : names) {
    const ltk::SuiteReport rep = ltk::run_suite(name, cfg);
    passed = passed && rep.passed();
    suites.push_back(ltk::to_json(rep));
  }
  o.body["suites"] = suites;
  o.body["passed"] = passed;
  if (!passed) o.code = kFailed;
  return o;
}

int run(int argc, char** argv) {
  CLI::App app{"Lorentz tube toolkit"};
  app.set_version_flag("--version", std::string(ltk::kVersion));
  app.require_subcommand(1);
  app.fallthrough();

  Flags f;
  app.add_option("--seed", f.seed, "master seed");
  app.add_option("--tol-abs", f.tol_abs, "absolute tolerance")->check(CLI::PositiveNumber);
  app.add_option("--tol-rel", f.tol_rel, "relative tolerance")->check(CLI::PositiveNumber);
  app.add_option("--samples", f.samples, "sample count (0: command default)")->check(CLI::NonNegativeNumber);
  app.add_option("--n", f.n, "ambient n for generated inputs")->check(CLI::NonNegativeNumber);
  app.add_option("--N", f.copies, "copies N for generated inputs")->check(CLI::NonNegativeNumber);
  app.add_option("--in", f.in, "input JSON file, - for stdin");
  app.add_option("--out", f.out, "output file, - for stdout");
  app.add_flag("--json", f.envelope, "wrap the result in a report with seed, tolerances and version");

  std::map<std::string, std::function<Outcome(const Flags&)>> handlers{
      {"eta", cmd_eta},         {"product", cmd_product},   {"cone", cmd_cone},
      {"tube", cmd_tube},       {"quotient", cmd_quotient}, {"rank", cmd_rank},
      {"radical", cmd_radical}, {"closed", cmd_closed},     {"degenerate", cmd_degenerate},
      {"rho", cmd_rho},         {"levi", cmd_levi},         {"moment", cmd_moment},
      {"minimize", cmd_minimize}, {"certify", cmd_certify}, {"slice", cmd_slice},
      {"bounds", cmd_bounds},   {"path", cmd_path},         {"audit-exhaustion", cmd_audit},
      {"verify", cmd_verify}};

  const std::map<std::string, std::string> help{
      {"eta", "eta(z_j) for every column"},
      {"product", "bilinear product of the two columns"},
      {"cone", "forward-cone test for real columns"},
      {"tube", "future-tube test"},
      {"quotient", "Gram matrix z^T J z"},
      {"rank", "numerical rank of the (1+n) x N matrix"},
      {"radical", "basis of the isotropic radical of the span"},
      {"closed", "closed-orbit verdict"},
      {"degenerate", "split z = u + omega and the degeneration curve"},
      {"rho", "exhaustion value"},
      {"levi", "Levi form eigenvalues"},
      {"moment", "moment map coefficients"},
      {"minimize", "minimize rho along the complex orbit"},
      {"certify", "extended-tube membership certificate"},
      {"slice", "normalize the first column onto the e0 axis"},
      {"bounds", "bound chain for a quotient bound M"},
      {"path", "Cartan path from the identity"},
      {"audit-exhaustion", "sampled compactness audit of the exhaustion"},
      {"verify", "run a named verification suite"}};

  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, _] : handlers) subs[name] = app.add_subcommand(name, help.at(name));

  subs["degenerate"]->add_option("--t", f.t, "evaluate u + t omega");
  subs["minimize"]->add_option("--direction", f.direction, "newton or gradient")
      ->check(CLI::IsMember({"newton", "gradient"}));
  subs["minimize"]->add_option("--max-iter", f.max_iter)->check(CLI::PositiveNumber);
  subs["certify"]->add_option("--starts", f.starts)->check(CLI::PositiveNumber);
  subs["certify"]->add_option("--margin", f.margin)->check(CLI::PositiveNumber);
  subs["bounds"]->add_option("--M", f.m1, "quotient bound M")->required()->check(CLI::NonNegativeNumber);
  subs["bounds"]->add_option("--M2", f.m2, "second copy's bound")->check(CLI::NonNegativeNumber);
  subs["path"]->add_option("--variant", f.variant)->check(CLI::IsMember({"H0", "H1", "H2"}));
  subs["path"]->add_option("--count", f.count, "samples along the path")->check(CLI::Range(2, 1000000));
  subs["audit-exhaustion"]->add_option("--gram-bound", f.gram_bound)->check(CLI::PositiveNumber);
  subs["audit-exhaustion"]->add_option("--r", f.r)->check(CLI::PositiveNumber);
  std::vector<std::string> suite_choices = ltk::suite_names();
  suite_choices.push_back("all");
  subs["verify"]->add_option("suite", f.suite, "suite name or all")
      ->required()
      ->check(CLI::IsMember(suite_choices));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  std::string command;
  for (const auto& [name, sub] : subs) {
    if (sub->parsed()) command = name;
  }

  try {
    Outcome o = handlers.at(command)(f);
    json out = o.body;
    if (f.envelope || command == "verify" || command == "audit-exhaustion") {
      out = ltk::report_header(command, f.seed, f.tol());
      out["result"] = o.body;
    }
    ltk::write_json_output(out, f.out);
    return o.code;
  } catch (const ltk::ParseError& e) {
    std::cerr << "ltk " << command << ": input error: " << e.what() << "\n";
    return kUsage;
  } catch (const ltk::DegenerateInputError& e) {
    std::cerr << "ltk " << command << ": degenerate input: " << e.what() << "\n";
    return kDegenerate;
  } catch (const ltk::OverflowError& e) {
    std::cerr << "ltk " << command << ": overflow: " << e.what() << "\n";
    return kDegenerate;
  } catch (const ltk::ContainmentError& e) {
    std::cerr << "ltk " << command << ": " << e.what() << "\n";
    return kFailed;
  } catch (const ltk::Error& e) {
    std::cerr << "ltk " << command << ": " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "ltk " << command << ": " << e.what() << "\n";
    return kFailed;
  }
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
