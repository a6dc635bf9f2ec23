// Walks through the n = 2 radical example: the orbit of z is not closed,
// the split z = u + omega lands on the closed orbit with smaller rho, and
// the orbit flow creeps toward rho(u) without reaching it.

#include "ltk/ltk.hpp"

#include <cstdio>
#include <string>

#ifndef LTK_DEMO_DIR
#define LTK_DEMO_DIR "demo"
#endif

int main(int argc, char** argv) {
  const std::string path = argc > 1 ? argv[1] : LTK_DEMO_DIR "/worked_example.json";
  const ltk::ConfigPoint z = ltk::config_point_from_json(ltk::read_json_input(path));

  const ltk::ClosedOrbitVerdict v = ltk::is_orbit_closed(z);
  std::printf("span %d, gram rank %d, closed %s\n", v.span, v.gram_rank, v.closed ? "yes" : "no");

  const ltk::IsotropicSplit s = ltk::isotropic_split(z);
  std::printf("radical dimension %d\n", s.radical_dimension());
  std::printf("rho(z) = %.12f\n", ltk::rho(z));
  std::printf("rho(u) = %.12f\n", ltk::rho(s.u_part));
  std::printf("u closed: %s\n", ltk::is_orbit_closed(s.u_part).closed ? "yes" : "no");

  for (double t : {1.0, 0.5, 0.0}) {
    const ltk::ConfigPoint g = ltk::gamma_scale(s, t);
    std::printf("t = %.1f: in tube %s, rho %.12f\n", t, ltk::in_future_tube(g) ? "yes" : "no",
                ltk::rho(g));
  }

  for (auto dir : {ltk::FlowDirection::newton, ltk::FlowDirection::gradient}) {
    ltk::FlowOptions opts;
    opts.direction = dir;
    const ltk::FlowResult fr = ltk::minimize_rho_on_orbit(z, opts);
    std::printf("%s flow: %d iterations, rho %.12f, |mu| %.3e, converged %s\n",
                dir == ltk::FlowDirection::newton ? "newton" : "gradient", fr.iterations,
                fr.trace.back().rho, fr.trace.back().moment_norm, fr.converged ? "yes" : "no");
  }
  return 0;
}
