// weylkit command-line front end: batch analyses of scene files with
// deterministic JSON reports (CSV for geodesic polylines).

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "weylkit/driver.hpp"

using namespace weylkit;

int main(int argc, char** argv) {
  CLI::App app{"weylkit: exact invariants of projective structures, Weyl connections, "
               "and conformal 3-structures"};
  app.require_subcommand(1);

  DriverOptions opt;
  std::string command;
  int signature = 0;

  auto add_common = [&](CLI::App* sub, bool needs_scene) {
    auto* sc = sub->add_option("--scene", opt.scene_path, "scene file path");
    if (needs_scene) sc->required();
    sub->add_option("--out", opt.out_path, "output path (default stdout)");
    sub->add_option("--signature", signature, "override signature epsilon (+1 or -1)")
        ->check(CLI::IsMember({1, -1}));
    sub->add_option("--samples", opt.samples, "sample count for numeric oracles");
    sub->add_option("--seed", opt.seed, "seed for randomized suites");
    sub->add_option("--degree-bound", opt.degree_bound, "polynomial total-degree guardrail");
    sub->add_flag("--timings", opt.timings, "include wall-time per analysis in the report");
    sub->callback([&, sub] { command = sub->get_name(); });
  };

  for (const char* name : {"analyze-metric", "analyze-connection", "odes", "thomas", "equivalent",
                           "metrizable", "beltrami", "einstein-weyl", "twistor-type", "paracr",
                           "identities"})
    add_common(app.add_subcommand(name), true);

  auto* quartic = app.add_subcommand("quartic", "classify a binary quartic by real-root type");
  add_common(quartic, false);
  quartic->add_option("--coeffs", opt.quartic_coeffs, "C4,C3,C2,C1,C0 as rationals")->required();

  auto* geo = app.add_subcommand("geodesic", "integrate a geodesic, emit CSV");
  add_common(geo, true);
  geo->add_option("--x0", opt.x0, "initial point components");
  geo->add_option("--v0", opt.v0, "initial velocity components");
  geo->add_option("--step", opt.step, "RK4 step size");
  geo->add_option("--steps", opt.steps, "step count");

  CLI11_PARSE(app, argc, argv);
  if (signature != 0) opt.signature = signature;

  try {
    DriverResult res = run_command(command, opt);
    std::string payload = res.is_csv ? res.csv : res.report.dump(2) + "\n";
    if (opt.out_path.empty()) {
      std::cout << payload;
    } else {
      std::ofstream out(opt.out_path, std::ios::binary);
      if (!out) throw std::runtime_error("cannot open output path: " + opt.out_path);
      out << payload;
    }
    return res.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}
