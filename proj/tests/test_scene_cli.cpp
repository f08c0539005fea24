#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "test_support.hpp"
#include "weylkit/driver.hpp"

using namespace weylkit;

namespace {

std::string scene_path(const std::string& name) { return std::string(WEYLKIT_SCENE_DIR) + "/" + name; }

DriverOptions opts_for(const std::string& scene) {
  DriverOptions o;
  o.scene_path = scene_path(scene);
  return o;
}

int run_cli(const std::string& args) {
  std::string cmd = std::string(WEYLKIT_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

} // namespace

TEST_CASE("load_scene examples", "[scene]") {
  std::istringstream minimal("[chart]\nn = 3\nvars = x0,x1,x2\n[metric]\ndiag(1,1,1)\n");
  Scene s = load_scene(minimal);
  REQUIRE(s.metric);
  CHECK(s.metric->entry(0, 0) == Expr::one(s.chart));
  CHECK(s.epsilon == 1);

  std::istringstream odes_only(
      "[chart]\nn = 3\nvars = x0,x1,x2\nfiber = p1,p2\n[odes]\nF1 = p1^3\nF2 = p1^2*p2\n");
  Scene so = load_scene(odes_only);
  CHECK_FALSE(so.metric);
  REQUIRE(so.odes);
  CHECK(odepair_is_projective(*so.odes));

  // undeclared variable: error at the offending line
  try {
    load_scene(scene_path("bad_var.scene"));
    FAIL("expected SceneError");
  } catch (const SceneError& e) {
    CHECK(e.line_number == 6);
  }
}

TEST_CASE("scene validation errors", "[scene]") {
  std::istringstream no_obj("[chart]\nn = 3\n");
  CHECK_THROWS_AS(load_scene(no_obj), SceneError);
  std::istringstream bad_eps("[chart]\nn = 3\n[signature]\nepsilon = 2\n[metric]\ndiag(1,1,1)\n");
  CHECK_THROWS_AS(load_scene(bad_eps), SceneError);
  std::istringstream stray("x = 1\n");
  CHECK_THROWS_AS(load_scene(stray), SceneError);
  std::istringstream conflict(
      "[chart]\nn = 3\n[metric]\ndiag(1,1,1)\n0 1 = x0\n1 0 = x1\n");
  CHECK_THROWS_AS(load_scene(conflict), SceneError);
  std::istringstream unknown_sec("[chart]\nn = 3\n[metrics]\ndiag(1,1,1)\n");
  CHECK_THROWS_AS(load_scene(unknown_sec), SceneError);
  std::istringstream degenerate("[chart]\nn = 2\nvars = x0,x1\n[metric]\ndiag(x0, 0)\n");
  CHECK_THROWS_AS(load_scene(degenerate), SceneError);
}

TEST_CASE("driver records match the worked examples", "[cli]") {
  auto res = run_command("beltrami", opts_for("flat.scene"));
  CHECK(res.exit_code == kExitOk);
  auto& rec = res.report["records"][0];
  CHECK(rec["projectively_flat"] == true);
  CHECK(rec["conformally_flat"] == true);

  auto met = run_command("metrizable", opts_for("metrizable_flat.scene"));
  CHECK(met.exit_code == kExitOk);
  CHECK(met.report["records"][0]["found"] == true);
  CHECK(met.report["records"][0]["beta"] == Json::array({"0", "0", "0"}));

  DriverOptions qo;
  qo.quartic_coeffs = "1,0,0,0,0";
  auto qr = run_command("quartic", qo);
  CHECK(qr.report["records"][0]["kind"] == "TypeN");
  CHECK(qr.report["records"][0]["root"] == "[0:1]");
  CHECK(qr.report["records"][0]["multiplicity"] == 4);

  auto tw = run_command("twistor-type", opts_for("nonflat.scene"));
  CHECK(tw.report["records"][0]["kind"] == "TypeN");
  auto tw0 = run_command("twistor-type", opts_for("sphere.scene"));
  CHECK(tw0.report["records"][0]["kind"] == "Zero");

  auto eq = run_command("equivalent", opts_for("equivalent_pair.scene"));
  CHECK(eq.exit_code == kExitOk);
  CHECK(eq.report["records"][0]["found"] == true);
  CHECK(eq.report["records"][0]["f"] == Json::array({"1", "0", "0"}));

  auto ids = run_command("identities", opts_for("n4_identities.scene"));
  CHECK(ids.exit_code == kExitOk);
  CHECK(ids.report["records"][0]["all_zero"] == true);
  CHECK(ids.report["records"][0]["cwqp_zero"] == true);

  auto ode = run_command("odes", opts_for("odes_projective.scene"));
  CHECK(ode.exit_code == kExitOk);
  CHECK(ode.report["records"][0]["is_projective"] == true);

  auto par = run_command("paracr", opts_for("paracr_planted.scene"));
  CHECK(par.exit_code == kExitOk);
  CHECK(par.report["records"][0]["all_covanish"] == true);
  CHECK(par.report["records"][0]["samples"][0]["defect_values"] == Json::array({"1", "0"}));
  CHECK(par.report["records"][0]["samples"][0]["weyl_components"] == Json::array({"-1", "0"}));
}

TEST_CASE("reports are byte-identical across runs", "[cli][property]") {
  for (const char* scene : {"sphere.scene", "weyl_ew_false.scene", "paracr_planted.scene"}) {
    auto a = run_command(scene == std::string("weyl_ew_false.scene") ? "einstein-weyl" : "beltrami",
                         opts_for(scene));
    auto b = run_command(scene == std::string("weyl_ew_false.scene") ? "einstein-weyl" : "beltrami",
                         opts_for(scene));
    CHECK(a.report.dump() == b.report.dump());
  }
}

TEST_CASE("exit-code contract, one scene per command", "[cli][property]") {
  // 0 on clean verdicts
  CHECK(run_cli("beltrami --scene " + scene_path("flat.scene")) == 0);
  CHECK(run_cli("analyze-metric --scene " + scene_path("sphere.scene")) == 0);
  CHECK(run_cli("analyze-connection --scene " + scene_path("metrizable_flat.scene")) == 0);
  CHECK(run_cli("thomas --scene " + scene_path("metrizable_flat.scene")) == 0);
  CHECK(run_cli("metrizable --scene " + scene_path("metrizable_flat.scene")) == 0);
  CHECK(run_cli("equivalent --scene " + scene_path("equivalent_pair.scene")) == 0);
  CHECK(run_cli("odes --scene " + scene_path("odes_projective.scene")) == 0);
  CHECK(run_cli("quartic --coeffs 1,0,0,0,0") == 0);
  CHECK(run_cli("twistor-type --scene " + scene_path("nonflat.scene")) == 0);
  CHECK(run_cli("identities --scene " + scene_path("sphere.scene")) == 0);
  CHECK(run_cli("paracr --scene " + scene_path("paracr_planted.scene")) == 0);
  CHECK(run_cli("einstein-weyl --scene " + scene_path("sphere.scene")) == 0);
  CHECK(run_cli("geodesic --scene " + scene_path("sphere.scene") + " --steps 10") == 0);
  // 2 on property-fails verdicts
  CHECK(run_cli("equivalent --scene " + scene_path("equivalent_pair_no.scene")) == 2);
  CHECK(run_cli("odes --scene " + scene_path("odes_quartic.scene")) == 2);
  CHECK(run_cli("einstein-weyl --scene " + scene_path("weyl_ew_false.scene")) == 2);
  // 1 on errors
  CHECK(run_cli("beltrami --scene " + scene_path("bad_var.scene")) == 1);
  CHECK(run_cli("beltrami --scene /nonexistent.scene") == 1);
  CHECK(run_cli("metrizable --scene " + scene_path("flat.scene")) == 1); // missing [connection]
}

TEST_CASE("geodesic CSV shape", "[cli]") {
  DriverOptions o = opts_for("sphere.scene");
  o.steps = 5;
  o.step = 1e-2;
  auto res = run_command("geodesic", o);
  REQUIRE(res.is_csv);
  std::istringstream csv(res.csv);
  std::string header;
  std::getline(csv, header);
  CHECK(header == "t,x0,x1,x2");
  int rows = 0;
  std::string line;
  while (std::getline(csv, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 6);
}

TEST_CASE("signature override and timings flag", "[cli]") {
  DriverOptions o = opts_for("flat.scene");
  o.signature = -1;
  auto res = run_command("analyze-metric", o);
  CHECK(res.report["records"][0]["epsilon"] == -1);
  CHECK_FALSE(res.report.contains("timings_ms"));
  o.timings = true;
  auto res2 = run_command("analyze-metric", o);
  CHECK(res2.report.contains("timings_ms"));
}
