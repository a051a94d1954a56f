#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"
#include "support.hpp"

using btsurf::cli::RunConfig;
using nlohmann::json;
using testing::fixture;

namespace {

struct Result {
  int code;
  json report;
  std::string text;
};

Result run(const RunConfig& cfg) {
  std::ostringstream out, log;
  int code = btsurf::cli::run(cfg, out, log);
  return {code, json::parse(out.str()), out.str()};
}

RunConfig detect_cfg(const std::string& stem, const std::string& perm) {
  RunConfig c;
  c.mode = "detect";
  c.triangulation = fixture(stem + ".tri");
  c.surface = fixture(stem + ".surf");
  c.coorientation = fixture(stem + ".coor");
  c.perm = fixture(perm);
  return c;
}

}  // namespace

TEST_CASE("validate on shipped fixtures") {
  for (const char* stem : {"solid_torus", "handlebody", "ball", "one_tet"}) {
    RunConfig c;
    c.mode = "validate";
    c.triangulation = fixture(std::string(stem) + ".tri");
    auto r = run(c);
    CHECK(r.code == 0);
    CHECK(r.report["schema"] == btsurf::cli::kSchema);
    CHECK(r.report["status"] == "pass");
    CHECK(r.report["triangulation"]["ok"] == true);
  }
  RunConfig c;
  c.mode = "validate";
  c.triangulation = fixture("solid_torus.tri");
  c.surface = fixture("solid_torus.surf");
  c.coorientation = fixture("solid_torus.coor");
  auto r = run(c);
  CHECK(r.code == 0);
  CHECK(r.report["surface"]["separating"] == false);
  CHECK(r.report["psi"]["surjective"] == true);
  CHECK(r.report["fundamental_group"]["abelianization"]["rank"] == 1);
}

TEST_CASE("detect passes and reports two copies") {
  for (auto [stem, perm] : {std::pair{"solid_torus", "solid_torus_d1.perm"}, std::pair{"handlebody", "handlebody_d2.perm"}}) {
    auto r = run(detect_cfg(stem, perm));
    CHECK(r.code == 0);
    CHECK(r.report["dual_surface"]["dual_equals_two_copies"] == true);
    CHECK(r.text.find("\"dual_equals_two_copies\": true") != std::string::npos);
    CHECK(r.report["equivariance"]["passed"] == true);
    CHECK(r.report["tet_images"]["passed"] == true);
    CHECK(r.report["character"]["passed"] == true);
    CHECK(r.report["gauge"]["corner"] == 0);
    CHECK(r.report["failure"].is_null());
  }
}

TEST_CASE("reports are byte-identical across runs") {
  auto cfg = detect_cfg("handlebody", "handlebody_d2.perm");
  cfg.seed = 5;
  cfg.cross_check = true;
  CHECK(run(cfg).text == run(cfg).text);
}

TEST_CASE("negative controls exit 2 with a witness") {
  auto psi = detect_cfg("handlebody", "handlebody_d2.perm");
  psi.psi = fixture("handlebody_d2_corrupt.psi");
  auto r = run(psi);
  CHECK(r.code == 2);
  CHECK(r.report["status"] == "fail");
  CHECK(r.report["failure"]["kind"] == "equivariance");
  CHECK(r.report["failure"]["witness"].get<std::string>().find("word=") == 0);

  auto broken = detect_cfg("handlebody", "handlebody_d2.perm");
  broken.triangulation = fixture("handlebody_broken.tri");
  r = run(broken);
  CHECK(r.code == 2);
  CHECK(r.report["failure"]["witness"].get<std::string>().find("tet ") == 0);

  RunConfig v;
  v.mode = "validate";
  v.triangulation = fixture("handlebody_broken.tri");
  r = run(v);
  CHECK(r.code == 2);
  CHECK(r.report["triangulation"]["ok"] == false);
}

TEST_CASE("input errors exit 1") {
  auto missing = detect_cfg("handlebody", "handlebody_d2.perm");
  missing.triangulation = fixture("no_such_file.tri");
  CHECK(run(missing).code == 1);
  auto wrong = detect_cfg("handlebody", "solid_torus_d1.perm");
  CHECK(run(wrong).code == 1);
  auto gauge = detect_cfg("handlebody", "handlebody_d2.perm");
  gauge.gauge = "x";
  CHECK(run(gauge).code == 1);
  RunConfig b;
  b.mode = "building";
  b.submode = "dist";
  b.matrices = {"t, 0; 0, 1"};
  CHECK(run(b).code == 1);
  b.matrices = {"1, 0; 0, 1", "0, 0; 0, 1"};
  CHECK(run(b).code == 1);
}

TEST_CASE("gauge and seed are recorded") {
  auto cfg = detect_cfg("handlebody", "handlebody_d2.perm");
  cfg.gauge = "3.2";
  cfg.seed = 9;
  auto r = run(cfg);
  CHECK(r.code == 0);
  CHECK(r.report["gauge"]["tet"] == 3);
  CHECK(r.report["gauge"]["corner"] == 2);
}

TEST_CASE("cover and corollary") {
  RunConfig c;
  c.mode = "cover";
  c.triangulation = fixture("solid_torus.tri");
  c.surface = fixture("solid_torus.surf");
  c.perm = fixture("solid_torus_d2.perm");
  auto out = (std::filesystem::temp_directory_path() / "btsurf_cover_test.tri").string();
  c.cover_out = out;
  auto r = run(c);
  CHECK(r.code == 0);
  CHECK(r.report["cover"]["tets"] == 12);
  CHECK(r.report["cover"]["connected"] == true);
  CHECK(r.report["lift"]["euler"] == 2 * r.report["lift"]["base_euler"].get<long>());
  CHECK(std::filesystem::exists(out));
  std::filesystem::remove(out);

  RunConfig k;
  k.mode = "corollary";
  k.triangulation = fixture("handlebody.tri");
  k.surface = fixture("handlebody.surf");
  k.coorientation = fixture("handlebody.coor");
  k.perm = fixture("handlebody_d2.perm");
  r = run(k);
  CHECK(r.code == 0);
  CHECK(r.report["corollary"]["surface_components"] == 2);
  CHECK(r.report["corollary"]["nonseparating_component"].get<int>() >= 0);

  RunConfig g;
  g.mode = "corollary";
  g.presentation = fixture("handlebody.pres");
  g.perm = fixture("handlebody_d2.perm");
  g.subgroups = fixture("handlebody.subgroups");
  r = run(g);
  CHECK(r.code == 0);
  CHECK(r.report["orbits"]["surface"] == 2);
  CHECK(r.report["orbits"]["plus"] == 1);
  CHECK(r.report["orbits"]["minus"] == 1);
}

TEST_CASE("character subcommand") {
  RunConfig c = detect_cfg("handlebody", "handlebody_d2.perm");
  c.mode = "character";
  c.words = {"g0 g1^-1 g0"};
  auto r = run(c);
  CHECK(r.code == 0);
  CHECK(r.report["degree"] == 2);
  bool found = false;
  for (const auto& row : r.report["character"]["rows"]) found = found || row["word"] == "g0 g1^-1 g0";
  CHECK(found);
}

TEST_CASE("building queries") {
  RunConfig b;
  b.mode = "building";
  b.submode = "dist";
  b.matrices = {"t, 0; 0, t^-1", "t^2, 0; 0, t^-2"};
  auto r = run(b);
  CHECK(r.code == 0);
  CHECK(r.report["distance"] == 2);
  b.submode = "adjacent";
  b.matrices = {"1, 0; 0, t^-1", "t, 0; 0, t^-1"};
  r = run(b);
  CHECK(r.report["adjacent"] == true);
  CHECK(r.report.contains("flag"));
  b.submode = "type";
  b.matrices = {"1, 0; 0, t^-1"};
  r = run(b);
  CHECK(r.report["type"] == 1);
}

TEST_CASE("report file") {
  auto cfg = detect_cfg("solid_torus", "solid_torus_d1.perm");
  auto path = (std::filesystem::temp_directory_path() / "btsurf_report_test.json").string();
  cfg.report = path;
  std::ostringstream out, log;
  CHECK(btsurf::cli::run(cfg, out, log) == 0);
  CHECK(out.str().empty());
  std::ifstream in(path);
  auto j = json::parse(in);
  CHECK(j["status"] == "pass");
  std::filesystem::remove(path);
}
