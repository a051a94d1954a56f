#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "btsurf/building.hpp"
#include "btsurf/detect.hpp"
#include "btsurf/error.hpp"
#include "btsurf/manifold.hpp"
#include "btsurf/text.hpp"

namespace btsurf::cli {

namespace {

using json = nlohmann::json;

void require(const std::string& value, const char* flag, const std::string& mode) {
  if (value.empty()) throw InputError(mode + " requires " + flag);
}

json coords_json(const mfd::NormalSurface& s) {
  json out = json::array();
  for (const auto& row : s.coords()) out.push_back(std::vector<long>(row.begin(), row.end()));
  return out;
}

json failure_json(const std::string& kind, const std::string& witness, const std::string& message) {
  return {{"kind", kind}, {"witness", witness}, {"message", message}};
}

det::Gauge parse_gauge(const std::string& g) {
  det::Gauge out;
  auto dot = g.find('.');
  if (dot == std::string::npos) {
    out.corner = static_cast<int>(text::parse_long(g, "gauge corner"));
  } else {
    out.tet = static_cast<int>(text::parse_long(std::string_view(g).substr(0, dot), "gauge tetrahedron"));
    out.corner = static_cast<int>(text::parse_long(std::string_view(g).substr(dot + 1), "gauge corner"));
  }
  return out;
}

struct Inputs {
  mfd::Triangulation tri;
  std::optional<mfd::NormalSurface> surface;
  std::optional<mfd::Coorientation> coorientation;
};

Inputs load(const RunConfig& cfg) {
  Inputs in;
  require(cfg.triangulation, "a triangulation", cfg.mode);
  in.tri = mfd::Triangulation::parse(text::read_file(cfg.triangulation));
  if (!cfg.surface.empty()) in.surface = mfd::NormalSurface::parse(text::read_file(cfg.surface), in.tri.size());
  if (!cfg.coorientation.empty()) {
    if (!in.surface) throw InputError("--coor needs --surf");
    in.coorientation = mfd::Coorientation::parse(text::read_file(cfg.coorientation), *in.surface);
  }
  return in;
}

json surface_json(const mfd::Triangulation& tri, const mfd::NormalSurface& s) {
  auto nr = mfd::normal_check(tri, s);
  json comps = json::array();
  for (const auto& c : nr.components)
    comps.push_back({{"euler", c.euler}, {"discs", c.discs}, {"two_sided", c.two_sided}, {"coords", coords_json(c.vec)}});
  auto sep = mfd::is_separating(tri, s);
  return {{"euler", nr.euler},
          {"components", comps},
          {"component_count", nr.components.size()},
          {"orientable", nr.orientable},
          {"separating", sep.separating},
          {"complement_components", sep.complement_components},
          {"first_crowded_tet", mfd::first_crowded_tet(s)},
          {"pipeline_ready", mfd::first_crowded_tet(s) < 0 && !s.empty()}};
}

json validate_cmd(const RunConfig& cfg, std::optional<json>& failure) {
  auto in = load(cfg);
  auto v = mfd::validate(in.tri);
  json issues = json::array();
  for (const auto& i : v.issues) issues.push_back({{"kind", i.kind}, {"simplex", i.simplex}, {"message", i.message}});
  json r;
  r["triangulation"] = {{"ok", v.ok},
                        {"orientable", v.orientable},
                        {"connected", v.connected},
                        {"tets", in.tri.size()},
                        {"vertices", v.vertices},
                        {"edges", v.edges},
                        {"boundary_faces", v.boundary_faces},
                        {"issues", issues}};
  if (!v.ok) {
    const auto& i = v.issues.front();
    failure = failure_json("triangulation_" + i.kind, i.simplex, i.message);
    return r;
  }
  auto dual = mfd::fundamental_group(in.tri);
  auto ab = grp::abelianize(dual.pres);
  json rels = json::array();
  for (const auto& w : dual.pres.relators) rels.push_back(dual.pres.format(w));
  r["fundamental_group"] = {{"generators", dual.pres.generators},
                            {"relators", rels},
                            {"abelianization", {{"rank", ab.rank}, {"torsion", ab.torsion}, {"text", ab.str()}}}};
  if (in.surface) {
    r["surface"] = surface_json(in.tri, *in.surface);
    if (in.coorientation) {
      mfd::check_coorientation(in.tri, *in.surface, *in.coorientation);
      r["surface"]["coorientation_consistent"] = true;
      if (mfd::first_crowded_tet(*in.surface) < 0) {
        auto psi = mfd::psi_from_surface(in.tri, dual, *in.surface, *in.coorientation);
        long bad = -1;
        for (std::size_t k = 0; k < dual.pres.relators.size() && bad < 0; ++k) {
          long s = 0;
          for (int x : dual.pres.relators[k].letters()) s += (x > 0 ? 1 : -1) * psi.values[static_cast<std::size_t>(std::abs(x) - 1)];
          if (s != 0) bad = static_cast<long>(k);
        }
        r["psi"] = {{"values", psi.values}, {"surjective", psi.surjective}, {"relator_failure", bad}};
        if (bad >= 0) throw CheckFailure("psi_relator", dual.pres.format(dual.pres.relators[static_cast<std::size_t>(bad)]),
                                         "intersection homomorphism does not vanish on a relator");
      }
    }
  }
  return r;
}

json cover_cmd(const RunConfig& cfg) {
  auto in = load(cfg);
  require(cfg.perm, "--perm", cfg.mode);
  mfd::require_valid(in.tri);
  auto dual = mfd::fundamental_group(in.tri);
  auto rep = grp::PermRep::parse(text::read_file(cfg.perm), dual.pres);
  rep.validate(dual.pres);
  auto cover = mfd::build_cover(in.tri, dual, rep);
  auto v = mfd::validate(cover.tri);
  json r;
  r["cover"] = {{"degree", cover.degree}, {"tets", cover.tri.size()}, {"valid", v.ok}, {"connected", v.connected}};
  if (!cfg.cover_out.empty()) {
    std::ofstream out(cfg.cover_out, std::ios::binary);
    if (!out) throw InputError("cannot write '" + cfg.cover_out + "'");
    out << cover.tri.serialize();
  }
  if (!v.ok) throw CheckFailure("cover_invalid", v.issues.front().simplex, v.issues.front().message);
  if (in.surface) {
    auto base = mfd::normal_check(in.tri, *in.surface);
    auto lifted = cover.lift(*in.surface);
    auto lr = mfd::normal_check(cover.tri, lifted);
    json comps = json::array();
    for (const auto& c : lr.components) {
      auto sep = mfd::is_separating(cover.tri, c.vec);
      comps.push_back({{"euler", c.euler}, {"discs", c.discs}, {"separating", sep.separating}});
    }
    std::size_t orbits = 0;
    if (base.components.size() == 1) orbits = grp::orbit_count(rep, mfd::surface_subgroup_words(in.tri, dual, *in.surface));
    r["lift"] = {{"base_euler", base.euler},
                 {"euler", lr.euler},
                 {"discs", lifted.total_discs()},
                 {"components", comps},
                 {"orbit_count", orbits}};
    if (lr.euler != static_cast<long>(cover.degree) * base.euler)
      throw CheckFailure("lift_euler", std::to_string(lr.euler), "Euler characteristic of the lift is not multiplied by the degree");
  }
  return r;
}

std::vector<grp::Word> read_words(const std::vector<std::string>& lines, const grp::Presentation& pres) {
  std::vector<grp::Word> out;
  for (const auto& l : lines) out.push_back(pres.parse_word(l));
  return out;
}

json corollary_cmd(const RunConfig& cfg) {
  json r;
  if (!cfg.presentation.empty()) {
    auto pres = grp::Presentation::parse(text::read_file(cfg.presentation));
    require(cfg.perm, "--perm", cfg.mode);
    require(cfg.subgroups, "--subgroups", cfg.mode);
    auto rep = grp::PermRep::parse(text::read_file(cfg.perm), pres);
    rep.validate(pres);
    std::map<std::string, std::vector<std::string>> groups;
    auto ls = text::lines(text::read_file(cfg.subgroups));
    if (ls.empty() || ls[0].text != "subgroups v1") throw InputError("expected header 'subgroups v1'");
    for (std::size_t i = 1; i < ls.size(); ++i) {
      auto colon = ls[i].text.find(':');
      if (colon == std::string::npos) ls[i].fail("expected '<surface|plus|minus>: <word>'");
      std::string key = text::trim(std::string_view(ls[i].text).substr(0, colon));
      if (key != "surface" && key != "plus" && key != "minus") ls[i].fail("unknown subgroup '" + key + "'");
      groups[key].push_back(text::trim(std::string_view(ls[i].text).substr(colon + 1)));
    }
    auto o = mfd::corollary_orbits(rep, read_words(groups["surface"], pres), read_words(groups["plus"], pres),
                                   read_words(groups["minus"], pres));
    r["orbits"] = {{"degree", rep.degree()}, {"surface", o.surface}, {"plus", o.plus}, {"minus", o.minus},
                   {"inequality_holds", o.inequality_holds()}};
    if (!o.inequality_holds()) throw CheckFailure("corollary_inequality", "orbits", "orbit counts violate the inequality");
    return r;
  }
  auto in = load(cfg);
  require(cfg.perm, "--perm", cfg.mode);
  if (!in.surface || !in.coorientation) throw InputError("corollary requires --surf and --coor");
  mfd::require_valid(in.tri);
  auto dual = mfd::fundamental_group(in.tri);
  auto rep = grp::PermRep::parse(text::read_file(cfg.perm), dual.pres);
  rep.validate(dual.pres);
  auto c = mfd::corollary_count(in.tri, dual, *in.surface, *in.coorientation, rep);
  json comps = json::array();
  for (const auto& lc : c.lift_components) comps.push_back({{"euler", lc.euler}, {"discs", lc.discs}});
  r["corollary"] = {{"degree", c.degree},
                    {"surface_components", c.surface_components},
                    {"plus_components", c.plus_components},
                    {"minus_components", c.minus_components},
                    {"inequality_holds", c.inequality_holds},
                    {"orbits", {{"surface", c.surface_orbits}, {"plus", c.plus_orbits}, {"minus", c.minus_orbits}}},
                    {"lift_components", comps},
                    {"nonseparating_component", c.nonseparating_component},
                    {"nonseparating_complement", c.nonseparating_complement}};
  if (!c.inequality_holds)
    throw CheckFailure("corollary_inequality", "components", "component counts violate the inequality");
  if (c.surface_components != c.surface_orbits || c.plus_components != c.plus_orbits || c.minus_components != c.minus_orbits)
    throw CheckFailure("corollary_orbits", "orbit counts", "component counts disagree with orbit counts");
  return r;
}

json character_json(const det::CharacterReport& c) {
  json rows = json::array();
  for (const auto& row : c.rows) {
    json v = row.valuation ? json(*row.valuation) : json(nullptr);
    rows.push_back({{"word", row.word}, {"trace", row.trace.str()}, {"valuation", v}, {"symmetric", row.symmetric},
                    {"w_coeffs", row.w_coeffs}});
  }
  return {{"rows", rows}, {"all_symmetric", c.all_symmetric}, {"nonconstant", c.nonconstant},
          {"pole_at_zero", c.pole_at_zero}, {"passed", c.passed()}};
}

det::DetectInput detect_input(const RunConfig& cfg, const Inputs& in) {
  require(cfg.perm, "--perm", cfg.mode);
  if (!in.surface || !in.coorientation) throw InputError(cfg.mode + " requires --surf and --coor");
  auto dual = mfd::fundamental_group(in.tri);
  det::DetectInput di;
  di.tri = in.tri;
  di.surface = *in.surface;
  di.coorientation = *in.coorientation;
  di.rep = grp::PermRep::parse(text::read_file(cfg.perm), dual.pres);
  if (!cfg.psi.empty()) {
    auto cs = grp::CosetStructure::build(dual.pres, di.rep);
    di.psi_override = grp::PsiMap::parse(text::read_file(cfg.psi), cs, dual.pres);
  }
  di.gauge = parse_gauge(cfg.gauge);
  di.cross_check = cfg.cross_check;
  di.seed = cfg.seed;
  di.extra_words = read_words(cfg.words, dual.pres);
  return di;
}

json detect_cmd(const RunConfig& cfg, std::optional<json>& failure) {
  auto in = load(cfg);
  mfd::require_valid(in.tri);
  auto rep = det::detect(detect_input(cfg, in));
  const auto& pres = rep.presentation;
  json r;
  r["gauge"] = {{"tet", rep.gauge.tet}, {"corner", rep.gauge.corner}, {"coset", 1}};
  r["cover"] = {{"degree", rep.degree},
                {"tets", rep.cover_tets},
                {"lift_components", rep.lift_components},
                {"lift_component", rep.lift_component},
                {"coset_reps", rep.coset_reps},
                {"schreier_words", rep.schreier_words}};
  r["psi"] = {{"values", rep.psi_values},
              {"geometric", rep.psi_geom_values},
              {"overridden", rep.psi_overridden},
              {"surjective", rep.psi_surjective},
              {"relator_failure", rep.psi_relator_failure}};
  if (rep.heights) {
    json rows = json::array();
    const auto& h = *rep.heights;
    for (std::size_t t = 0; t < h.tets; ++t)
      for (std::size_t i = 0; i < h.degree; ++i)
        rows.push_back({{"tet", t}, {"coset", i + 1}, {"h", h.h[t * h.degree + i]}});
    r["heights"] = {{"offset", h.offset}, {"rows", rows}};
  }
  if (rep.equivariance)
    r["equivariance"] = {{"words", rep.equivariance->words}, {"checks", rep.equivariance->checks},
                    {"cross_checks", rep.equivariance->cross_checks}, {"passed", true}};
  if (rep.tet_images) {
    json tets = json::array();
    for (const auto& t : rep.tet_images->tets) {
      json plus = json::array();
      for (int k = 0; k < 4; ++k)
        if (t.plus[static_cast<std::size_t>(k)]) plus.push_back(k);
      std::vector<int> crossed;
      for (int i : t.crossed_cosets) crossed.push_back(i + 1);
      json e = {{"tet", t.tet}, {"classes", t.classes}, {"distance", t.distance}, {"crossed_cosets", crossed},
                {"plus_corners", plus}, {"lambda_minus", t.lambda_minus}};
      if (t.classes == 2) {
        e["lambda_plus"] = t.lambda_plus;
        e["lambda_prime"] = t.lambda_prime;
      }
      tets.push_back(e);
    }
    r["tet_images"] = {{"tets", tets}, {"two_class", rep.tet_images->two_class}, {"cross_checks", rep.tet_images->cross_checks},
                    {"passed", true}};
  }
  if (rep.dual_surface)
    r["dual_surface"] = {{"coords", coords_json(*rep.dual_surface)},
                         {"components", rep.dual_components},
                         {"dual_equals_two_copies", rep.dual_equals_two_copies}};
  if (rep.character) r["character"] = character_json(*rep.character);
  if (rep.heights && !rep.failure) {
    json moving = json::array();
    for (int g : rep.moving_generators) moving.push_back(pres.generators[static_cast<std::size_t>(g)]);
    r["stabilizer"] = {{"moving_generators", moving}, {"proper", !rep.moving_generators.empty()},
                       {"note", rep.moving_generators.empty() ? "no nontriviality witness" : "stabilizer is proper"}};
  }
  if (rep.failure) failure = failure_json(rep.failure->kind, rep.failure->witness, rep.failure->message);
  return r;
}

json character_cmd(const RunConfig& cfg) {
  auto in = load(cfg);
  require(cfg.perm, "--perm", cfg.mode);
  mfd::require_valid(in.tri);
  auto dual = mfd::fundamental_group(in.tri);
  auto rep = grp::PermRep::parse(text::read_file(cfg.perm), dual.pres);
  auto cs = grp::CosetStructure::build(dual.pres, rep);
  grp::PsiMap psi;
  if (!cfg.psi.empty()) {
    psi = grp::PsiMap::parse(text::read_file(cfg.psi), cs, dual.pres);
  } else {
    psi = det::Pipeline::build(detect_input(cfg, in)).psi;
  }
  if (long k = psi.first_nonvanishing_relator(cs, dual.pres); k >= 0)
    throw CheckFailure("psi_relator", "relator " + std::to_string(k), "psi does not vanish on a subgroup relator");
  auto c = det::character_report(dual.pres, cs, psi, det::report_words(dual.pres, cs, read_words(cfg.words, dual.pres)));
  json r;
  r["character"] = character_json(c);
  r["degree"] = cs.degree();
  if (!c.passed()) throw CheckFailure("character", "traces", "no ideal point witnessed by the traces");
  return r;
}

json building_cmd(const RunConfig& cfg) {
  auto need = [&](std::size_t n) {
    if (cfg.matrices.size() != n)
      throw InputError("building " + cfg.submode + " takes " + std::to_string(n) + " matrix argument(s)");
  };
  json r;
  if (cfg.submode == "type") {
    need(1);
    bt::LatticeBasis a(Matrix::parse(cfg.matrices[0]));
    r["type"] = bt::vertex_type(a);
    return r;
  }
  need(2);
  bt::LatticeBasis a(Matrix::parse(cfg.matrices[0])), b(Matrix::parse(cfg.matrices[1]));
  if (a.dim() != b.dim()) throw InputError("lattices of different dimension");
  r["invariant_factors"] = bt::invariant_factor_exponents(a, b);
  r["homothetic"] = bt::homothetic(a, b);
  if (cfg.submode == "dist") {
    r["distance"] = bt::graph_distance(a, b);
  } else if (cfg.submode == "adjacent") {
    r["adjacent"] = bt::adjacent(a, b);
    if (auto f = bt::flag_witness(a, b))
      r["flag"] = {{"inner", f->inner.matrix().str()}, {"outer", f->outer.matrix().str()}, {"inner_is_first", f->inner_is_a}};
  } else {
    throw InputError("unknown building operation '" + cfg.submode + "'");
  }
  return r;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  json report;
  report["schema"] = kSchema;
  report["command"] = cfg.submode.empty() ? cfg.mode : cfg.mode + " " + cfg.submode;
  report["failure"] = nullptr;
  int code = kPass;
  try {
    json body;
    std::optional<json> failure;
    if (cfg.mode == "validate") body = validate_cmd(cfg, failure);
    else if (cfg.mode == "cover") body = cover_cmd(cfg);
    else if (cfg.mode == "corollary") body = corollary_cmd(cfg);
    else if (cfg.mode == "detect") body = detect_cmd(cfg, failure);
    else if (cfg.mode == "character") body = character_cmd(cfg);
    else if (cfg.mode == "building") body = building_cmd(cfg);
    else throw InputError("unknown mode '" + cfg.mode + "'");
    for (auto it = body.begin(); it != body.end(); ++it) report[it.key()] = it.value();
    if (failure) {
      report["failure"] = *failure;
      code = kCheckFailure;
    }
  } catch (const CheckFailure& e) {
    report["failure"] = failure_json(e.kind, e.witness, e.what());
    code = kCheckFailure;
  } catch (const InputError& e) {
    report["failure"] = failure_json("input", "", e.what());
    code = kInputError;
  } catch (const DivisionByZero& e) {
    report["failure"] = failure_json("input", "", e.what());
    code = kInputError;
  }
  report["status"] = code == kPass ? "pass" : code == kCheckFailure ? "fail" : "error";
  report["exit_code"] = code;
  if (cfg.verbosity > 0 && code != kPass) log << "btsurf: " << report["failure"]["message"].get<std::string>() << "\n";

  std::string text = report.dump(2) + "\n";
  if (cfg.report.empty()) {
    out << text;
  } else {
    std::ofstream f(cfg.report, std::ios::binary);
    if (!f) {
      log << "btsurf: cannot write report '" << cfg.report << "'\n";
      return kInputError;
    }
    f << text;
  }
  return code;
}

int main_entry(int argc, char** argv) {
  CLI::App app{"btsurf: surfaces from ideal points via lattice actions"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_option("--report", cfg.report, "write the JSON report here instead of stdout");
  app.add_flag("-v,--verbose", cfg.verbosity, "print failures to stderr");

  auto common = [&](CLI::App* sub) {
    sub->add_option("triangulation", cfg.triangulation, "triangulation file")->required();
    sub->add_option("--surf", cfg.surface, "normal surface file");
    sub->add_option("--coor", cfg.coorientation, "coorientation file");
  };
  auto* validate = app.add_subcommand("validate", "check a triangulation and optional surface");
  common(validate);
  auto* cover = app.add_subcommand("cover", "build the cover given by a permutation representation");
  common(cover);
  cover->add_option("--perm", cfg.perm, "permutation representation file")->required();
  cover->add_option("--out", cfg.cover_out, "write the cover triangulation here");

  auto* corollary = app.add_subcommand("corollary", "count components over a separating surface");
  corollary->add_option("triangulation", cfg.triangulation, "triangulation file");
  corollary->add_option("--surf", cfg.surface, "normal surface file");
  corollary->add_option("--coor", cfg.coorientation, "coorientation file");
  corollary->add_option("--perm", cfg.perm, "permutation representation file")->required();
  corollary->add_option("--pres", cfg.presentation, "group-only mode: presentation file");
  corollary->add_option("--subgroups", cfg.subgroups, "group-only mode: subgroup generator file");

  auto* detect = app.add_subcommand("detect", "run the full pipeline");
  common(detect);
  detect->add_option("--perm", cfg.perm, "permutation representation file")->required();
  detect->add_option("--psi", cfg.psi, "psi values on Schreier generators (replaces the geometric one)");
  detect->add_option("--gauge", cfg.gauge, "base corner, '<corner>' or '<tet>.<corner>'");
  detect->add_option("--seed", cfg.seed, "seed for the sampled equivariance words");
  detect->add_option("--word", cfg.words, "extra word for the character table");
  detect->add_flag("--cross-check", cfg.cross_check, "repeat diagonal computations with general lattice operations");

  auto* character = app.add_subcommand("character", "trace table of the induced representation");
  common(character);
  character->add_option("--perm", cfg.perm, "permutation representation file")->required();
  character->add_option("--psi", cfg.psi, "psi values on Schreier generators");
  character->add_option("--word", cfg.words, "extra word");

  auto* building = app.add_subcommand("building", "lattice queries: dist A B | adjacent A B | type A");
  building->add_option("op", cfg.submode, "dist, adjacent or type")->required();
  building->add_option("matrices", cfg.matrices, "matrices such as 't, 0; 0, t^-1'")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }
  for (auto* sub : app.get_subcommands()) cfg.mode = sub->get_name();
  return run(cfg, std::cout, std::cerr);
}

}  // namespace btsurf::cli
