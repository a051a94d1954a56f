// One line per acceptance criterion; exit status is the number of failures.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <queue>
#include <random>
#include <sstream>
#include <string>

#include <json.hpp>

#include "btsurf/building.hpp"
#include "btsurf/detect.hpp"
#include "btsurf/error.hpp"
#include "cli.hpp"
#include "homology_oracle.hpp"
#include "support.hpp"

using namespace btsurf;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

std::vector<long> normalized(std::vector<long> v) {
  long m = *std::min_element(v.begin(), v.end());
  for (auto& x : v) x -= m;
  return v;
}

Outcome distance_oracle() {
  Outcome out;
  std::size_t pairs = 0;
  for (std::size_t n = 2; n <= 4; ++n) {
    std::vector<std::vector<long>> all;
    std::vector<long> v(n, 0);
    while (true) {
      all.push_back(v);
      std::size_t i = 0;
      while (i < n && v[i] == 3) v[i++] = 0;
      if (i == n) break;
      ++v[i];
    }
    std::vector<bt::LatticeBasis> bases;
    for (const auto& e : all) bases.push_back(bt::DiagonalClass(e).basis());
    for (std::size_t a = 0; a < all.size(); ++a) {
      std::map<std::vector<long>, long> dist{{normalized(all[a]), 0}};
      std::queue<std::vector<long>> q;
      q.push(normalized(all[a]));
      while (!q.empty()) {
        auto x = q.front();
        q.pop();
        long dx = dist[x];
        if (dx == 6) continue;
        for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << n); ++mask) {
          auto y = x;
          for (std::size_t i = 0; i < n; ++i) y[i] += static_cast<long>(mask >> i & 1);
          y = normalized(y);
          if (dist.emplace(y, dx + 1).second) q.push(y);
        }
      }
      for (std::size_t b = 0; b < all.size(); ++b, ++pairs) {
        long got = bt::graph_distance(bases[a], bases[b]);
        out.require(got == dist.at(normalized(all[b])), "pair " + bt::format_exponents(all[a]) + " " + bt::format_exponents(all[b]));
      }
    }
  }
  out.detail = out.ok ? std::to_string(pairs) + " pairs" : out.detail;
  return out;
}

Outcome flags() {
  Outcome out;
  for (long n = -3; n <= 3; ++n) {
    auto p = bt::standard_lambda_prime(n), l = bt::standard_lambda(n), l1 = bt::standard_lambda(n + 1);
    out.require(bt::adjacent(p, l), "adjacent(L'_n, L_n) n=" + std::to_string(n));
    out.require(bt::adjacent(p, l1), "adjacent(L'_n, L_n+1) n=" + std::to_string(n));
    out.require(bt::graph_distance(l, l1) == 2, "distance(L_n, L_n+1) n=" + std::to_string(n));
    // t L' < L_{n+1} < L' and t L' < L_n < L'
    auto tp = p.scaled(ff::RatFunc::t_pow(1));
    for (const auto* x : {&l, &l1})
      out.require(bt::contains(p, *x) && bt::contains(*x, tp) && !bt::homothetic(*x, p) && !bt::homothetic(*x, tp),
                  "flag chain n=" + std::to_string(n));
  }
  if (out.ok) out.detail = "n = -3..3";
  return out;
}

Outcome trace_oracle() {
  Outcome out;
  std::mt19937_64 rng(3);
  auto st = grp::Presentation::parse(testing::slurp("solid_torus.pres"));
  auto hb = grp::Presentation::parse(testing::slurp("handlebody.pres"));
  auto ot = grp::Presentation::parse(testing::slurp("one_tet.pres"));
  std::vector<std::pair<grp::Presentation, grp::PermRep>> cases{
      {st, grp::PermRep::parse(testing::slurp("solid_torus_d1.perm"), st)},
      {st, grp::PermRep::parse(testing::slurp("solid_torus_d2.perm"), st)},
      {hb, grp::PermRep::parse(testing::slurp("handlebody_d2.perm"), hb)},
      {hb, grp::PermRep(4, {{1, 2, 3, 0}, {1, 0, 2, 3}})},
      {ot, grp::PermRep(4, {{1, 2, 3, 0}, {1, 2, 3, 0}})}};
  std::size_t words = 0;
  for (const auto& [pres, rep] : cases) {
    auto cs = grp::CosetStructure::build(pres, rep);
    grp::PsiMap psi;
    std::uniform_int_distribution<long> v(-2, 2);
    for (std::size_t i = 0; i < cs.schreier_generators().size(); ++i) psi.values.push_back(pres.relators.empty() ? v(rng) : 0);
    for (int it = 0; it < 200; ++it, ++words) {
      auto w = testing::random_word(rng, pres.rank(), 12);
      auto m = grp::induced_rep(w, cs, psi);
      ff::RatFunc expect;
      const auto tp = grp::trace_poly(m);
      for (const auto& [e, c] : tp.terms()) expect += ff::RatFunc(c) * ff::RatFunc::t_pow(e);
      out.require(grp::monomial_to_matrix(m).trace() == expect, "word " + pres.format(w));
    }
  }
  if (out.ok) out.detail = std::to_string(words) + " words";
  return out;
}

std::vector<grp::Word> gens_and_inverses(const grp::Presentation& pres) {
  std::vector<grp::Word> out;
  for (int g = 0; g < static_cast<int>(pres.rank()); ++g) {
    out.push_back(grp::Word::generator(g));
    out.push_back(grp::Word::generator(g).inverse());
  }
  return out;
}

Outcome pipeline(const std::string& stem, const std::string& perm, bool character) {
  Outcome out;
  auto l = testing::load(stem, perm);
  auto p = det::Pipeline::build(testing::detect_input(l));
  auto h = det::compute_heights(p, {});
  auto eq = det::check_equivariance(p, h, gens_and_inverses(p.dual.pres), true);
  out.require(eq.checks == 2 * p.dual.pres.rank() * l.tri.size() * 4, "equivariance coverage");
  auto lb = det::check_tet_images(p, h, true);
  for (const auto& img : lb.tets)
    out.require(img.classes == 1 || (img.classes == 2 && img.distance == 2), "tet " + std::to_string(img.tet));
  auto dual = det::extract_dual_surface(lb, l.tri.size());
  out.require(dual == l.surface.scaled(2), "extracted vector is not 2 x input");
  std::string extra;
  if (character) {
    auto c = det::character_report(p.dual.pres, p.cosets, p.psi, det::report_words(p.dual.pres, p.cosets, {}));
    bool pole = false;
    for (const auto& row : c.rows) {
      out.require(row.symmetric, "asymmetric trace for " + row.word);
      if (row.valuation && *row.valuation <= -1) pole = true;
      if (row.symmetric) {
        // rebuild the trace from its w-coefficients
        grp::LaurentPoly back, wk;
        wk.add(0, 1);
        for (long coeff : row.w_coeffs) {
          for (const auto& [e, v] : wk.terms()) back.add(e, coeff * v);
          grp::LaurentPoly next;
          for (const auto& [e, v] : wk.terms()) {
            next.add(e + 1, v);
            next.add(e - 1, v);
          }
          wk = next;
        }
        out.require(back == row.trace, "w-rewrite of " + row.word);
      }
    }
    out.require(pole, "no trace with a pole at z = 0");
    extra = ", " + std::to_string(c.rows.size()) + " traces";
  }
  if (out.ok)
    out.detail = "d=" + std::to_string(p.degree()) + ", " + std::to_string(eq.checks) + " corner checks, " +
                 std::to_string(lb.two_class) + " two-class tets" + extra;
  return out;
}

Outcome corollary() {
  Outcome out;
  auto l = testing::load("handlebody", "handlebody_d2.perm");
  auto c = mfd::corollary_count(l.tri, l.dual, l.surface, l.coorientation, l.rep);
  out.require(c.surface_components >= c.plus_components + c.minus_components, "inequality");
  out.require(c.nonseparating_component >= 0, "no non-separating component");
  if (c.nonseparating_component >= 0) {
    auto cover = mfd::build_cover(l.tri, l.dual, l.rep);
    auto comp = c.lift_components[static_cast<std::size_t>(c.nonseparating_component)].vec;
    out.require(mfd::is_separating(cover.tri, comp).complement_components == 1, "cut complement is disconnected");
  }
  if (out.ok)
    out.detail = std::to_string(c.surface_components) + " >= " + std::to_string(c.plus_components) + " + " +
                 std::to_string(c.minus_components);
  return out;
}

Outcome psi_consistency() {
  Outcome out;
  for (const char* stem : {"solid_torus"}) {
    auto l = testing::load(stem, std::string(stem) + "_d1.perm");
    auto psi = mfd::psi_from_surface(l.tri, l.dual, l.surface, l.coorientation);
    out.require(psi.surjective, std::string(stem) + " psi not surjective");
    for (const auto& r : l.dual.pres.relators) {
      long s = 0;
      for (int x : r.letters()) s += (x > 0 ? 1 : -1) * psi.values[static_cast<std::size_t>(std::abs(x) - 1)];
      out.require(s == 0, std::string(stem) + " relator " + l.dual.pres.format(r));
    }
  }
  // the non-separating lift in the cover of the handlebody
  auto hb = testing::load("handlebody", "handlebody_d2.perm");
  auto p = det::Pipeline::build(testing::detect_input(hb));
  out.require(p.cover_psi.surjective, "lift psi not surjective");
  out.require(p.psi_geom.first_nonvanishing_relator(p.cosets, p.dual.pres) < 0, "lift psi on relators");
  std::vector<mfd::Triangulation> tris;
  for (const char* f : {"ball.tri", "solid_torus.tri", "handlebody.tri", "one_tet.tri"})
    tris.push_back(mfd::Triangulation::parse(testing::slurp(f)));
  tris.push_back(p.cover.tri);
  for (const auto& t : tris)
    out.require(grp::abelianize(mfd::fundamental_group(t).pres) == testing::homology_oracle(t), "homology oracle");
  if (out.ok) out.detail = std::to_string(tris.size()) + " triangulations";
  return out;
}

Outcome negative_controls() {
  Outcome out;
  auto base = [] {
    cli::RunConfig c;
    c.mode = "detect";
    c.triangulation = testing::fixture("handlebody.tri");
    c.surface = testing::fixture("handlebody.surf");
    c.coorientation = testing::fixture("handlebody.coor");
    c.perm = testing::fixture("handlebody_d2.perm");
    return c;
  };
  auto psi = base();
  psi.psi = testing::fixture("handlebody_d2_corrupt.psi");
  auto broken = base();
  broken.triangulation = testing::fixture("handlebody_broken.tri");
  std::string witnesses;
  for (const auto& cfg : {psi, broken}) {
    std::ostringstream o, e;
    int code = cli::run(cfg, o, e);
    auto j = nlohmann::json::parse(o.str());
    out.require(code == 2, "exit " + std::to_string(code));
    auto w = j["failure"].is_null() ? std::string() : j["failure"]["witness"].get<std::string>();
    out.require(!w.empty(), "empty witness");
    witnesses += (witnesses.empty() ? "" : "; ") + w;
  }
  if (out.ok) out.detail = witnesses;
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "building distance oracle", 10, distance_oracle},
      {2, "flag and adjacency", 1, flags},
      {3, "trace oracle", 5, trace_oracle},
      {4, "pipeline, classical case", 10, [] { return pipeline("solid_torus", "solid_torus_d1.perm", false); }},
      {5, "pipeline, covering case", 30, [] { return pipeline("handlebody", "handlebody_d2.perm", true); }},
      {6, "component counting", 5, corollary},
      {7, "psi consistency", 5, psi_consistency},
      {8, "negative controls", 5, negative_controls},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = secs < c.limit;
    bool pass = o.ok && in_time;
    if (!pass) ++failed;
    std::printf("%s %d %-26s %7.3f s (limit %g s)  %s%s\n", pass ? "PASS" : "FAIL", c.id, c.name, secs, c.limit,
                o.detail.c_str(), in_time ? "" : "  [over time]");
  }
  return failed;
}
