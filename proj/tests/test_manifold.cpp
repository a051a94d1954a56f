#include <doctest.h>

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "btsurf/error.hpp"
#include "btsurf/manifold.hpp"
#include "homology_oracle.hpp"
#include "support.hpp"

using namespace btsurf;
using mfd::NormalSurface;
using mfd::Triangulation;
using testing::homology_oracle;
using testing::smith_diagonal;

namespace {

Triangulation tri_of(const std::string& name) { return Triangulation::parse(testing::slurp(name)); }

std::size_t lift_component_count(const mfd::Cover& cover, const NormalSurface& s) {
  return mfd::normal_check(cover.tri, cover.lift(s)).components.size();
}

}  // namespace

TEST_CASE("homology oracle sanity") {
  CHECK(smith_diagonal({{2, 4}, {6, 8}}) == std::vector<long>{2, 4});
  CHECK(smith_diagonal({{4}}) == std::vector<long>{4});
  CHECK(smith_diagonal({{2, 0}, {0, 3}}) == std::vector<long>{1, 6});
}

TEST_CASE("validation examples") {
  auto ball = tri_of("ball.tri");
  auto v = mfd::validate(ball);
  CHECK(v.ok);
  CHECK(v.orientable);
  CHECK(v.boundary_faces == 4);

  auto hb = tri_of("handlebody.tri");
  CHECK(mfd::validate(hb).ok);
  CHECK(mfd::validate(tri_of("solid_torus.tri")).ok);
  CHECK(mfd::validate(tri_of("one_tet.tri")).ok);

  auto broken = hb;
  auto g = *broken.gluing(0, 0);
  broken.set_one_side(0, 0, std::nullopt);
  auto bv = mfd::validate(broken);
  CHECK_FALSE(bv.ok);
  REQUIRE_FALSE(bv.issues.empty());
  CHECK(bv.issues[0].kind == "involution");
  bool named = bv.issues[0].simplex == "tet 0 face 0" ||
               bv.issues[0].simplex == "tet " + std::to_string(g.tet) + " face " + std::to_string(g.face);
  CHECK(named);
  CHECK_THROWS_AS(mfd::require_valid(broken), CheckFailure);

  auto flipped = mfd::validate(tri_of("handlebody_broken.tri"));
  CHECK_FALSE(flipped.ok);
  CHECK(flipped.issues[0].kind == "orientability");
}

TEST_CASE("triangulation parser") {
  auto hb = tri_of("handlebody.tri");
  CHECK(Triangulation::parse(hb.serialize()).serialize() == hb.serialize());
  CHECK_THROWS_AS(Triangulation::parse("tri v1\ntet 1\nglue 0.0 boundary extra\nglue 0.1 boundary\nglue 0.2 boundary\nglue 0.3 boundary\n"),
                  InputError);
  CHECK_THROWS_AS(Triangulation::parse("tri v1\ntet 1\nglue 0.0 boundary\nglue 0.1 boundary\nglue 0.2 boundary\n"), InputError);
  CHECK_THROWS_AS(Triangulation::parse("tri v2\ntet 0\n"), InputError);
  CHECK_THROWS_AS(NormalSurface::parse("surf v1\n1 0 0 0 0 0 0 9\n", 1), InputError);
  CHECK_THROWS_AS(NormalSurface::parse("surf v1\n-1 0 0 0 0 0 0\n", 1), InputError);
}

TEST_CASE("abelianization of the dual presentation matches cellular homology") {
  for (const char* name : {"ball.tri", "solid_torus.tri", "handlebody.tri", "one_tet.tri"}) {
    CAPTURE(name);
    auto tri = tri_of(name);
    auto ab = grp::abelianize(mfd::fundamental_group(tri).pres);
    CHECK(ab == homology_oracle(tri));
  }
  CHECK(grp::abelianize(mfd::fundamental_group(tri_of("solid_torus.tri")).pres) == grp::Abelianization{1, {}});
  CHECK(grp::abelianize(mfd::fundamental_group(tri_of("ball.tri")).pres) == grp::Abelianization{0, {}});
  CHECK(grp::abelianize(mfd::fundamental_group(tri_of("handlebody.tri")).pres) == grp::Abelianization{2, {}});
}

TEST_CASE("dual loops read back their words") {
  auto tri = tri_of("handlebody.tri");
  auto dual = mfd::fundamental_group(tri);
  std::mt19937_64 rng(4);
  for (int it = 0; it < 50; ++it) {
    auto w = testing::random_word(rng, dual.pres.rank(), 8);
    CHECK(dual.word_of(dual.loop_crossings(w)) == w);
  }
}

TEST_CASE("covers") {
  auto st = testing::load("solid_torus", "solid_torus_d1.perm");
  auto trivial = mfd::build_cover(st.tri, st.dual, st.rep);
  CHECK(trivial.tri.serialize() == st.tri.serialize());

  auto st2 = testing::load("solid_torus", "solid_torus_d2.perm");
  auto c2 = mfd::build_cover(st2.tri, st2.dual, st2.rep);
  CHECK(c2.tri.size() == 2 * st2.tri.size());
  auto v = mfd::validate(c2.tri);
  CHECK(v.ok);
  CHECK(v.connected);
  CHECK(grp::abelianize(mfd::fundamental_group(c2.tri).pres) == homology_oracle(c2.tri));

  for (auto* l : {&st2, &st}) {
    auto cover = mfd::build_cover(l->tri, l->dual, l->rep);
    auto base = mfd::normal_check(l->tri, l->surface);
    auto lifted = cover.lift(l->surface);
    auto nr = mfd::normal_check(cover.tri, lifted);
    CHECK(nr.euler == static_cast<long>(cover.degree) * base.euler);
    CHECK(lifted.total_discs() == static_cast<long>(cover.degree) * l->surface.total_discs());
    CHECK(cover.push_down(lifted) == l->surface.scaled(static_cast<long>(cover.degree)));
    CHECK(nr.components.size() == grp::orbit_count(l->rep, mfd::surface_subgroup_words(l->tri, l->dual, l->surface)));
  }

  auto hb = testing::load("handlebody", "handlebody_d2.perm");
  auto hc = mfd::build_cover(hb.tri, hb.dual, hb.rep);
  CHECK(mfd::validate(hc.tri).ok);
  CHECK(grp::abelianize(mfd::fundamental_group(hc.tri).pres) == homology_oracle(hc.tri));
  CHECK(lift_component_count(hc, hb.surface) ==
        grp::orbit_count(hb.rep, mfd::surface_subgroup_words(hb.tri, hb.dual, hb.surface)));
}

TEST_CASE("normal surface components and Euler characteristic") {
  auto one = tri_of("one_tet.tri");
  auto link = NormalSurface::parse(testing::slurp("one_tet_link.surf"), one.size());
  auto nr = mfd::normal_check(one, link);
  CHECK(nr.euler == 2);
  CHECK(nr.components.size() == 1);
  CHECK(mfd::is_separating(one, link).separating);

  auto st = testing::load("solid_torus", "solid_torus_d1.perm");
  CHECK(mfd::normal_check(st.tri, NormalSurface::zero(st.tri.size())).components.empty());
  auto two = st.surface + st.surface;
  CHECK(two == st.surface.scaled(2));
  auto tr = mfd::normal_check(st.tri, two);
  CHECK(tr.components.size() == 2);
  CHECK(tr.euler == 2 * mfd::normal_check(st.tri, st.surface).euler);

  auto bad = st.surface;
  bad[0][3] += 1;
  CHECK_THROWS_AS(mfd::normal_check(st.tri, bad), CheckFailure);
  auto quads = NormalSurface::zero(st.tri.size());
  quads[0][4] = 1;
  quads[0][5] = 1;
  CHECK_THROWS_AS(mfd::normal_check(st.tri, quads), CheckFailure);
}

TEST_CASE("separation") {
  auto st = testing::load("solid_torus", "solid_torus_d1.perm");
  auto sep = mfd::is_separating(st.tri, st.surface);
  CHECK_FALSE(sep.separating);
  CHECK(sep.complement_components == 1);
  auto two = mfd::is_separating(st.tri, st.surface.scaled(2));
  CHECK(two.separating);
  CHECK(two.complement_components == 2);

  auto hb = testing::load("handlebody", "handlebody_d2.perm");
  CHECK(mfd::is_separating(hb.tri, hb.surface).separating);
}

TEST_CASE("intersection homomorphism") {
  auto st = testing::load("solid_torus", "solid_torus_d1.perm");
  auto psi = mfd::psi_from_surface(st.tri, st.dual, st.surface, st.coorientation);
  CHECK(psi.surjective);
  // the core loop crosses the meridian disc once
  CHECK(psi.values == std::vector<long>{1});
  auto rev = mfd::psi_from_surface(st.tri, st.dual, st.surface, st.coorientation.reversed());
  CHECK(rev.values == std::vector<long>{-1});

  auto hb = testing::load("handlebody", "handlebody_d2.perm");
  auto hp = mfd::psi_from_surface(hb.tri, hb.dual, hb.surface, hb.coorientation);
  CHECK_FALSE(hp.surjective);
  for (long x : hp.values) CHECK(x == 0);

  for (auto* l : {&st, &hb}) {
    auto p = mfd::psi_from_surface(l->tri, l->dual, l->surface, l->coorientation);
    for (const auto& r : l->dual.pres.relators) {
      long s = 0;
      for (int x : r.letters()) s += (x > 0 ? 1 : -1) * p.values[static_cast<std::size_t>(std::abs(x) - 1)];
      CHECK(s == 0);
    }
    CHECK(p.surjective == !mfd::is_separating(l->tri, l->surface).separating);
  }
}

TEST_CASE("coorientation consistency") {
  auto st = testing::load("solid_torus", "solid_torus_d1.perm");
  CHECK_NOTHROW(mfd::check_coorientation(st.tri, st.surface, st.coorientation));
  auto signs = std::vector<std::vector<int>>();
  for (std::size_t t = 0; t < st.tri.size(); ++t) signs.push_back(st.coorientation.signs(t));
  signs[0][0] = -signs[0][0];
  CHECK_THROWS_AS(mfd::check_coorientation(st.tri, st.surface, mfd::Coorientation(signs)), CheckFailure);
  CHECK(mfd::Coorientation::parse(st.coorientation.serialize(), st.surface).serialize() == st.coorientation.serialize());
}

TEST_CASE("component counting over a separating surface") {
  auto hb = testing::load("handlebody", "handlebody_d2.perm");
  auto trivial = grp::PermRep(1, std::vector<grp::Perm>(hb.dual.pres.rank(), grp::Perm{0}));
  auto c1 = mfd::corollary_count(hb.tri, hb.dual, hb.surface, hb.coorientation, trivial);
  CHECK(c1.surface_components == 1);
  CHECK(c1.plus_components == 1);
  CHECK(c1.minus_components == 1);
  CHECK(c1.nonseparating_component < 0);

  auto c2 = mfd::corollary_count(hb.tri, hb.dual, hb.surface, hb.coorientation, hb.rep);
  CHECK(c2.surface_components == 2);
  CHECK(c2.plus_components == 1);
  CHECK(c2.minus_components == 1);
  CHECK(c2.inequality_holds);
  REQUIRE(c2.nonseparating_component >= 0);
  // cut oracle: the cover stays connected after cutting along that component
  auto cover = mfd::build_cover(hb.tri, hb.dual, hb.rep);
  auto comp = c2.lift_components[static_cast<std::size_t>(c2.nonseparating_component)].vec;
  CHECK(mfd::is_separating(cover.tri, comp).complement_components == 1);
  CHECK(c2.nonseparating_complement == 1);

  auto o = mfd::corollary_orbits(hb.rep, mfd::surface_subgroup_words(hb.tri, hb.dual, hb.surface),
                                 mfd::side_subgroup_words(hb.tri, hb.dual, hb.surface, hb.coorientation, 1),
                                 mfd::side_subgroup_words(hb.tri, hb.dual, hb.surface, hb.coorientation, -1));
  CHECK(o.surface == c2.surface_components);
  CHECK(o.plus == c2.plus_components);
  CHECK(o.minus == c2.minus_components);
  CHECK(o.inequality_holds());

  auto st = testing::load("solid_torus", "solid_torus_d1.perm");
  CHECK_THROWS_AS(mfd::corollary_count(st.tri, st.dual, st.surface, st.coorientation, st.rep), CheckFailure);
}

TEST_CASE("orbit counting without a triangulation") {
  auto p = grp::Presentation::parse("gens: a b\n");
  grp::PermRep rep(4, {{1, 0, 3, 2}, {2, 3, 0, 1}});
  auto o = mfd::corollary_orbits(rep, {}, {grp::Word({1})}, {grp::Word({2})});
  CHECK(o.surface == 4);
  CHECK(o.plus == 2);
  CHECK(o.minus == 2);
  CHECK(o.inequality_holds());
  auto bad = mfd::corollary_orbits(rep, {grp::Word({1}), grp::Word({2})}, {}, {});
  CHECK(bad.surface == 1);
  CHECK_FALSE(bad.inequality_holds());
}
