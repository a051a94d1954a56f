// Writes the triangulation, surface, coorientation, permutation and psi
// fixtures into the given directory.

#include <algorithm>
#include <array>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "btsurf/detect.hpp"
#include "btsurf/error.hpp"
#include "btsurf/manifold.hpp"

namespace fs = std::filesystem;
using namespace btsurf;

namespace {

using Labels = std::array<std::string, 4>;

/* Glues faces with equal label sets, matching vertices by label. */
mfd::Triangulation from_labels(const std::vector<Labels>& tets) {
  mfd::Triangulation tri(tets.size());
  std::map<std::set<std::string>, std::vector<std::pair<int, int>>> faces;
  for (std::size_t t = 0; t < tets.size(); ++t)
    for (int f = 0; f < 4; ++f) {
      std::set<std::string> key;
      for (int v = 0; v < 4; ++v)
        if (v != f) key.insert(tets[t][static_cast<std::size_t>(v)]);
      faces[key].emplace_back(static_cast<int>(t), f);
    }
  for (const auto& [key, list] : faces) {
    if (list.size() > 2) throw Error("label set shared by more than two faces");
    if (list.size() < 2) continue;
    auto [t, f] = list[0];
    auto [t2, f2] = list[1];
    mfd::Perm4 p{};
    p[static_cast<std::size_t>(f)] = f2;
    for (int v = 0; v < 4; ++v) {
      if (v == f) continue;
      const auto& lab = tets[static_cast<std::size_t>(t)][static_cast<std::size_t>(v)];
      const auto& other = tets[static_cast<std::size_t>(t2)];
      p[static_cast<std::size_t>(v)] = static_cast<int>(std::find(other.begin(), other.end(), lab) - other.begin());
    }
    tri.glue(t, f, t2, p);
  }
  return tri;
}

/* Three tetrahedra per prism layer over the triangle (a, b, c); level L wraps to 0. */
std::vector<Labels> solid_torus_labels(const std::string& pre, int layers) {
  auto lab = [&](char v, int level) { return pre + v + std::to_string(level % layers); };
  std::vector<Labels> out;
  for (int l = 0; l < layers; ++l) {
    out.push_back({lab('a', l), lab('b', l), lab('c', l), lab('a', l + 1)});
    out.push_back({lab('b', l), lab('c', l), lab('a', l + 1), lab('b', l + 1)});
    out.push_back({lab('c', l), lab('a', l + 1), lab('b', l + 1), lab('c', l + 1)});
  }
  return out;
}

/* Mid-level disc of the layer starting at tetrahedron `first`, positive side up. */
void add_layer_disc(mfd::NormalSurface& s, std::vector<std::vector<int>>& signs, std::size_t first) {
  s[first][3] = 1;
  s[first + 1][4] = 1;
  s[first + 2][0] = 1;
  signs[first] = {1};
  signs[first + 1] = {-1};
  signs[first + 2] = {-1};
}

/* Degree-2 representation sending g to the transposition iff the surface's
 * intersection number with g is odd. */
grp::PermRep parity_rep(const mfd::Triangulation& tri, const mfd::DualPresentation& dual, const mfd::NormalSurface& s,
                        const mfd::Coorientation& c) {
  auto psi = mfd::psi_from_surface(tri, dual, s, c);
  std::vector<grp::Perm> perms;
  for (long v : psi.values) perms.push_back(v % 2 != 0 ? grp::Perm{1, 0} : grp::Perm{0, 1});
  return grp::PermRep(2, perms);
}

grp::PermRep trivial_rep(const mfd::DualPresentation& dual) {
  return grp::PermRep(1, std::vector<grp::Perm>(dual.gens.size(), grp::Perm{0}));
}

void write(const fs::path& dir, const std::string& name, const std::string& body) {
  std::ofstream out(dir / name, std::ios::binary);
  if (!out) throw Error("cannot write " + (dir / name).string());
  out << body;
}

void check(bool ok, const std::string& what) {
  if (!ok) throw Error("fixture check failed: " + what);
}

void solid_torus(const fs::path& dir) {
  auto tri = from_labels(solid_torus_labels("", 2));
  mfd::require_valid(tri);
  auto s = mfd::NormalSurface::zero(tri.size());
  std::vector<std::vector<int>> signs(tri.size());
  add_layer_disc(s, signs, 0);
  mfd::Coorientation c(signs);
  mfd::check_coorientation(tri, s, c);
  auto nr = mfd::normal_check(tri, s);
  check(nr.components.size() == 1 && nr.euler == 1, "solid torus meridian disc");
  check(!mfd::is_separating(tri, s).separating, "meridian disc does not separate");
  auto dual = mfd::fundamental_group(tri);
  write(dir, "solid_torus.tri", tri.serialize());
  write(dir, "solid_torus.surf", s.serialize());
  write(dir, "solid_torus.coor", c.serialize());
  write(dir, "solid_torus.pres", dual.pres.serialize());
  write(dir, "solid_torus_d1.perm", trivial_rep(dual).serialize(dual.pres));
  write(dir, "solid_torus_d2.perm", parity_rep(tri, dual, s, c).serialize(dual.pres));
}

void handlebody(const fs::path& dir) {
  auto a = solid_torus_labels("A", 2), b = solid_torus_labels("B", 2);
  std::vector<std::string> lo = {"Aa1", "Ab1", "Aa0"}, hi = {"Ba1", "Bb1", "Ba0"};
  std::vector<Labels> tets = a;
  tets.insert(tets.end(), b.begin(), b.end());
  // the handle is a prism from a boundary triangle of A to one of B, both in
  // the layer without the meridian disc; take the first vertex ordering that
  // gives an oriented manifold
  std::optional<mfd::Triangulation> found;
  std::sort(hi.begin(), hi.end());
  do {
    auto all = tets;
    all.push_back({lo[0], lo[1], lo[2], hi[0]});
    all.push_back({lo[1], lo[2], hi[0], hi[1]});
    all.push_back({lo[2], hi[0], hi[1], hi[2]});
    auto tri = from_labels(all);
    if (mfd::validate(tri).ok) found = tri;
  } while (!found && std::next_permutation(hi.begin(), hi.end()));
  check(found.has_value(), "handle orientation");
  auto tri = *found;

  const std::size_t handle = 12;
  auto s = mfd::NormalSurface::zero(tri.size());
  std::vector<std::vector<int>> signs(tri.size());
  add_layer_disc(s, signs, handle);
  mfd::Coorientation c(signs);
  mfd::check_coorientation(tri, s, c);
  check(mfd::normal_check(tri, s).components.size() == 1, "handle disc connected");
  check(mfd::is_separating(tri, s).separating, "handle disc separates");

  auto meridians = mfd::NormalSurface::zero(tri.size());
  std::vector<std::vector<int>> msigns(tri.size());
  add_layer_disc(meridians, msigns, 0);
  add_layer_disc(meridians, msigns, 6);
  auto dual = mfd::fundamental_group(tri);
  auto rep = parity_rep(tri, dual, meridians, mfd::Coorientation(msigns));

  write(dir, "handlebody.tri", tri.serialize());
  write(dir, "handlebody.surf", s.serialize());
  write(dir, "handlebody.coor", c.serialize());
  write(dir, "handlebody.pres", dual.pres.serialize());
  write(dir, "handlebody_d2.perm", rep.serialize(dual.pres));
  std::string groups = "subgroups v1\n";
  for (const auto& w : mfd::surface_subgroup_words(tri, dual, s)) groups += "surface: " + dual.pres.format(w) + "\n";
  for (const auto& w : mfd::side_subgroup_words(tri, dual, s, c, 1)) groups += "plus: " + dual.pres.format(w) + "\n";
  for (const auto& w : mfd::side_subgroup_words(tri, dual, s, c, -1)) groups += "minus: " + dual.pres.format(w) + "\n";
  write(dir, "handlebody.subgroups", groups);

  det::DetectInput in{tri, s, c, rep, std::nullopt, {}, false, 0, 0, {}};
  auto p = det::Pipeline::build(in);
  auto bad = p.psi_geom;
  bad.values.at(0) += 1;
  write(dir, "handlebody_d2.psi", p.psi_geom.serialize(p.cosets, dual.pres));
  write(dir, "handlebody_d2_corrupt.psi", bad.serialize(p.cosets, dual.pres));

  // one face gluing inside the first solid torus changed to reverse orientation
  auto broken = tri;
  const int victim = 1;
  for (int f = 0; f < 4; ++f) {
    auto g = broken.gluing(victim, f);
    if (!g || g->tet == victim) continue;
    auto p2 = g->perm;
    std::vector<int> others;
    for (int v = 0; v < 4; ++v)
      if (v != f) others.push_back(v);
    std::swap(p2[static_cast<std::size_t>(others[0])], p2[static_cast<std::size_t>(others[1])]);
    broken.set_one_side(victim, f, mfd::Gluing{g->tet, g->face, p2});
    broken.set_one_side(g->tet, g->face, mfd::Gluing{victim, f, mfd::perm_inverse(p2)});
    break;
  }
  check(!mfd::validate(broken).ok, "broken gluing is rejected");
  write(dir, "handlebody_broken.tri", broken.serialize());
}

void ball(const fs::path& dir) {
  mfd::Triangulation tri(1);
  mfd::require_valid(tri);
  write(dir, "ball.tri", tri.serialize());
  auto dual = mfd::fundamental_group(tri);
  write(dir, "ball.pres", dual.pres.serialize());
}

/* First closed one-tetrahedron manifold (in a fixed search order) whose
 * vertex link is a sphere and whose first homology has torsion. */
void one_tet(const fs::path& dir) {
  const std::array<std::array<int, 4>, 3> pairings{{{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}}};
  std::vector<mfd::Perm4> perms;
  mfd::Perm4 p{0, 1, 2, 3};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  for (const auto& pr : pairings) {
    for (const auto& p1 : perms) {
      if (p1[static_cast<std::size_t>(pr[0])] != pr[1]) continue;
      for (const auto& p2 : perms) {
        if (p2[static_cast<std::size_t>(pr[2])] != pr[3]) continue;
        mfd::Triangulation tri(1);
        tri.glue(0, pr[0], 0, p1);
        tri.glue(0, pr[2], 0, p2);
        auto v = mfd::validate(tri);
        if (!v.ok || v.vertices != 1) continue;
        auto link = mfd::NormalSurface({mfd::Coords{1, 1, 1, 1, 0, 0, 0}});
        auto nr = mfd::normal_check(tri, link);
        if (nr.components.size() != 1 || nr.euler != 2) continue;
        auto ab = grp::abelianize(mfd::fundamental_group(tri).pres);
        if (ab.rank != 0 || ab.torsion.empty()) continue;
        write(dir, "one_tet.tri", tri.serialize());
        write(dir, "one_tet_link.surf", link.serialize());
        write(dir, "one_tet.pres", mfd::fundamental_group(tri).pres.serialize());
        return;
      }
    }
  }
  throw Error("no closed one-tetrahedron fixture found");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_fixtures <dir>\n";
    return 1;
  }
  try {
    fs::path dir(argv[1]);
    fs::create_directories(dir);
    solid_torus(dir);
    handlebody(dir);
    ball(dir);
    one_tet(dir);
  } catch (const std::exception& e) {
    std::cerr << "make_fixtures: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
