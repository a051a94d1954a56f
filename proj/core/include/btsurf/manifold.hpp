#ifndef BTSURF_MANIFOLD_HPP_
#define BTSURF_MANIFOLD_HPP_

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "btsurf/group.hpp"

namespace btsurf::mfd {

using Perm4 = std::array<int, 4>;

/* Face `face` of the source tetrahedron is glued to face `face` of `tet`;
 * source vertex i goes to vertex perm[i] (so perm[source face] == face). */
struct Gluing {
  int tet;
  int face;
  Perm4 perm;
  bool operator==(const Gluing& o) const { return tet == o.tet && face == o.face && perm == o.perm; }
};

int perm_sign(const Perm4& p);
Perm4 perm_inverse(const Perm4& p);

class Triangulation {
 public:
  Triangulation() = default;
  explicit Triangulation(std::size_t tets) : faces_(tets) {}

  std::size_t size() const { return faces_.size(); }
  const std::optional<Gluing>& gluing(int tet, int face) const {
    return faces_.at(static_cast<std::size_t>(tet))[static_cast<std::size_t>(face)];
  }
  bool is_boundary(int tet, int face) const { return !gluing(tet, face).has_value(); }

  /* Glues both sides. Throws InputError if either face is already glued. */
  void glue(int tet, int face, int to_tet, const Perm4& perm);
  /* Sets one side only; used to build deliberately inconsistent inputs. */
  void set_one_side(int tet, int face, std::optional<Gluing> g);

  /* "tri v1", "tet <n>", then one "glue <t>.<f> <t>.<f> <abc>" or
   * "glue <t>.<f> boundary" line covering every face exactly once. <abc> are
   * the images of the source face's vertices in increasing order. */
  static Triangulation parse(std::string_view body);
  std::string serialize() const;

 private:
  std::vector<std::array<std::optional<Gluing>, 4>> faces_;
};

struct Issue {
  std::string kind;     // involution, orientability, connectivity, edge, range
  std::string simplex;  // e.g. "tet 0 face 2"
  std::string message;
};

struct ValidationReport {
  bool ok = false;
  bool orientable = false;
  bool connected = false;
  std::size_t vertices = 0, edges = 0, boundary_faces = 0;
  std::vector<int> orientation;  // +-1 per tetrahedron when orientable
  std::vector<Issue> issues;
};

ValidationReport validate(const Triangulation& tri);
/* Throws CheckFailure with the first issue's simplex as witness. */
void require_valid(const Triangulation& tri);

/* Edge k of a tetrahedron joins kEdgeVertices[k]. */
inline constexpr std::array<std::array<int, 2>, 6> kEdgeVertices{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
int edge_index(int a, int b);

/* Vertex and edge classes of the identified complex. edge_sign is +1 when the
 * tetrahedron edge (a<b) runs along the class orientation. */
struct Skeleton {
  std::vector<std::array<int, 4>> vertex_class;
  std::vector<std::array<int, 6>> edge_class;
  std::vector<std::array<int, 6>> edge_sign;
  std::size_t vertices = 0, edges = 0;
  std::vector<bool> edge_on_boundary;
};

Skeleton skeleton(const Triangulation& tri);

/* pi_1 from the dual 1-skeleton: a breadth-first spanning tree from tetrahedron
 * 0; every other interior face pair is a generator g<k> oriented from its
 * lexicographically smaller side; each interior edge gives the relator read
 * around it. */
struct DualPresentation {
  struct Generator {
    int tet, face, to_tet, to_face;
  };
  grp::Presentation pres;
  std::vector<Generator> gens;
  std::vector<int> parent_face;  // face of the tetrahedron leading towards the root, -1 at root
  std::vector<std::array<int, 4>> letters;  // crossing letter per (tet, face); 0 on tree or boundary
  std::vector<std::vector<std::pair<int, int>>> root_paths;  // (tet, face) crossings from the root

  int letter(int tet, int face) const { return letters[static_cast<std::size_t>(tet)][static_cast<std::size_t>(face)]; }
  /* Face crossings of the dual loop for w starting and ending at the root. */
  std::vector<std::pair<int, int>> loop_crossings(const grp::Word& w) const;
  /* Letters read along a sequence of crossings. */
  grp::Word word_of(const std::vector<std::pair<int, int>>& crossings) const;
};

DualPresentation fundamental_group(const Triangulation& tri);

// ------------------------------------------------------------- surfaces

/* Per tetrahedron: triangles at vertices 0..3, then quads Q01|23, Q02|13, Q03|12. */
using Coords = std::array<long, 7>;

/* Quad type (0..2) separating {0, q+1} from the other two vertices. */
int quad_type_separating(int a, int b);
bool quad_zero_side(int quad, int v);

class NormalSurface {
 public:
  NormalSurface() = default;
  explicit NormalSurface(std::vector<Coords> c) : c_(std::move(c)) {}
  static NormalSurface zero(std::size_t tets) { return NormalSurface(std::vector<Coords>(tets, Coords{})); }

  std::size_t size() const { return c_.size(); }
  const Coords& operator[](std::size_t t) const { return c_[t]; }
  Coords& operator[](std::size_t t) { return c_[t]; }
  const std::vector<Coords>& coords() const { return c_; }
  long discs_in(std::size_t t) const;
  long total_discs() const;
  bool empty() const { return total_discs() == 0; }
  NormalSurface scaled(long k) const;
  friend NormalSurface operator+(const NormalSurface& a, const NormalSurface& b);
  bool operator==(const NormalSurface& o) const { return c_ == o.c_; }

  /* "surf v1" then one line of 7 integers per tetrahedron. */
  static NormalSurface parse(std::string_view body, std::size_t tets);
  std::string serialize() const;

 private:
  std::vector<Coords> c_;
};

/* Transverse orientation: one sign per disc, in the order triangles at
 * vertex 0..3 (each copy from the vertex outward), then quad copies from the
 * side containing vertex 0. Sign +1 puts the positive side at the triangle's
 * vertex, or on the vertex-0 side of a quad. */
class Coorientation {
 public:
  Coorientation() = default;
  explicit Coorientation(std::vector<std::vector<int>> s) : s_(std::move(s)) {}
  static Coorientation uniform(const NormalSurface& s, int sign);

  const std::vector<int>& signs(std::size_t tet) const { return s_[tet]; }
  std::size_t size() const { return s_.size(); }
  Coorientation reversed() const;

  /* "coor v1" then one line per tetrahedron of '+'/'-' tokens, or '.' for none. */
  static Coorientation parse(std::string_view body, const NormalSurface& s);
  std::string serialize() const;

 private:
  std::vector<std::vector<int>> s_;
};

/* Throws CheckFailure("coorientation", face) if signs disagree across a face. */
void check_coorientation(const Triangulation& tri, const NormalSurface& s, const Coorientation& c);

struct SurfaceComponent {
  NormalSurface vec;
  long euler = 0;
  bool two_sided = false;
  long discs = 0;
};

struct NormalReport {
  long euler = 0;
  bool orientable = true;  // every component two-sided
  std::vector<SurfaceComponent> components;
};

/* Throws CheckFailure("matching", "tet t face f") on a matching-equation
 * violation and CheckFailure("quads") when two quad types share a tetrahedron. */
NormalReport normal_check(const Triangulation& tri, const NormalSurface& s);

struct SeparationReport {
  bool separating = false;
  std::size_t complement_components = 0;
};

SeparationReport is_separating(const Triangulation& tri, const NormalSurface& s);

/* Tetrahedron index of the first one carrying more than one disc, or -1. */
int first_crowded_tet(const NormalSurface& s);

/* For a surface with at most one disc per tetrahedron: per corner, 1 on the
 * positive side of the tetrahedron's disc, else 0. */
std::vector<std::array<int, 4>> corner_sides(const NormalSurface& s, const Coorientation& c);

/* Signed crossing degree of the dual edge leaving (tet, face): the common
 * value of side(tet, v) - side(neighbour, perm[v]) over the face's vertices.
 * Throws CheckFailure if the three differences disagree. */
int crossing_degree(const Triangulation& tri, const std::vector<std::array<int, 4>>& sides, int tet, int face);

/* Intersection homomorphism on the dual generators. */
struct SurfacePsi {
  std::vector<long> values;
  bool surjective = false;
};

SurfacePsi psi_from_surface(const Triangulation& tri, const DualPresentation& dual, const NormalSurface& s,
                            const Coorientation& c);

/* Generators of pi_1 of the connected surface component containing `disc_root`
 * (a tetrahedron with a disc), as words in the dual generators based at the
 * root through the tree path to that tetrahedron. */
std::vector<grp::Word> surface_subgroup_words(const Triangulation& tri, const DualPresentation& dual,
                                              const NormalSurface& connected);

// ----------------------------------------------------------------- covers

struct Cover {
  Triangulation tri;
  std::size_t degree = 0;
  std::size_t base_tets = 0;
  int tet_index(int tet, int sheet) const { return tet * static_cast<int>(degree) + sheet; }
  int base_tet(int n_tet) const { return n_tet / static_cast<int>(degree); }
  int sheet(int n_tet) const { return n_tet % static_cast<int>(degree); }
  NormalSurface lift(const NormalSurface& s) const;
  Coorientation lift(const Coorientation& c) const;
  /* Projects a surface in the cover down, summing over sheets. */
  NormalSurface push_down(const NormalSurface& s) const;
};

/* Sheet i of tet t is glued along a non-tree face with letter x to sheet
 * perm(x)^-1 (i) of the neighbour; tree faces keep the sheet. */
Cover build_cover(const Triangulation& tri, const DualPresentation& dual, const grp::PermRep& rep);

/* Follows crossings starting in sheet `sheet`; returns the crossings in the cover. */
std::vector<std::pair<int, int>> lift_crossings(const Cover& cover, const std::vector<std::pair<int, int>>& crossings,
                                                int start_tet, int sheet);

// --------------------------------------------------------------- corollary

struct CorollaryReport {
  std::size_t degree = 0;
  std::size_t surface_components = 0;  // of p^-1(S)
  std::size_t plus_components = 0;     // of p^-1(M_+)
  std::size_t minus_components = 0;
  bool inequality_holds = false;
  std::size_t surface_orbits = 0, plus_orbits = 0, minus_orbits = 0;
  int nonseparating_component = -1;  // index into lift_components
  std::vector<SurfaceComponent> lift_components;
  std::size_t nonseparating_complement = 0;
};

/* S must be connected, separating and cooriented (the positive side is M_+). */
CorollaryReport corollary_count(const Triangulation& tri, const DualPresentation& dual, const NormalSurface& s,
                                const Coorientation& c, const grp::PermRep& rep);

/* Group-level variant: orbit counts of the three subgroups on the cosets. */
struct OrbitCounts {
  std::size_t surface = 0, plus = 0, minus = 0;
  bool inequality_holds() const { return surface >= plus + minus; }
};

OrbitCounts corollary_orbits(const grp::PermRep& rep, const std::vector<grp::Word>& surface_words,
                             const std::vector<grp::Word>& plus_words, const std::vector<grp::Word>& minus_words);

/* Generators of pi_1 of the complement component on the positive (side = +1)
 * or negative side of the cooriented connected surface. */
std::vector<grp::Word> side_subgroup_words(const Triangulation& tri, const DualPresentation& dual,
                                           const NormalSurface& s, const Coorientation& c, int side);

}  // namespace btsurf::mfd

#endif  // BTSURF_MANIFOLD_HPP_
