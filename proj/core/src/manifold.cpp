#include "btsurf/manifold.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>
#include <tuple>

#include "btsurf/error.hpp"
#include "btsurf/text.hpp"

namespace btsurf::mfd {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      auto& p = parent[static_cast<std::size_t>(x)];
      p = parent[static_cast<std::size_t>(p)];
      x = p;
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    return true;
  }
  std::size_t classes() {
    std::size_t n = 0;
    for (std::size_t i = 0; i < parent.size(); ++i)
      if (find(static_cast<int>(i)) == static_cast<int>(i)) ++n;
    return n;
  }
};

/* Union-find carrying a parity bit relative to the root. */
struct ParityUnionFind {
  std::vector<int> parent, parity;
  explicit ParityUnionFind(std::size_t n) : parent(n), parity(n, 0) { std::iota(parent.begin(), parent.end(), 0); }
  std::pair<int, int> find(int x) {
    int par = 0;
    int r = x;
    while (parent[static_cast<std::size_t>(r)] != r) {
      par ^= parity[static_cast<std::size_t>(r)];
      r = parent[static_cast<std::size_t>(r)];
    }
    // compress
    int cur = x, cp = par;
    while (parent[static_cast<std::size_t>(cur)] != cur) {
      int next = parent[static_cast<std::size_t>(cur)];
      int np = cp ^ parity[static_cast<std::size_t>(cur)];
      parent[static_cast<std::size_t>(cur)] = r;
      parity[static_cast<std::size_t>(cur)] = cp;
      cur = next;
      cp = np;
    }
    return {r, par};
  }
  /* Returns false on a parity conflict. */
  bool unite(int a, int b, int rel) {
    auto [ra, pa] = find(a);
    auto [rb, pb] = find(b);
    if (ra == rb) return (pa ^ pb) == rel;
    if (ra > rb) std::swap(ra, rb);
    parent[static_cast<std::size_t>(rb)] = ra;
    parity[static_cast<std::size_t>(rb)] = pa ^ pb ^ rel;
    return true;
  }
};

std::string face_name(int t, int f) { return "tet " + std::to_string(t) + " face " + std::to_string(f); }
std::string tet_name(int t) { return "tet " + std::to_string(t); }

std::array<int, 3> face_vertices(int f) {
  std::array<int, 3> out{};
  int k = 0;
  for (int v = 0; v < 4; ++v)
    if (v != f) out[static_cast<std::size_t>(k++)] = v;
  return out;
}

bool is_perm(const Perm4& p) {
  std::array<bool, 4> seen{};
  for (int x : p) {
    if (x < 0 || x > 3 || seen[static_cast<std::size_t>(x)]) return false;
    seen[static_cast<std::size_t>(x)] = true;
  }
  return true;
}

std::pair<int, int> parse_face_ref(const text::Line& line, const std::string& tok, std::size_t tets) {
  auto dot = tok.find('.');
  if (dot == std::string::npos) line.fail("expected <tet>.<face>");
  long t = 0, f = 0;
  try {
    t = text::parse_long(std::string_view(tok).substr(0, dot), "tetrahedron");
    f = text::parse_long(std::string_view(tok).substr(dot + 1), "face");
  } catch (const InputError& e) {
    line.fail(e.what());
  }
  if (t < 0 || static_cast<std::size_t>(t) >= tets) line.fail("tetrahedron out of range");
  if (f < 0 || f > 3) line.fail("face out of range");
  return {static_cast<int>(t), static_cast<int>(f)};
}

std::size_t ix(int x) { return static_cast<std::size_t>(x); }

}  // namespace

int perm_sign(const Perm4& p) {
  int inv = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (p[static_cast<std::size_t>(i)] > p[static_cast<std::size_t>(j)]) ++inv;
  return inv % 2 == 0 ? 1 : -1;
}

Perm4 perm_inverse(const Perm4& p) {
  Perm4 q{};
  for (int i = 0; i < 4; ++i) q[static_cast<std::size_t>(p[static_cast<std::size_t>(i)])] = i;
  return q;
}

int edge_index(int a, int b) {
  if (a > b) std::swap(a, b);
  for (int k = 0; k < 6; ++k)
    if (kEdgeVertices[static_cast<std::size_t>(k)][0] == a && kEdgeVertices[static_cast<std::size_t>(k)][1] == b) return k;
  throw InputError("not an edge");
}

// ---------------------------------------------------------- triangulation

void Triangulation::glue(int tet, int face, int to_tet, const Perm4& perm) {
  if (tet < 0 || static_cast<std::size_t>(tet) >= size() || to_tet < 0 || static_cast<std::size_t>(to_tet) >= size())
    throw InputError("tetrahedron out of range");
  if (!is_perm(perm)) throw InputError("gluing map is not a permutation");
  int to_face = perm[static_cast<std::size_t>(face)];
  if (tet == to_tet && face == to_face) throw InputError(face_name(tet, face) + " glued to itself");
  auto& a = faces_[static_cast<std::size_t>(tet)][static_cast<std::size_t>(face)];
  auto& b = faces_[static_cast<std::size_t>(to_tet)][static_cast<std::size_t>(to_face)];
  if (a || b) throw InputError("face glued twice near " + face_name(tet, face));
  a = Gluing{to_tet, to_face, perm};
  b = Gluing{tet, face, perm_inverse(perm)};
}

void Triangulation::set_one_side(int tet, int face, std::optional<Gluing> g) {
  faces_.at(static_cast<std::size_t>(tet)).at(static_cast<std::size_t>(face)) = std::move(g);
}

Triangulation Triangulation::parse(std::string_view body) {
  auto ls = text::lines(body);
  if (ls.empty() || ls[0].text != "tri v1") throw InputError("expected header 'tri v1'");
  if (ls.size() < 2) throw InputError("missing 'tet <n>' line");
  auto head = text::split_ws(ls[1].text);
  if (head.size() != 2 || head[0] != "tet") ls[1].fail("expected 'tet <n>'");
  long n = 0;
  try {
    n = text::parse_long(head[1], "tetrahedron count");
  } catch (const InputError& e) {
    ls[1].fail(e.what());
  }
  if (n < 1 || n > 10'000'000) ls[1].fail("tetrahedron count out of range");
  Triangulation tri(static_cast<std::size_t>(n));
  std::vector<std::array<bool, 4>> seen(tri.size(), std::array<bool, 4>{});
  for (std::size_t i = 2; i < ls.size(); ++i) {
    const auto& line = ls[i];
    auto tok = text::split_ws(line.text);
    if (tok.empty() || tok[0] != "glue") line.fail("expected 'glue'");
    if (tok.size() < 3) line.fail("incomplete gluing");
    auto [t, f] = parse_face_ref(line, tok[1], tri.size());
    if (seen[ix(t)][ix(f)]) line.fail("face " + tok[1] + " given twice");
    seen[ix(t)][ix(f)] = true;
    if (tok[2] == "boundary") {
      if (tok.size() != 3) line.fail("trailing tokens");
      continue;
    }
    if (tok.size() != 4) line.fail("expected 'glue <t>.<f> <t>.<f> <abc>'");
    auto [t2, f2] = parse_face_ref(line, tok[2], tri.size());
    if (seen[ix(t2)][ix(f2)]) line.fail("face " + tok[2] + " given twice");
    seen[ix(t2)][ix(f2)] = true;
    if (tok[3].size() != 3) line.fail("vertex map must be three digits");
    Perm4 p{};
    p[ix(f)] = f2;
    auto fv = face_vertices(f);
    for (std::size_t k = 0; k < 3; ++k) {
      char c = tok[3][k];
      if (c < '0' || c > '3') line.fail("bad vertex digit");
      p[ix(fv[k])] = c - '0';
    }
    if (!is_perm(p)) line.fail("vertex map is not a bijection onto the target face");
    try {
      tri.glue(t, f, t2, p);
    } catch (const InputError& e) {
      line.fail(e.what());
    }
  }
  for (std::size_t t = 0; t < tri.size(); ++t)
    for (int f = 0; f < 4; ++f)
      if (!seen[t][ix(f)]) throw InputError("face " + std::to_string(t) + "." + std::to_string(f) + " not specified");
  return tri;
}

std::string Triangulation::serialize() const {
  std::ostringstream out;
  out << "tri v1\ntet " << size() << "\n";
  for (std::size_t t = 0; t < size(); ++t) {
    for (int f = 0; f < 4; ++f) {
      const auto& g = faces_[t][ix(f)];
      if (!g) {
        out << "glue " << t << "." << f << " boundary\n";
        continue;
      }
      if (std::make_pair(static_cast<int>(t), f) > std::make_pair(g->tet, g->face)) continue;
      out << "glue " << t << "." << f << " " << g->tet << "." << g->face << " ";
      for (int v : face_vertices(f)) out << g->perm[ix(v)];
      out << "\n";
    }
  }
  return out.str();
}

// ---------------------------------------------------------------- skeleton

namespace {

struct SkeletonBuild {
  Skeleton sk;
  std::vector<std::pair<int, int>> reversed;  // (tet, edge)
};

SkeletonBuild build_skeleton(const Triangulation& tri) {
  std::size_t n = tri.size();
  UnionFind vuf(4 * n);
  ParityUnionFind euf(6 * n);
  SkeletonBuild out;
  for (std::size_t t = 0; t < n; ++t) {
    for (int f = 0; f < 4; ++f) {
      const auto& g = tri.gluing(static_cast<int>(t), f);
      if (!g) continue;
      auto fv = face_vertices(f);
      for (int v : fv) vuf.unite(static_cast<int>(4 * t) + v, 4 * g->tet + g->perm[ix(v)]);
      for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = i + 1; j < 3; ++j) {
          int a = fv[i], b = fv[j];
          int pa = g->perm[ix(a)], pb = g->perm[ix(b)];
          int e = edge_index(a, b), e2 = edge_index(pa, pb);
          if (!euf.unite(static_cast<int>(6 * t) + e, 6 * g->tet + e2, pa > pb ? 1 : 0))
            out.reversed.emplace_back(static_cast<int>(t), e);
        }
      }
    }
  }
  auto& sk = out.sk;
  sk.vertex_class.assign(n, {});
  sk.edge_class.assign(n, {});
  sk.edge_sign.assign(n, {});
  std::map<int, int> vid, eid;
  for (std::size_t t = 0; t < n; ++t) {
    for (int v = 0; v < 4; ++v) {
      int r = vuf.find(static_cast<int>(4 * t) + v);
      auto it = vid.try_emplace(r, static_cast<int>(vid.size())).first;
      sk.vertex_class[t][ix(v)] = it->second;
    }
    for (int e = 0; e < 6; ++e) {
      auto [r, par] = euf.find(static_cast<int>(6 * t) + e);
      auto it = eid.try_emplace(r, static_cast<int>(eid.size())).first;
      sk.edge_class[t][ix(e)] = it->second;
      sk.edge_sign[t][ix(e)] = par ? -1 : 1;
    }
  }
  sk.vertices = vid.size();
  sk.edges = eid.size();
  sk.edge_on_boundary.assign(sk.edges, false);
  for (std::size_t t = 0; t < n; ++t)
    for (int f = 0; f < 4; ++f)
      if (tri.is_boundary(static_cast<int>(t), f))
        for (int e = 0; e < 6; ++e) {
          auto ev = kEdgeVertices[ix(e)];
          if (ev[0] != f && ev[1] != f) sk.edge_on_boundary[ix(sk.edge_class[t][ix(e)])] = true;
        }
  return out;
}

}  // namespace

Skeleton skeleton(const Triangulation& tri) { return build_skeleton(tri).sk; }

ValidationReport validate(const Triangulation& tri) {
  ValidationReport rep;
  std::size_t n = tri.size();
  if (n == 0) {
    rep.issues.push_back({"range", "", "no tetrahedra"});
    return rep;
  }
  for (std::size_t t = 0; t < n; ++t) {
    for (int f = 0; f < 4; ++f) {
      int ti = static_cast<int>(t);
      const auto& g = tri.gluing(ti, f);
      if (!g) {
        ++rep.boundary_faces;
        continue;
      }
      if (g->tet < 0 || static_cast<std::size_t>(g->tet) >= n || g->face < 0 || g->face > 3 || !is_perm(g->perm) ||
          g->perm[ix(f)] != g->face) {
        rep.issues.push_back({"range", face_name(ti, f), "malformed gluing"});
        continue;
      }
      if (g->tet == ti && g->face == f) {
        rep.issues.push_back({"involution", face_name(ti, f), "face glued to itself"});
        continue;
      }
      const auto& back = tri.gluing(g->tet, g->face);
      if (!back || back->tet != ti || back->face != f || back->perm != perm_inverse(g->perm))
        rep.issues.push_back({"involution", face_name(ti, f), "gluing is not matched by its partner face"});
    }
  }
  if (!rep.issues.empty()) return rep;

  std::vector<int> orient(n, 0);
  std::deque<int> queue{0};
  orient[0] = 1;
  bool orientable = true;
  while (!queue.empty()) {
    int t = queue.front();
    queue.pop_front();
    for (int f = 0; f < 4; ++f) {
      const auto& g = tri.gluing(t, f);
      if (!g) continue;
      int want = -orient[ix(t)] * perm_sign(g->perm);
      int& o = orient[ix(g->tet)];
      if (o == 0) {
        o = want;
        queue.push_back(g->tet);
      } else if (o != want && orientable) {
        orientable = false;
        rep.issues.push_back({"orientability", face_name(t, f), "orientation reverses across this face"});
      }
    }
  }
  rep.connected = std::all_of(orient.begin(), orient.end(), [](int o) { return o != 0; });
  if (!rep.connected) {
    auto it = std::find(orient.begin(), orient.end(), 0);
    rep.issues.push_back({"connectivity", tet_name(static_cast<int>(it - orient.begin())), "not reachable from tet 0"});
  }
  rep.orientable = orientable && rep.connected;
  if (rep.orientable) rep.orientation = orient;

  auto sb = build_skeleton(tri);
  rep.vertices = sb.sk.vertices;
  rep.edges = sb.sk.edges;
  if (!sb.reversed.empty()) {
    auto [t, e] = sb.reversed.front();
    auto ev = kEdgeVertices[ix(e)];
    rep.issues.push_back({"edge", tet_name(t) + " edge " + std::to_string(ev[0]) + std::to_string(ev[1]),
                          "edge identified with itself reversed"});
  }
  rep.ok = rep.issues.empty();
  return rep;
}

void require_valid(const Triangulation& tri) {
  auto rep = validate(tri);
  if (!rep.ok) {
    const auto& i = rep.issues.front();
    throw CheckFailure("triangulation_" + i.kind, i.simplex, "invalid triangulation: " + i.message + " at " + i.simplex);
  }
}

// ------------------------------------------------------- dual presentation

std::vector<std::pair<int, int>> DualPresentation::loop_crossings(const grp::Word& w) const {
  auto reversed_path = [&](int tet) {
    std::vector<std::pair<int, int>> out;
    const auto& p = root_paths[ix(tet)];
    // walking back from tet crosses each tree face from the child side
    int cur = tet;
    for (std::size_t k = p.size(); k-- > 0;) {
      int f = parent_face[ix(cur)];
      out.emplace_back(cur, f);
      cur = p[k].first;
    }
    return out;
  };
  std::vector<std::pair<int, int>> out;
  for (int x : w.letters()) {
    const auto& g = gens[static_cast<std::size_t>(std::abs(x) - 1)];
    int from_t = x > 0 ? g.tet : g.to_tet, from_f = x > 0 ? g.face : g.to_face;
    int to_t = x > 0 ? g.to_tet : g.tet;
    const auto& p = root_paths[ix(from_t)];
    out.insert(out.end(), p.begin(), p.end());
    out.emplace_back(from_t, from_f);
    auto back = reversed_path(to_t);
    out.insert(out.end(), back.begin(), back.end());
  }
  return out;
}

grp::Word DualPresentation::word_of(const std::vector<std::pair<int, int>>& crossings) const {
  std::vector<int> ls;
  for (auto [t, f] : crossings) {
    int x = letter(t, f);
    if (x != 0) ls.push_back(x);
  }
  return grp::Word(std::move(ls));
}

DualPresentation fundamental_group(const Triangulation& tri) {
  std::size_t n = tri.size();
  if (n == 0) throw InputError("empty triangulation");
  DualPresentation dp;
  dp.parent_face.assign(n, -1);
  dp.letters.assign(n, {0, 0, 0, 0});
  dp.root_paths.assign(n, {});
  std::vector<std::array<bool, 4>> tree(n, std::array<bool, 4>{});
  std::vector<bool> seen(n, false);
  seen[0] = true;
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int t = queue.front();
    queue.pop_front();
    for (int f = 0; f < 4; ++f) {
      const auto& g = tri.gluing(t, f);
      if (!g || seen[ix(g->tet)]) continue;
      seen[ix(g->tet)] = true;
      dp.parent_face[ix(g->tet)] = g->face;
      tree[ix(t)][ix(f)] = tree[ix(g->tet)][ix(g->face)] = true;
      dp.root_paths[ix(g->tet)] = dp.root_paths[ix(t)];
      dp.root_paths[ix(g->tet)].emplace_back(t, f);
      queue.push_back(g->tet);
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) throw InputError("triangulation is not connected");

  for (std::size_t t = 0; t < n; ++t) {
    for (int f = 0; f < 4; ++f) {
      int ti = static_cast<int>(t);
      const auto& g = tri.gluing(ti, f);
      if (!g || tree[t][ix(f)]) continue;
      if (std::make_pair(ti, f) > std::make_pair(g->tet, g->face)) continue;
      int k = static_cast<int>(dp.gens.size());
      dp.gens.push_back({ti, f, g->tet, g->face});
      dp.pres.generators.push_back("g" + std::to_string(k));
      dp.letters[t][ix(f)] = k + 1;
      dp.letters[ix(g->tet)][ix(g->face)] = -(k + 1);
    }
  }

  std::vector<std::array<bool, 6>> visited(n, std::array<bool, 6>{});
  const std::size_t guard = 48 * n + 8;
  for (std::size_t t0 = 0; t0 < n; ++t0) {
    for (int e0 = 0; e0 < 6; ++e0) {
      if (visited[t0][ix(e0)]) continue;
      int a = kEdgeVertices[ix(e0)][0], b = kEdgeVertices[ix(e0)][1];
      int exitv = -1, other = -1;
      for (int v = 0; v < 4; ++v)
        if (v != a && v != b) (exitv < 0 ? exitv : other) = v;
      const auto start = std::make_tuple(static_cast<int>(t0), a, b, exitv);
      int tet = static_cast<int>(t0);
      std::vector<int> ls;
      bool boundary = false;
      for (std::size_t step = 0;; ++step) {
        if (step > guard) throw InputError("edge walk did not close");
        visited[ix(tet)][ix(edge_index(a, b))] = true;
        const auto& g = tri.gluing(tet, exitv);
        if (!g) {
          boundary = true;
          break;
        }
        int x = dp.letters[ix(tet)][ix(exitv)];
        if (x != 0) ls.push_back(x);
        const auto& p = g->perm;
        int na = p[ix(a)], nb = p[ix(b)], nexit = p[ix(other)], nother = p[ix(exitv)];
        tet = g->tet;
        a = na;
        b = nb;
        exitv = nexit;
        other = nother;
        if (std::make_tuple(tet, a, b, exitv) == start) break;
      }
      if (boundary) continue;
      grp::Word w(std::move(ls));
      if (!w.empty()) dp.pres.relators.push_back(w);
    }
  }
  return dp;
}

// ---------------------------------------------------------------- surfaces

int quad_type_separating(int a, int b) {
  int partner = a == 0 ? b : b == 0 ? a : 6 - a - b;
  return partner - 1;
}

bool quad_zero_side(int quad, int v) { return v == 0 || v == quad + 1; }

long NormalSurface::discs_in(std::size_t t) const {
  long s = 0;
  for (long x : c_[t]) s += x;
  return s;
}

long NormalSurface::total_discs() const {
  long s = 0;
  for (std::size_t t = 0; t < c_.size(); ++t) s += discs_in(t);
  return s;
}

NormalSurface NormalSurface::scaled(long k) const {
  NormalSurface out = *this;
  for (auto& row : out.c_)
    for (auto& x : row) x *= k;
  return out;
}

NormalSurface operator+(const NormalSurface& a, const NormalSurface& b) {
  if (a.size() != b.size()) throw InputError("surface size mismatch");
  NormalSurface out = a;
  for (std::size_t t = 0; t < a.size(); ++t)
    for (std::size_t i = 0; i < 7; ++i) out.c_[t][i] += b.c_[t][i];
  return out;
}

NormalSurface NormalSurface::parse(std::string_view body, std::size_t tets) {
  auto ls = text::lines(body);
  if (ls.empty() || ls[0].text != "surf v1") throw InputError("expected header 'surf v1'");
  if (ls.size() - 1 != tets)
    throw InputError("surface has " + std::to_string(ls.size() - 1) + " rows, triangulation has " + std::to_string(tets));
  std::vector<Coords> c(tets);
  for (std::size_t t = 0; t < tets; ++t) {
    const auto& line = ls[t + 1];
    auto tok = text::split_ws(line.text);
    if (tok.size() != 7) line.fail("expected 7 coordinates");
    for (std::size_t i = 0; i < 7; ++i) {
      long v = 0;
      try {
        v = text::parse_long(tok[i], "coordinate");
      } catch (const InputError& e) {
        line.fail(e.what());
      }
      if (v < 0) line.fail("negative coordinate");
      c[t][i] = v;
    }
  }
  return NormalSurface(std::move(c));
}

std::string NormalSurface::serialize() const {
  std::ostringstream out;
  out << "surf v1\n";
  for (const auto& row : c_) {
    for (std::size_t i = 0; i < 7; ++i) out << (i ? " " : "") << row[i];
    out << "\n";
  }
  return out.str();
}

Coorientation Coorientation::uniform(const NormalSurface& s, int sign) {
  std::vector<std::vector<int>> v(s.size());
  for (std::size_t t = 0; t < s.size(); ++t) v[t].assign(static_cast<std::size_t>(s.discs_in(t)), sign);
  return Coorientation(std::move(v));
}

Coorientation Coorientation::reversed() const {
  auto v = s_;
  for (auto& row : v)
    for (auto& x : row) x = -x;
  return Coorientation(std::move(v));
}

Coorientation Coorientation::parse(std::string_view body, const NormalSurface& s) {
  auto ls = text::lines(body);
  if (ls.empty() || ls[0].text != "coor v1") throw InputError("expected header 'coor v1'");
  if (ls.size() - 1 != s.size()) throw InputError("coorientation row count does not match the triangulation");
  std::vector<std::vector<int>> v(s.size());
  for (std::size_t t = 0; t < s.size(); ++t) {
    const auto& line = ls[t + 1];
    auto tok = text::split_ws(line.text);
    auto want = static_cast<std::size_t>(s.discs_in(t));
    if (want == 0) {
      if (tok.size() != 1 || tok[0] != ".") line.fail("expected '.' for a tetrahedron without discs");
      continue;
    }
    if (tok.size() != want) line.fail("expected " + std::to_string(want) + " signs");
    for (const auto& x : tok) {
      if (x == "+") v[t].push_back(1);
      else if (x == "-") v[t].push_back(-1);
      else line.fail("sign must be '+' or '-'");
    }
  }
  return Coorientation(std::move(v));
}

std::string Coorientation::serialize() const {
  std::ostringstream out;
  out << "coor v1\n";
  for (const auto& row : s_) {
    if (row.empty()) out << ".";
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? " " : "") << (row[i] > 0 ? "+" : "-");
    out << "\n";
  }
  return out.str();
}

namespace {

/* Disc bookkeeping for a normal surface in a triangulation. */
struct Discs {
  const Triangulation& tri;
  const NormalSurface& s;
  std::vector<long> offset;  // first global disc id per tetrahedron
  std::vector<int> quad;     // nonzero quad type per tetrahedron or -1
  long total = 0;

  Discs(const Triangulation& tr, const NormalSurface& sf) : tri(tr), s(sf) {
    if (s.size() != tri.size()) throw InputError("surface does not match the triangulation size");
    offset.resize(s.size());
    quad.assign(s.size(), -1);
    for (std::size_t t = 0; t < s.size(); ++t) {
      offset[t] = total;
      for (int q = 0; q < 3; ++q) {
        if (s[t][ix(4 + q)] < 0) throw InputError("negative coordinate in " + tet_name(static_cast<int>(t)));
        if (s[t][ix(4 + q)] == 0) continue;
        if (quad[t] >= 0)
          throw CheckFailure("quads", tet_name(static_cast<int>(t)), "two quad types in " + tet_name(static_cast<int>(t)));
        quad[t] = q;
      }
      for (int k = 0; k < 4; ++k)
        if (s[t][ix(k)] < 0) throw InputError("negative coordinate in " + tet_name(static_cast<int>(t)));
      total += s.discs_in(t);
    }
  }

  long tri_count(int t, int k) const { return s[ix(t)][ix(k)]; }
  long quad_count(int t) const { return quad[ix(t)] < 0 ? 0 : s[ix(t)][ix(4 + quad[ix(t)])]; }

  long triangle(int t, int k, long copy) const {
    long base = offset[ix(t)];
    for (int j = 0; j < k; ++j) base += tri_count(t, j);
    return base + copy;
  }
  long quad_disc(int t, long copy) const {
    long base = offset[ix(t)];
    for (int j = 0; j < 4; ++j) base += tri_count(t, j);
    return base + copy;
  }
  /* Local index inside the tetrahedron, matching the coorientation order. */
  std::size_t local(int t, long disc) const { return static_cast<std::size_t>(disc - offset[ix(t)]); }

  long quads_cutting(int t, int v, int f) const {
    int q = quad[ix(t)];
    return (q >= 0 && quad_type_separating(v, f) == q) ? quad_count(t) : 0;
  }
  long arcs_at(int t, int f, int v) const { return tri_count(t, v) + quads_cutting(t, v, f); }

  /* Disc owning arc r (from v outward) at corner v of face f. */
  long arc_disc(int t, int, int v, long r) const {
    long tc = tri_count(t, v);
    if (r < tc) return triangle(t, v, r);
    long i = r - tc, q = quad_count(t);
    return quad_disc(t, quad_zero_side(quad[ix(t)], v) ? i : q - 1 - i);
  }

  /* Disc at the k-th normal point from a on tetrahedron edge (a, b). */
  long points_on(int t, int a, int b) const {
    int q = quad[ix(t)];
    long qc = (q >= 0 && quad_type_separating(a, b) != q) ? quad_count(t) : 0;
    return tri_count(t, a) + qc + tri_count(t, b);
  }
  long point_disc(int t, int a, int b, long k) const {
    int q = quad[ix(t)];
    long ta = tri_count(t, a);
    long qc = (q >= 0 && quad_type_separating(a, b) != q) ? quad_count(t) : 0;
    if (k < ta) return triangle(t, a, k);
    if (k < ta + qc) {
      long i = k - ta;
      return quad_disc(t, quad_zero_side(q, a) ? i : qc - 1 - i);
    }
    return triangle(t, b, points_on(t, a, b) - 1 - k);
  }

  /* +1 if corner v lies on the canonical side of the disc. */
  int canon(int t, long disc, int v) const {
    long loc = disc - offset[ix(t)];
    long base = 0;
    for (int k = 0; k < 4; ++k) {
      if (loc < base + tri_count(t, k)) return v == k ? 1 : -1;
      base += tri_count(t, k);
    }
    return quad_zero_side(quad[ix(t)], v) ? 1 : -1;
  }

  int disc_tet(long disc) const {
    auto it = std::upper_bound(offset.begin(), offset.end(), disc);
    return static_cast<int>(it - offset.begin()) - 1;
  }

  /* Calls fn(t, f, v, r, disc, t2, f2, v2, disc2) for every matched arc,
   * once per face pair; boundary arcs are passed with t2 == -1. Throws on a
   * matching-equation violation. */
  template <class Fn>
  void for_each_arc(Fn&& fn) const {
    for (std::size_t tt = 0; tt < tri.size(); ++tt) {
      int t = static_cast<int>(tt);
      for (int f = 0; f < 4; ++f) {
        const auto& g = tri.gluing(t, f);
        if (g && std::make_pair(t, f) > std::make_pair(g->tet, g->face)) continue;
        for (int v : face_vertices(f)) {
          long m = arcs_at(t, f, v);
          if (!g) {
            for (long r = 0; r < m; ++r) fn(t, f, v, r, arc_disc(t, f, v, r), -1, -1, -1, -1L);
            continue;
          }
          int v2 = g->perm[ix(v)];
          if (arcs_at(g->tet, g->face, v2) != m)
            throw CheckFailure("matching", face_name(t, f),
                               "matching equations fail across " + face_name(t, f) + " at corner " + std::to_string(v));
          for (long r = 0; r < m; ++r)
            fn(t, f, v, r, arc_disc(t, f, v, r), g->tet, g->face, v2, arc_disc(g->tet, g->face, v2, r));
        }
      }
    }
  }
};

/* Complement regions: per tetrahedron, corner regions then central regions. */
struct Regions {
  const Discs& d;
  std::vector<long> offset;
  long total = 0;

  explicit Regions(const Discs& discs) : d(discs) {
    offset.resize(d.s.size());
    for (std::size_t t = 0; t < d.s.size(); ++t) {
      offset[t] = total;
      int ti = static_cast<int>(t);
      for (int k = 0; k < 4; ++k) total += d.tri_count(ti, k);
      total += d.quad_count(ti) + 1;
    }
  }
  long corner(int t, int k, long j) const {
    long base = offset[ix(t)];
    for (int i = 0; i < k; ++i) base += d.tri_count(t, i);
    return base + j;
  }
  long central(int t, long i) const {
    long base = offset[ix(t)];
    for (int k = 0; k < 4; ++k) base += d.tri_count(t, k);
    return base + i;
  }
  /* Central region beyond the triangles at corner k. */
  long central_near(int t, int k) const {
    int q = d.quad[ix(t)];
    if (q < 0) return central(t, 0);
    return central(t, quad_zero_side(q, k) ? 0 : d.quad_count(t));
  }
  /* Strip r (from corner v) of face f; r == arcs_at is the middle strip. */
  long strip(int t, int f, int v, long r) const {
    long tc = d.tri_count(t, v);
    if (r < tc) return corner(t, v, r);
    long m = d.arcs_at(t, f, v);
    if (r < m) {
      long i = r - tc, q = d.quad_count(t);
      return central(t, quad_zero_side(d.quad[ix(t)], v) ? i : q - i);
    }
    return middle(t, f);
  }
  long middle(int t, int f) const {
    int q = d.quad[ix(t)];
    if (q < 0) return central(t, 0);
    for (int w : face_vertices(f))
      if (quad_type_separating(w, f) == q) return central(t, quad_zero_side(q, w) ? d.quad_count(t) : 0);
    return central(t, 0);
  }
  int region_tet(long r) const {
    auto it = std::upper_bound(offset.begin(), offset.end(), r);
    return static_cast<int>(it - offset.begin()) - 1;
  }

  /* Calls fn(regionA, regionB, t, f) for every strip identification. */
  template <class Fn>
  void for_each_strip(Fn&& fn) const {
    const auto& tri = d.tri;
    for (std::size_t tt = 0; tt < tri.size(); ++tt) {
      int t = static_cast<int>(tt);
      for (int f = 0; f < 4; ++f) {
        const auto& g = tri.gluing(t, f);
        if (!g || std::make_pair(t, f) > std::make_pair(g->tet, g->face)) continue;
        for (int v : face_vertices(f)) {
          long m = d.arcs_at(t, f, v);
          int v2 = g->perm[ix(v)];
          if (d.arcs_at(g->tet, g->face, v2) != m)
            throw CheckFailure("matching", face_name(t, f), "matching equations fail across " + face_name(t, f));
          for (long r = 0; r < m; ++r) fn(strip(t, f, v, r), strip(g->tet, g->face, v2, r), t, f);
        }
        fn(middle(t, f), middle(g->tet, g->face), t, f);
      }
    }
  }
};

std::vector<std::pair<int, int>> reverse_crossings(const Triangulation& tri, std::vector<std::pair<int, int>> path) {
  std::reverse(path.begin(), path.end());
  for (auto& [t, f] : path) {
    const auto& g = tri.gluing(t, f);
    t = g->tet;
    f = g->face;
  }
  return path;
}

/* Loop words of a graph whose edges are face crossings, from a spanning tree. */
std::vector<grp::Word> graph_loops(const Triangulation& tri, const DualPresentation& dual, long nodes, long root,
                                   const std::vector<std::tuple<long, long, int, int>>& edges) {
  std::vector<std::vector<std::pair<long, std::size_t>>> adj(static_cast<std::size_t>(nodes));
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto [a, b, t, f] = edges[i];
    adj[static_cast<std::size_t>(a)].emplace_back(b, i);
    adj[static_cast<std::size_t>(b)].emplace_back(a, i);
  }
  std::vector<std::vector<std::pair<int, int>>> path(static_cast<std::size_t>(nodes));
  std::vector<bool> seen(static_cast<std::size_t>(nodes), false), tree_edge(edges.size(), false);
  seen[static_cast<std::size_t>(root)] = true;
  std::deque<long> queue{root};
  while (!queue.empty()) {
    long u = queue.front();
    queue.pop_front();
    for (auto [v, i] : adj[static_cast<std::size_t>(u)]) {
      if (seen[static_cast<std::size_t>(v)]) continue;
      seen[static_cast<std::size_t>(v)] = true;
      tree_edge[i] = true;
      auto [a, b, t, f] = edges[i];
      path[static_cast<std::size_t>(v)] = path[static_cast<std::size_t>(u)];
      if (a == u) {
        path[static_cast<std::size_t>(v)].emplace_back(t, f);
      } else {
        const auto& g = tri.gluing(t, f);
        path[static_cast<std::size_t>(v)].emplace_back(g->tet, g->face);
      }
      queue.push_back(v);
    }
  }
  std::vector<grp::Word> out;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto [a, b, t, f] = edges[i];
    if (tree_edge[i] || !seen[static_cast<std::size_t>(a)]) continue;
    auto loop = path[static_cast<std::size_t>(a)];
    loop.emplace_back(t, f);
    auto back = reverse_crossings(tri, path[static_cast<std::size_t>(b)]);
    loop.insert(loop.end(), back.begin(), back.end());
    auto w = dual.word_of(loop);
    if (!w.empty()) out.push_back(w);
  }
  return out;
}

}  // namespace

void check_coorientation(const Triangulation& tri, const NormalSurface& s, const Coorientation& c) {
  Discs d(tri, s);
  if (c.size() != s.size()) throw InputError("coorientation does not match the surface");
  for (std::size_t t = 0; t < s.size(); ++t)
    if (c.signs(t).size() != static_cast<std::size_t>(s.discs_in(t)))
      throw InputError("coorientation sign count wrong in " + tet_name(static_cast<int>(t)));
  d.for_each_arc([&](int t, int f, int v, long, long disc, int t2, int, int v2, long disc2) {
    if (t2 < 0) return;
    int pa = c.signs(ix(t))[d.local(t, disc)] * d.canon(t, disc, v);
    int pb = c.signs(ix(t2))[d.local(t2, disc2)] * d.canon(t2, disc2, v2);
    if (pa != pb) throw CheckFailure("coorientation", face_name(t, f), "coorientation flips across " + face_name(t, f));
  });
}

NormalReport normal_check(const Triangulation& tri, const NormalSurface& s) {
  Discs d(tri, s);
  UnionFind uf(static_cast<std::size_t>(d.total));
  std::vector<std::tuple<long, long, int>> links;  // disc, disc, relative sign
  d.for_each_arc([&](int t, int, int v, long, long disc, int t2, int, int v2, long disc2) {
    if (t2 < 0) return;
    uf.unite(static_cast<int>(disc), static_cast<int>(disc2));
    links.emplace_back(disc, disc2, d.canon(t, disc, v) * d.canon(t2, disc2, v2));
  });

  std::map<int, int> comp_id;
  std::vector<int> comp(static_cast<std::size_t>(d.total));
  for (long i = 0; i < d.total; ++i) {
    int r = uf.find(static_cast<int>(i));
    comp[static_cast<std::size_t>(i)] = comp_id.try_emplace(r, static_cast<int>(comp_id.size())).first->second;
  }
  NormalReport rep;
  rep.components.resize(comp_id.size());
  for (auto& c : rep.components) {
    c.vec = NormalSurface::zero(s.size());
    c.two_sided = true;
  }
  for (std::size_t t = 0; t < s.size(); ++t) {
    int ti = static_cast<int>(t);
    for (int k = 0; k < 4; ++k)
      for (long j = 0; j < d.tri_count(ti, k); ++j) rep.components[ix(comp[ix(static_cast<int>(d.triangle(ti, k, j)))])].vec[t][ix(k)]++;
    for (long j = 0; j < d.quad_count(ti); ++j)
      rep.components[ix(comp[ix(static_cast<int>(d.quad_disc(ti, j)))])].vec[t][ix(4 + d.quad[t])]++;
  }

  ParityUnionFind side(static_cast<std::size_t>(d.total));
  for (auto [a, b, rel] : links)
    if (!side.unite(static_cast<int>(a), static_cast<int>(b), rel < 0 ? 1 : 0))
      rep.components[ix(comp[static_cast<std::size_t>(a)])].two_sided = false;

  std::vector<long> faces(rep.components.size(), 0), arcs(rep.components.size(), 0), verts(rep.components.size(), 0);
  for (long i = 0; i < d.total; ++i) faces[ix(comp[static_cast<std::size_t>(i)])]++;
  d.for_each_arc([&](int, int, int, long, long disc, int, int, int, long) { arcs[ix(comp[static_cast<std::size_t>(disc)])]++; });

  auto sk = skeleton(tri);
  std::map<std::pair<int, long>, bool> point_seen;
  for (std::size_t t = 0; t < s.size(); ++t) {
    int ti = static_cast<int>(t);
    for (int e = 0; e < 6; ++e) {
      int a = kEdgeVertices[ix(e)][0], b = kEdgeVertices[ix(e)][1];
      long m = d.points_on(ti, a, b);
      int cls = sk.edge_class[t][ix(e)];
      for (long k = 0; k < m; ++k) {
        long idx = sk.edge_sign[t][ix(e)] > 0 ? k : m - 1 - k;
        if (!point_seen.emplace(std::make_pair(cls, idx), true).second) continue;
        verts[ix(comp[static_cast<std::size_t>(d.point_disc(ti, a, b, k))])]++;
      }
    }
  }
  for (std::size_t i = 0; i < rep.components.size(); ++i) {
    auto& c = rep.components[i];
    c.discs = faces[i];
    c.euler = verts[i] - arcs[i] + faces[i];
    rep.euler += c.euler;
    rep.orientable = rep.orientable && c.two_sided;
  }
  return rep;
}

SeparationReport is_separating(const Triangulation& tri, const NormalSurface& s) {
  Discs d(tri, s);
  Regions r(d);
  UnionFind uf(static_cast<std::size_t>(r.total));
  r.for_each_strip([&](long a, long b, int, int) { uf.unite(static_cast<int>(a), static_cast<int>(b)); });
  SeparationReport rep;
  rep.complement_components = uf.classes();
  rep.separating = rep.complement_components >= 2;
  return rep;
}

int first_crowded_tet(const NormalSurface& s) {
  for (std::size_t t = 0; t < s.size(); ++t)
    if (s.discs_in(t) > 1) return static_cast<int>(t);
  return -1;
}

std::vector<std::array<int, 4>> corner_sides(const NormalSurface& s, const Coorientation& c) {
  int crowded = first_crowded_tet(s);
  if (crowded >= 0)
    throw CheckFailure("crowded", tet_name(crowded), "more than one disc in " + tet_name(crowded));
  std::vector<std::array<int, 4>> out(s.size(), {0, 0, 0, 0});
  for (std::size_t t = 0; t < s.size(); ++t) {
    if (s.discs_in(t) == 0) continue;
    int sign = c.signs(t).at(0);
    for (int k = 0; k < 4; ++k) {
      if (s[t][ix(k)] == 0) continue;
      for (int v = 0; v < 4; ++v) out[t][ix(v)] = ((v == k) == (sign > 0)) ? 1 : 0;
    }
    for (int q = 0; q < 3; ++q) {
      if (s[t][ix(4 + q)] == 0) continue;
      for (int v = 0; v < 4; ++v) out[t][ix(v)] = (quad_zero_side(q, v) == (sign > 0)) ? 1 : 0;
    }
  }
  return out;
}

int crossing_degree(const Triangulation& tri, const std::vector<std::array<int, 4>>& sides, int tet, int face) {
  const auto& g = tri.gluing(tet, face);
  if (!g) return 0;
  std::optional<int> val;
  for (int v : face_vertices(face)) {
    int dlt = sides[ix(tet)][ix(v)] - sides[ix(g->tet)][ix(g->perm[ix(v)])];
    if (val && *val != dlt)
      throw CheckFailure("crossing_degree", face_name(tet, face), "side labels disagree across " + face_name(tet, face));
    val = dlt;
  }
  return *val;
}

SurfacePsi psi_from_surface(const Triangulation& tri, const DualPresentation& dual, const NormalSurface& s,
                            const Coorientation& c) {
  auto sides = corner_sides(s, c);
  std::size_t n = tri.size();
  std::vector<long> level(n, 0);
  // root paths are listed in breadth-first order, so parents come first
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return dual.root_paths[ix(a)].size() < dual.root_paths[ix(b)].size(); });
  for (int t : order) {
    const auto& p = dual.root_paths[ix(t)];
    if (p.empty()) continue;
    auto [pt, pf] = p.back();
    level[ix(t)] = level[ix(pt)] + crossing_degree(tri, sides, pt, pf);
  }
  SurfacePsi out;
  long g = 0;
  for (const auto& gen : dual.gens) {
    long v = level[ix(gen.tet)] + crossing_degree(tri, sides, gen.tet, gen.face) - level[ix(gen.to_tet)];
    out.values.push_back(v);
    g = std::gcd(g, v);
  }
  out.surjective = g == 1;
  return out;
}

std::vector<grp::Word> surface_subgroup_words(const Triangulation& tri, const DualPresentation& dual,
                                              const NormalSurface& connected) {
  Discs d(tri, connected);
  if (d.total == 0) return {};
  std::vector<std::tuple<long, long, int, int>> edges;
  d.for_each_arc([&](int t, int f, int, long, long disc, int t2, int, int, long disc2) {
    if (t2 >= 0) edges.emplace_back(disc, disc2, t, f);
  });
  return graph_loops(tri, dual, d.total, 0, edges);
}

// ------------------------------------------------------------------ covers

NormalSurface Cover::lift(const NormalSurface& s) const {
  std::vector<Coords> c(base_tets * degree);
  for (std::size_t t = 0; t < base_tets; ++t)
    for (std::size_t i = 0; i < degree; ++i) c[t * degree + i] = s[t];
  return NormalSurface(std::move(c));
}

Coorientation Cover::lift(const Coorientation& c) const {
  std::vector<std::vector<int>> v(base_tets * degree);
  for (std::size_t t = 0; t < base_tets; ++t)
    for (std::size_t i = 0; i < degree; ++i) v[t * degree + i] = c.signs(t);
  return Coorientation(std::move(v));
}

NormalSurface Cover::push_down(const NormalSurface& s) const {
  auto out = NormalSurface::zero(base_tets);
  for (std::size_t t = 0; t < s.size(); ++t)
    for (std::size_t k = 0; k < 7; ++k) out[t / degree][k] += s[t][k];
  return out;
}

Cover build_cover(const Triangulation& tri, const DualPresentation& dual, const grp::PermRep& rep) {
  if (rep.rank() != dual.gens.size()) throw InputError("permutation representation has the wrong number of generators");
  Cover cv;
  cv.degree = rep.degree();
  cv.base_tets = tri.size();
  if (cv.degree == 0) throw InputError("cover of degree 0");
  cv.tri = Triangulation(tri.size() * cv.degree);
  std::vector<grp::Perm> inv;
  for (std::size_t g = 0; g < rep.rank(); ++g) inv.push_back(grp::invert(rep.generator_perm(g)));
  for (std::size_t t = 0; t < tri.size(); ++t) {
    int ti = static_cast<int>(t);
    for (int f = 0; f < 4; ++f) {
      const auto& g = tri.gluing(ti, f);
      if (!g) continue;
      int x = dual.letter(ti, f);
      for (std::size_t i = 0; i < cv.degree; ++i) {
        int j = static_cast<int>(i);
        if (x > 0) j = inv[static_cast<std::size_t>(x - 1)][i];
        else if (x < 0) j = rep.generator_perm(static_cast<std::size_t>(-x - 1))[i];
        cv.tri.set_one_side(cv.tet_index(ti, static_cast<int>(i)), f, Gluing{cv.tet_index(g->tet, j), g->face, g->perm});
      }
    }
  }
  return cv;
}

std::vector<std::pair<int, int>> lift_crossings(const Cover& cover, const std::vector<std::pair<int, int>>& crossings,
                                                int start_tet, int sheet) {
  std::vector<std::pair<int, int>> out;
  int cur = cover.tet_index(start_tet, sheet);
  for (auto [t, f] : crossings) {
    if (cover.base_tet(cur) != t) throw InputError("crossing sequence is not a path");
    out.emplace_back(cur, f);
    const auto& g = cover.tri.gluing(cur, f);
    if (!g) throw InputError("path crosses a boundary face");
    cur = g->tet;
  }
  return out;
}

// --------------------------------------------------------------- corollary

namespace {

/* Region of the complement on the given side of the first disc of s. */
long side_region(const Discs& d, const Regions& r, const Coorientation& c, int side) {
  for (std::size_t tt = 0; tt < d.s.size(); ++tt) {
    int t = static_cast<int>(tt);
    if (d.s.discs_in(tt) == 0) continue;
    int sign = c.signs(tt).at(0) * side;
    for (int k = 0; k < 4; ++k) {
      if (d.tri_count(t, k) == 0) continue;
      if (sign > 0) return r.corner(t, k, 0);
      return d.tri_count(t, k) > 1 ? r.corner(t, k, 1) : r.central_near(t, k);
    }
    return r.central(t, sign > 0 ? 0 : 1);
  }
  throw InputError("empty surface");
}

std::vector<int> region_classes(const Regions& r, long* count) {
  UnionFind uf(static_cast<std::size_t>(r.total));
  r.for_each_strip([&](long a, long b, int, int) { uf.unite(static_cast<int>(a), static_cast<int>(b)); });
  std::vector<int> out(static_cast<std::size_t>(r.total));
  std::map<int, int> id;
  for (long i = 0; i < r.total; ++i)
    out[static_cast<std::size_t>(i)] = id.try_emplace(uf.find(static_cast<int>(i)), static_cast<int>(id.size())).first->second;
  if (count) *count = static_cast<long>(id.size());
  return out;
}

}  // namespace

std::vector<grp::Word> side_subgroup_words(const Triangulation& tri, const DualPresentation& dual,
                                           const NormalSurface& s, const Coorientation& c, int side) {
  Discs d(tri, s);
  Regions r(d);
  long root = side_region(d, r, c, side);
  std::vector<std::tuple<long, long, int, int>> edges;
  r.for_each_strip([&](long a, long b, int t, int f) { edges.emplace_back(a, b, t, f); });
  return graph_loops(tri, dual, r.total, root, edges);
}

OrbitCounts corollary_orbits(const grp::PermRep& rep, const std::vector<grp::Word>& surface_words,
                             const std::vector<grp::Word>& plus_words, const std::vector<grp::Word>& minus_words) {
  return {grp::orbit_count(rep, surface_words), grp::orbit_count(rep, plus_words), grp::orbit_count(rep, minus_words)};
}

CorollaryReport corollary_count(const Triangulation& tri, const DualPresentation& dual, const NormalSurface& s,
                                const Coorientation& c, const grp::PermRep& rep) {
  auto nr = normal_check(tri, s);
  if (nr.components.size() != 1)
    throw CheckFailure("not_connected", std::to_string(nr.components.size()) + " components", "surface is not connected");
  check_coorientation(tri, s, c);
  Discs d(tri, s);
  Regions r(d);
  long classes = 0;
  auto cls = region_classes(r, &classes);
  if (classes < 2) throw CheckFailure("not_separating", "complement connected", "surface does not separate");
  int plus_cls = cls[static_cast<std::size_t>(side_region(d, r, c, 1))];

  CorollaryReport out;
  out.degree = rep.degree();
  auto cover = build_cover(tri, dual, rep);
  auto lifted = cover.lift(s);
  auto lr = normal_check(cover.tri, lifted);
  out.surface_components = lr.components.size();
  out.lift_components = lr.components;

  Discs nd(cover.tri, lifted);
  Regions nreg(nd);
  auto ncls = region_classes(nreg, nullptr);
  std::map<int, bool> plus_set, minus_set;
  for (std::size_t t = 0; t < cover.tri.size(); ++t) {
    int base = cover.base_tet(static_cast<int>(t));
    long nlocal = nreg.offset[t], mlocal = r.offset[ix(base)];
    long span = (t + 1 < cover.tri.size() ? nreg.offset[t + 1] : nreg.total) - nlocal;
    for (long k = 0; k < span; ++k) {
      bool plus = cls[static_cast<std::size_t>(mlocal + k)] == plus_cls;
      (plus ? plus_set : minus_set)[ncls[static_cast<std::size_t>(nlocal + k)]] = true;
    }
  }
  out.plus_components = plus_set.size();
  out.minus_components = minus_set.size();
  out.inequality_holds = out.surface_components >= out.plus_components + out.minus_components;

  auto o = corollary_orbits(rep, surface_subgroup_words(tri, dual, s), side_subgroup_words(tri, dual, s, c, 1),
                            side_subgroup_words(tri, dual, s, c, -1));
  out.surface_orbits = o.surface;
  out.plus_orbits = o.plus;
  out.minus_orbits = o.minus;

  for (std::size_t i = 0; i < lr.components.size(); ++i) {
    auto sep = is_separating(cover.tri, lr.components[i].vec);
    if (!sep.separating) {
      out.nonseparating_component = static_cast<int>(i);
      out.nonseparating_complement = sep.complement_components;
      break;
    }
  }
  return out;
}

}  // namespace btsurf::mfd
