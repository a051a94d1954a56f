#ifndef BTSURF_TESTS_HOMOLOGY_ORACLE_HPP_
#define BTSURF_TESTS_HOMOLOGY_ORACLE_HPP_

// First homology of a triangulation from the integer Smith form of its
// cellular boundary maps.

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "btsurf/group.hpp"
#include "btsurf/manifold.hpp"

namespace testing {

struct Parity {
  std::vector<std::size_t> up;
  std::vector<int> par;  // sign relative to parent
  explicit Parity(std::size_t n) : up(n), par(n, 1) { std::iota(up.begin(), up.end(), 0); }
  std::pair<std::size_t, int> find(std::size_t x) {
    int s = 1;
    while (up[x] != x) {
      s *= par[x];
      x = up[x];
    }
    return {x, s};
  }
  void join(std::size_t a, std::size_t b, int sign) {  // a = sign * b
    auto [ra, sa] = find(a);
    auto [rb, sb] = find(b);
    if (ra != rb) {
      up[ra] = rb;
      par[ra] = sa * sign * sb;
    }
  }
};

using IntMatrix = std::vector<std::vector<long>>;

// Diagonal of the integer Smith form (nonzero entries only).
inline std::vector<long> smith_diagonal(IntMatrix m) {
  std::vector<long> out;
  std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  std::size_t r0 = 0;
  for (std::size_t c0 = 0; r0 < rows && c0 < cols;) {
    // pick the smallest nonzero entry in the remaining block
    long best = 0;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = r0; i < rows; ++i)
      for (std::size_t j = c0; j < cols; ++j)
        if (m[i][j] != 0 && (best == 0 || std::labs(m[i][j]) < best)) {
          best = std::labs(m[i][j]);
          bi = i;
          bj = j;
        }
    if (best == 0) break;
    std::swap(m[r0], m[bi]);
    for (auto& row : m) std::swap(row[c0], row[bj]);
    bool clean = true;
    for (std::size_t i = r0 + 1; i < rows; ++i) {
      long q = m[i][c0] / m[r0][c0];
      for (std::size_t j = c0; j < cols; ++j) m[i][j] -= q * m[r0][j];
      clean = clean && m[i][c0] == 0;
    }
    for (std::size_t j = c0 + 1; j < cols; ++j) {
      long q = m[r0][j] / m[r0][c0];
      for (std::size_t i = r0; i < rows; ++i) m[i][j] -= q * m[i][c0];
      clean = clean && m[r0][j] == 0;
    }
    if (!clean) continue;
    // divisibility: fold any entry not divisible by the pivot into the pivot row
    bool divides = true;
    for (std::size_t i = r0 + 1; i < rows && divides; ++i)
      for (std::size_t j = c0 + 1; j < cols; ++j)
        if (m[i][j] % m[r0][c0] != 0) {
          for (std::size_t k = c0; k < cols; ++k) m[r0][k] += m[i][k];
          divides = false;
          break;
        }
    if (!divides) continue;
    out.push_back(std::labs(m[r0][c0]));
    ++r0;
    ++c0;
  }
  return out;
}

inline btsurf::grp::Abelianization homology_oracle(const btsurf::mfd::Triangulation& tri) {
  const std::size_t n = tri.size();
  const int pairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  auto eidx = [&](std::size_t t, int a, int b) {
    if (a > b) std::swap(a, b);
    for (int k = 0; k < 6; ++k)
      if (pairs[k][0] == a && pairs[k][1] == b) return t * 6 + static_cast<std::size_t>(k);
    return std::size_t{0};
  };
  Parity verts(4 * n), edges(6 * n);
  for (std::size_t t = 0; t < n; ++t)
    for (int f = 0; f < 4; ++f) {
      auto g = tri.gluing(static_cast<int>(t), f);
      if (!g) continue;
      auto u = static_cast<std::size_t>(g->tet);
      for (int a = 0; a < 4; ++a) {
        if (a == f) continue;
        verts.join(t * 4 + static_cast<std::size_t>(a), u * 4 + static_cast<std::size_t>(g->perm[static_cast<std::size_t>(a)]), 1);
        for (int b = a + 1; b < 4; ++b) {
          if (b == f) continue;
          int pa = g->perm[static_cast<std::size_t>(a)], pb = g->perm[static_cast<std::size_t>(b)];
          edges.join(eidx(t, a, b), eidx(u, pa, pb), pa < pb ? 1 : -1);
        }
      }
    }
  std::map<std::size_t, std::size_t> vid, eid;
  for (std::size_t i = 0; i < 4 * n; ++i) vid.emplace(verts.find(i).first, vid.size());
  for (std::size_t i = 0; i < 6 * n; ++i) eid.emplace(edges.find(i).first, eid.size());
  const std::size_t V = vid.size(), E = eid.size();

  IntMatrix d1(V, std::vector<long>(E, 0));
  std::vector<bool> seen(E, false);
  for (std::size_t t = 0; t < n; ++t)
    for (int k = 0; k < 6; ++k) {
      auto [root, sign] = edges.find(t * 6 + static_cast<std::size_t>(k));
      std::size_t e = eid[root];
      if (seen[e]) continue;
      seen[e] = true;
      std::size_t va = vid[verts.find(t * 4 + static_cast<std::size_t>(pairs[k][0])).first];
      std::size_t vb = vid[verts.find(t * 4 + static_cast<std::size_t>(pairs[k][1])).first];
      d1[vb][e] += sign;
      d1[va][e] -= sign;
    }

  IntMatrix d2(E);
  for (std::size_t t = 0; t < n; ++t)
    for (int f = 0; f < 4; ++f) {
      auto g = tri.gluing(static_cast<int>(t), f);
      if (g && (static_cast<std::size_t>(g->tet) < t || (static_cast<std::size_t>(g->tet) == t && g->face < f))) continue;
      std::vector<int> v;
      for (int a = 0; a < 4; ++a)
        if (a != f) v.push_back(a);
      std::vector<long> col(E, 0);
      auto add = [&](int a, int b, long c) {
        auto [root, sign] = edges.find(eidx(t, a, b));
        col[eid[root]] += c * sign;
      };
      add(v[1], v[2], 1);
      add(v[0], v[2], -1);
      add(v[0], v[1], 1);
      for (std::size_t e = 0; e < E; ++e) d2[e].push_back(col[e]);
    }
  auto r1 = smith_diagonal(d1).size();
  auto s2 = smith_diagonal(d2);
  btsurf::grp::Abelianization out;
  out.rank = E - r1 - s2.size();
  for (long x : s2)
    if (x > 1) out.torsion.push_back(x);
  std::sort(out.torsion.begin(), out.torsion.end());
  return out;
}

}  // namespace testing

#endif  // BTSURF_TESTS_HOMOLOGY_ORACLE_HPP_
