#include "btsurf/detect.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <utility>

#include "btsurf/error.hpp"

namespace btsurf::det {

namespace {

using Crossings = std::vector<std::pair<int, int>>;

std::size_t ix(int x) { return static_cast<std::size_t>(x); }

/* Integrates crossing degrees of T along a dual path of the base manifold,
 * lifted into the cover from `ntet`. Returns the final level and cover tet. */
std::pair<long, int> walk(const Pipeline& p, const Crossings& path, long level, int ntet) {
  for (auto [t, f] : path) {
    if (p.cover.base_tet(ntet) != t) throw InputError("walk left the lifted path");
    level += mfd::crossing_degree(p.cover.tri, p.lift_sides, ntet, f);
    const auto& g = p.cover.tri.gluing(ntet, f);
    if (!g) throw InputError("walk crosses a boundary face");
    ntet = g->tet;
  }
  return {level, ntet};
}

Crossings concat(Crossings a, const Crossings& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

bt::LatticeBasis diagonal_basis(const std::vector<long>& e) {
  std::vector<ff::RatFunc> d;
  for (long x : e) d.push_back(ff::RatFunc::t_pow(x));
  return bt::LatticeBasis(Matrix::diagonal(d));
}

std::string corner_witness(const std::string& word, int tet, int corner) {
  return "word=" + word + " tet=" + std::to_string(tet) + " corner=" + std::to_string(corner);
}

}  // namespace

Pipeline Pipeline::build(const DetectInput& in) {
  Pipeline p;
  p.tri = in.tri;
  p.surface = in.surface;
  p.coorientation = in.coorientation;
  mfd::require_valid(p.tri);
  mfd::normal_check(p.tri, p.surface);
  mfd::check_coorientation(p.tri, p.surface, p.coorientation);
  if (p.surface.empty()) throw CheckFailure("empty_surface", "surface", "the surface has no discs");
  if (int t = mfd::first_crowded_tet(p.surface); t >= 0)
    throw CheckFailure("pipeline_ready", "tet " + std::to_string(t), "more than one disc in tet " + std::to_string(t));

  p.dual = mfd::fundamental_group(p.tri);
  if (in.rep.rank() != p.dual.gens.size())
    throw InputError("permutation representation has " + std::to_string(in.rep.rank()) + " generators, expected " +
                     std::to_string(p.dual.gens.size()));
  p.cosets = grp::CosetStructure::build(p.dual.pres, in.rep);
  p.cover = mfd::build_cover(p.tri, p.dual, in.rep);

  auto lifted = p.cover.lift(p.surface);
  auto lifted_c = p.cover.lift(p.coorientation);
  auto lr = mfd::normal_check(p.cover.tri, lifted);
  p.lift_components = lr.components.size();
  for (std::size_t i = 0; i < lr.components.size(); ++i) {
    if (!mfd::is_separating(p.cover.tri, lr.components[i].vec).separating) {
      p.lift_component = static_cast<int>(i);
      break;
    }
  }
  if (p.lift_component < 0)
    throw CheckFailure("no_nonseparating_lift", std::to_string(p.lift_components) + " components",
                       "every component of the lifted surface separates the cover");
  p.lift = lr.components[ix(p.lift_component)].vec;
  std::vector<std::vector<int>> signs(p.lift.size());
  for (std::size_t t = 0; t < p.lift.size(); ++t)
    if (p.lift.discs_in(t) > 0) signs[t] = lifted_c.signs(t);
  p.lift_coorientation = mfd::Coorientation(std::move(signs));
  p.lift_sides = mfd::corner_sides(p.lift, p.lift_coorientation);

  p.cover_dual = mfd::fundamental_group(p.cover.tri);
  p.cover_psi = mfd::psi_from_surface(p.cover.tri, p.cover_dual, p.lift, p.lift_coorientation);
  if (!p.cover_psi.surjective)
    throw CheckFailure("psi_not_surjective", "lift component " + std::to_string(p.lift_component),
                       "intersection with the chosen lift is not surjective");

  for (const auto& sg : p.cosets.schreier_generators()) {
    auto path = mfd::lift_crossings(p.cover, p.dual.loop_crossings(sg.word), 0, 0);
    long v = 0;
    const auto word = p.cover_dual.word_of(path);
    for (int x : word.letters())
      v += (x > 0 ? 1 : -1) * p.cover_psi.values[static_cast<std::size_t>(std::abs(x) - 1)];
    p.psi_geom.values.push_back(v);
  }
  if (in.psi_override) {
    if (in.psi_override->values.size() != p.psi_geom.values.size())
      throw InputError("psi file has the wrong number of Schreier generators");
    p.psi = *in.psi_override;
    p.psi_overridden = true;
  } else {
    p.psi = p.psi_geom;
  }
  return p;
}

HeightAssignment compute_heights(const Pipeline& p, const Gauge& gauge) {
  const std::size_t n = p.tri.size(), d = p.degree();
  if (gauge.tet < 0 || static_cast<std::size_t>(gauge.tet) >= n || gauge.corner < 0 || gauge.corner > 3)
    throw InputError("gauge corner out of range");
  HeightAssignment h;
  h.tets = n;
  h.degree = d;
  h.gauge = gauge;
  h.h.assign(n * d, {0, 0, 0, 0});
  std::vector<long> level(n * d, 0);
  for (std::size_t i = 0; i < d; ++i) {
    auto [l0, nt0] = walk(p, p.dual.loop_crossings(p.cosets.rep(i).inverse()), 0, 0);
    if (nt0 != p.cover.tet_index(0, static_cast<int>(i)))
      throw CheckFailure("heights", "coset " + std::to_string(i + 1), "coset representative path ends in the wrong sheet");
    for (std::size_t t = 0; t < n; ++t) {
      auto [l, nt] = walk(p, p.dual.root_paths[t], l0, nt0);
      level[t * d + i] = l;
      for (int k = 0; k < 4; ++k) h.h[t * d + i][ix(k)] = l + p.lift_sides[ix(nt)][ix(k)];
    }
  }
  h.offset = h.h[ix(gauge.tet) * d][ix(gauge.corner)];
  for (auto& row : h.h)
    for (auto& x : row) x -= h.offset;

  for (std::size_t t = 0; t < n; ++t) {
    int ti = static_cast<int>(t);
    for (int f = 0; f < 4; ++f) {
      if (p.tri.is_boundary(ti, f)) continue;
      int x = p.dual.letter(ti, f);
      for (std::size_t i = 0; i < d; ++i) {
        int nt = p.cover.tet_index(ti, static_cast<int>(i));
        const auto& g = p.cover.tri.gluing(nt, f);
        int t2 = p.cover.base_tet(g->tet), j = p.cover.sheet(g->tet);
        long c = mfd::crossing_degree(p.cover.tri, p.lift_sides, nt, f);
        grp::Word delta = p.cosets.rep(i).inverse() * (x == 0 ? grp::Word() : grp::Word({x})) * p.cosets.rep(ix(j));
        long want = p.psi_geom.eval(p.cosets, delta);
        if (level[t * d + i] + c - level[ix(t2) * d + ix(j)] != want)
          throw CheckFailure("heights", p.dual.pres.format(delta),
                             "heights across tet " + std::to_string(t) + " face " + std::to_string(f) +
                                 " do not shift by psi of the closing element");
      }
    }
  }
  return h;
}

long walk_height(const Pipeline& p, const HeightAssignment& h, const grp::Word& word, int coset, int tet, int corner) {
  auto path = concat(p.dual.loop_crossings(p.cosets.rep(ix(coset)).inverse() * word), p.dual.root_paths[ix(tet)]);
  auto [l, nt] = walk(p, path, 0, 0);
  return l + p.lift_sides[ix(nt)][ix(corner)] - h.offset;
}

std::vector<long> lattice_exponents(const std::vector<long>& heights) {
  std::vector<long> e;
  e.reserve(2 * heights.size());
  for (long x : heights) {
    e.push_back(x);
    e.push_back(-x);
  }
  return e;
}

std::array<bt::DiagonalClass, 4> f0(const HeightAssignment& h, int tet) {
  auto at = [&](int k) {
    std::vector<long> hs;
    for (std::size_t i = 0; i < h.degree; ++i) hs.push_back(h.at(tet, static_cast<int>(i), k));
    return bt::DiagonalClass(lattice_exponents(hs));
  };
  return {at(0), at(1), at(2), at(3)};
}

EquivarianceReport check_equivariance(const Pipeline& p, const HeightAssignment& h, const std::vector<grp::Word>& words,
                                      bool cross_check) {
  EquivarianceReport rep;
  const std::size_t d = p.degree();
  for (const auto& w : words) {
    ++rep.words;
    auto m = grp::induced_rep(w, p.cosets, p.psi);
    Matrix g = cross_check ? grp::monomial_to_matrix(m) : Matrix();
    for (std::size_t t = 0; t < p.tri.size(); ++t) {
      int ti = static_cast<int>(t);
      std::vector<std::pair<long, int>> ends(d);
      for (std::size_t j = 0; j < d; ++j) {
        auto path = concat(p.dual.loop_crossings(p.cosets.rep(j).inverse() * w), p.dual.root_paths[t]);
        ends[j] = walk(p, path, 0, 0);
      }
      for (int k = 0; k < 4; ++k) {
        std::vector<long> hs(d), lhs(d), rhs(d);
        for (std::size_t i = 0; i < d; ++i) hs[i] = h.at(ti, static_cast<int>(i), k);
        for (std::size_t i = 0; i < d; ++i) lhs[ix(m.sigma[i])] = hs[i] + m.exps[i];
        for (std::size_t j = 0; j < d; ++j) rhs[j] = ends[j].first + p.lift_sides[ix(ends[j].second)][ix(k)] - h.offset;
        ++rep.checks;
        bt::DiagonalClass want(lattice_exponents(rhs));
        if (bt::DiagonalClass(lattice_exponents(lhs)) != want)
          throw CheckFailure("equivariance", corner_witness(p.dual.pres.format(w), ti, k),
                             "induced action disagrees with the translated corner");
        if (cross_check) {
          auto moved = bt::act(g, bt::DiagonalClass(lattice_exponents(hs)).basis());
          if (!bt::homothetic(moved, want.basis()))
            throw CheckFailure("equivariance", corner_witness(p.dual.pres.format(w), ti, k),
                               "general lattice action disagrees with the translated corner");
          ++rep.cross_checks;
        }
      }
    }
  }
  return rep;
}

TetImageReport check_tet_images(const Pipeline& p, const HeightAssignment& h, bool cross_check) {
  TetImageReport rep;
  const std::size_t d = p.degree();
  auto sides = mfd::corner_sides(p.surface, p.coorientation);
  for (std::size_t t = 0; t < p.tri.size(); ++t) {
    int ti = static_cast<int>(t);
    std::string where = "tet " + std::to_string(t);
    TetImage img;
    img.tet = ti;
    std::optional<std::array<bool, 4>> pattern;
    std::vector<long> low(d);
    for (std::size_t i = 0; i < d; ++i) {
      std::array<long, 4> v{};
      for (int k = 0; k < 4; ++k) v[ix(k)] = h.at(ti, static_cast<int>(i), k);
      long mn = *std::min_element(v.begin(), v.end()), mx = *std::max_element(v.begin(), v.end());
      low[i] = mn;
      if (mx - mn > 1) throw CheckFailure("tet_images", where, "corner heights in one coset span more than one level");
      if (mx == mn) continue;
      img.crossed_cosets.push_back(static_cast<int>(i));
      std::array<bool, 4> pl{};
      for (int k = 0; k < 4; ++k) pl[ix(k)] = v[ix(k)] == mx;
      if (pattern && *pattern != pl)
        throw CheckFailure("tet_images", where, "crossed cosets split the corners differently");
      pattern = pl;
    }
    std::set<bt::DiagonalClass> classes;
    for (const auto& c : f0(h, ti)) classes.insert(c);
    img.classes = classes.size();
    if (classes.size() > 2) throw CheckFailure("tet_images", where, "corners map to more than two classes");

    bool has_disc = p.surface.discs_in(t) > 0;
    if (!pattern) {
      if (classes.size() != 1) throw CheckFailure("tet_images", where, "uncrossed tetrahedron with two classes");
      if (has_disc) throw CheckFailure("tet_images", where, "surface disc not met by the chosen lift in any coset");
      img.lambda_plus = img.lambda_minus = lattice_exponents(low);
      rep.tets.push_back(std::move(img));
      continue;
    }
    img.plus = *pattern;
    if (classes.size() != 2) throw CheckFailure("tet_images", where, "crossed tetrahedron with a single class");
    if (!has_disc) throw CheckFailure("tet_images", where, "crossed tetrahedron carries no surface disc");
    for (int k = 0; k < 4; ++k)
      if (img.plus[ix(k)] != (sides[t][ix(k)] == 1))
        throw CheckFailure("tet_images", where, "higher corners are not the positive side of the surface");

    std::vector<long> hi = low, lprime = lattice_exponents(low);
    for (int i : img.crossed_cosets) {
      hi[ix(i)] += 1;
      lprime[2 * ix(i) + 1] -= 1;
    }
    img.lambda_minus = lattice_exponents(low);
    img.lambda_plus = lattice_exponents(hi);
    img.lambda_prime = lprime;
    bt::DiagonalClass cp(img.lambda_plus), cm(img.lambda_minus), cq(lprime);
    img.distance = bt::diagonal_distance(cp, cm);
    if (img.distance != 2) throw CheckFailure("tet_images", where, "the two classes are not at distance 2");
    if (bt::diagonal_distance(cq, cp) != 1 || bt::diagonal_distance(cq, cm) != 1)
      throw CheckFailure("tet_images", where, "primed lattice is not adjacent to both classes");

    auto mover = img.lambda_minus;
    for (int i : img.crossed_cosets) {
      mover[2 * ix(i)] += 1;
      mover[2 * ix(i) + 1] -= 1;
    }
    if (mover != img.lambda_plus) throw CheckFailure("tet_images", where, "mover does not carry the lower class to the higher");

    if (cross_check) {
      auto bp = diagonal_basis(img.lambda_plus), bm = diagonal_basis(img.lambda_minus), bq = diagonal_basis(lprime);
      auto tq = bq.scaled(ff::RatFunc::t_pow(1));
      bool ok = bt::graph_distance(bp, bm) == 2 && bt::adjacent(bq, bp) && bt::adjacent(bq, bm);
      for (const auto* b : {&bp, &bm})
        ok = ok && bt::contains(bq, *b) && bt::contains(*b, tq) && !bt::homothetic(*b, bq) && bt::flag_witness(bq, *b);
      if (!ok) throw CheckFailure("tet_images", where, "general lattice operations disagree with the diagonal classes");
      ++rep.cross_checks;
    }
    ++rep.two_class;
    rep.tets.push_back(std::move(img));
  }
  return rep;
}

mfd::NormalSurface extract_dual_surface(const TetImageReport& lb, std::size_t tets) {
  auto out = mfd::NormalSurface::zero(tets);
  for (const auto& img : lb.tets) {
    if (img.classes != 2) continue;
    std::vector<int> plus, minus;
    for (int k = 0; k < 4; ++k) (img.plus[ix(k)] ? plus : minus).push_back(k);
    auto& c = out[ix(img.tet)];
    if (plus.size() == 1) c[ix(plus[0])] = 2;
    else if (minus.size() == 1) c[ix(minus[0])] = 2;
    else c[ix(4 + mfd::quad_type_separating(plus[0], plus[1]))] = 2;
  }
  return out;
}

CharacterReport character_report(const grp::Presentation& pres, const grp::CosetStructure& cs, const grp::PsiMap& psi,
                                 const std::vector<grp::Word>& words) {
  CharacterReport rep;
  for (const auto& w : words) {
    TraceRow row;
    row.word = pres.format(w);
    row.trace = grp::trace_poly(grp::induced_rep(w, cs, psi));
    if (!row.trace.is_zero()) row.valuation = row.trace.lowest();
    row.symmetric = row.trace.symmetric();
    if (row.symmetric) row.w_coeffs = row.trace.in_w();
    rep.all_symmetric = rep.all_symmetric && row.symmetric;
    if (!row.trace.is_constant()) rep.nonconstant = true;
    if (row.valuation && *row.valuation < 0) rep.pole_at_zero = true;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

std::vector<int> stabilizer_probe(const grp::CosetStructure& cs, const grp::PsiMap& psi, const bt::DiagonalClass& cls,
                                  const std::vector<grp::Word>& generators) {
  std::vector<int> moving;
  const auto& e = cls.exponents();
  for (std::size_t g = 0; g < generators.size(); ++g) {
    auto m = grp::induced_rep(generators[g], cs, psi);
    std::vector<long> moved(e.size());
    for (std::size_t i = 0; i < m.degree(); ++i) {
      std::size_t r = 2 * ix(m.sigma[i]);
      moved[r] = e[2 * i] + m.exps[i];
      moved[r + 1] = e[2 * i + 1] - m.exps[i];
    }
    if (bt::DiagonalClass(moved) != cls) moving.push_back(static_cast<int>(g));
  }
  return moving;
}

std::vector<grp::Word> report_words(const grp::Presentation& pres, const grp::CosetStructure& cs,
                                    const std::vector<grp::Word>& extra) {
  std::vector<grp::Word> out;
  std::set<grp::Word> seen;
  auto add = [&](const grp::Word& w) {
    if (seen.insert(w).second) out.push_back(w);
  };
  const int r = static_cast<int>(pres.rank());
  for (int a = 0; a < r; ++a) add(grp::Word::generator(a));
  for (int a = 0; a < r; ++a)
    for (int b = a + 1; b < r; ++b) add(grp::Word::generator(a) * grp::Word::generator(b));
  for (const auto& sg : cs.schreier_generators()) add(sg.word);
  for (const auto& w : extra) add(w);
  return out;
}

DetectReport detect(const DetectInput& in) {
  DetectReport rep;
  rep.gauge = in.gauge;
  try {
    Pipeline p = Pipeline::build(in);
    rep.presentation = p.dual.pres;
    rep.degree = p.degree();
    rep.cover_tets = p.cover.tri.size();
    rep.lift_components = p.lift_components;
    rep.lift_component = p.lift_component;
    rep.psi_values = p.psi.values;
    rep.psi_geom_values = p.psi_geom.values;
    rep.psi_overridden = p.psi_overridden;
    rep.psi_surjective = p.psi.surjective();
    for (const auto& sg : p.cosets.schreier_generators()) rep.schreier_words.push_back(p.dual.pres.format(sg.word));
    for (const auto& w : p.cosets.reps()) rep.coset_reps.push_back(p.dual.pres.format(w));

    rep.heights = compute_heights(p, in.gauge);

    std::vector<grp::Word> words;
    const int r = static_cast<int>(p.dual.pres.rank());
    for (int g = 0; g < r; ++g) {
      words.push_back(grp::Word::generator(g));
      words.push_back(grp::Word::generator(g).inverse());
    }
    if (r > 0) {
      std::mt19937_64 rng(in.seed);
      std::uniform_int_distribution<int> gen(0, r - 1), len(1, 8), sign(0, 1);
      for (std::size_t k = 0; k < in.random_words; ++k) {
        std::vector<int> ls;
        for (int l = len(rng); l > 0; --l) ls.push_back((sign(rng) ? 1 : -1) * (gen(rng) + 1));
        words.emplace_back(std::move(ls));
      }
    }
    rep.equivariance = check_equivariance(p, *rep.heights, words, in.cross_check);

    rep.psi_relator_failure = p.psi.first_nonvanishing_relator(p.cosets, p.dual.pres);
    if (rep.psi_relator_failure >= 0)
      throw CheckFailure("psi_relator", "relator " + std::to_string(rep.psi_relator_failure),
                         "psi does not vanish on a subgroup relator");
    if (long k = p.psi_geom.first_nonvanishing_relator(p.cosets, p.dual.pres); k >= 0)
      throw CheckFailure("psi_relator", "relator " + std::to_string(k), "geometric psi does not vanish on a relator");

    rep.tet_images = check_tet_images(p, *rep.heights, in.cross_check);

    rep.dual_surface = extract_dual_surface(*rep.tet_images, p.tri.size());
    auto nr = mfd::normal_check(p.tri, *rep.dual_surface);
    rep.dual_components = nr.components.size();
    rep.dual_equals_two_copies = *rep.dual_surface == p.surface.scaled(2);
    if (!rep.dual_equals_two_copies)
      throw CheckFailure("dual_surface", "coordinates", "extracted surface is not two copies of the input");
    auto sr = mfd::normal_check(p.tri, p.surface);
    if (rep.dual_components != 2 * sr.components.size())
      throw CheckFailure("dual_surface", std::to_string(rep.dual_components) + " components",
                         "extracted surface does not split into two copies");

    rep.character = character_report(p.dual.pres, p.cosets, p.psi, report_words(p.dual.pres, p.cosets, in.extra_words));

    std::vector<grp::Word> gens;
    for (int g = 0; g < r; ++g) gens.push_back(grp::Word::generator(g));
    auto base = f0(*rep.heights, in.gauge.tet)[ix(in.gauge.corner)];
    rep.moving_generators = stabilizer_probe(p.cosets, p.psi, base, gens);

    if (!rep.character->passed()) {
      std::string why = !rep.character->all_symmetric ? "asymmetric trace"
                        : !rep.character->nonconstant ? "all traces constant"
                                                       : "no trace with a pole at z = 0";
      throw CheckFailure("character", why, why);
    }
  } catch (const CheckFailure& e) {
    rep.failure = Failure{e.kind, e.witness, e.what()};
  }
  return rep;
}

}  // namespace btsurf::det
