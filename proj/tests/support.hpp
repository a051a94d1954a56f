#ifndef BTSURF_TESTS_SUPPORT_HPP_
#define BTSURF_TESTS_SUPPORT_HPP_

#include <random>
#include <string>
#include <vector>

#include "btsurf/detect.hpp"
#include "btsurf/group.hpp"
#include "btsurf/manifold.hpp"
#include "btsurf/text.hpp"

namespace testing {

inline std::string fixture(const std::string& name) { return std::string(BTSURF_FIXTURE_DIR) + "/" + name; }

inline std::string slurp(const std::string& name) { return btsurf::text::read_file(fixture(name)); }

struct Loaded {
  btsurf::mfd::Triangulation tri;
  btsurf::mfd::NormalSurface surface;
  btsurf::mfd::Coorientation coorientation;
  btsurf::mfd::DualPresentation dual;
  btsurf::grp::PermRep rep;
};

/* <stem>.tri/.surf/.coor and the permutation file `perm`. */
inline Loaded load(const std::string& stem, const std::string& perm) {
  using namespace btsurf;
  Loaded l;
  l.tri = mfd::Triangulation::parse(slurp(stem + ".tri"));
  l.surface = mfd::NormalSurface::parse(slurp(stem + ".surf"), l.tri.size());
  l.coorientation = mfd::Coorientation::parse(slurp(stem + ".coor"), l.surface);
  l.dual = mfd::fundamental_group(l.tri);
  l.rep = grp::PermRep::parse(slurp(perm), l.dual.pres);
  return l;
}

inline btsurf::det::DetectInput detect_input(const Loaded& l) {
  btsurf::det::DetectInput in;
  in.tri = l.tri;
  in.surface = l.surface;
  in.coorientation = l.coorientation;
  in.rep = l.rep;
  return in;
}

inline btsurf::grp::Word random_word(std::mt19937_64& rng, std::size_t rank, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<int> gen(0, static_cast<int>(rank) - 1), sign(0, 1);
  std::vector<int> letters;
  for (std::size_t i = len(rng); i > 0; --i) letters.push_back((gen(rng) + 1) * (sign(rng) != 0 ? 1 : -1));
  return btsurf::grp::Word(letters);
}

}  // namespace testing

#endif  // BTSURF_TESTS_SUPPORT_HPP_
