#ifndef BTSURF_DETECT_HPP_
#define BTSURF_DETECT_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "btsurf/building.hpp"
#include "btsurf/group.hpp"
#include "btsurf/manifold.hpp"

namespace btsurf::det {

/* Height 0 is placed at corner `corner` of tetrahedron `tet` in coset 1. */
struct Gauge {
  int tet = 0;
  int corner = 0;
};

struct DetectInput {
  mfd::Triangulation tri;
  mfd::NormalSurface surface;
  mfd::Coorientation coorientation;
  grp::PermRep rep;
  std::optional<grp::PsiMap> psi_override;  // replaces the geometric psi
  Gauge gauge;
  bool cross_check = false;  // repeat fast-path results with general lattice operations
  std::uint64_t seed = 0;
  std::size_t random_words = 16;
  std::vector<grp::Word> extra_words;
};

/* Everything derived from the inputs before heights are computed. */
struct Pipeline {
  mfd::Triangulation tri;
  mfd::NormalSurface surface;
  mfd::Coorientation coorientation;
  mfd::DualPresentation dual;
  grp::CosetStructure cosets;
  mfd::Cover cover;
  mfd::DualPresentation cover_dual;
  int lift_component = -1;
  std::size_t lift_components = 0;
  mfd::NormalSurface lift;  // T in the cover
  mfd::Coorientation lift_coorientation;
  std::vector<std::array<int, 4>> lift_sides;
  mfd::SurfacePsi cover_psi;  // on the cover's dual generators
  grp::PsiMap psi_geom;       // on Schreier generators
  grp::PsiMap psi;            // in use
  bool psi_overridden = false;

  /* Validates inputs and builds the cover, T and both psi maps. */
  static Pipeline build(const DetectInput& in);
  std::size_t degree() const { return cosets.degree(); }
};

/* h[tet * d + i][k] = height of corner k of rep(i)^-1 applied to the base lift of tet. */
struct HeightAssignment {
  std::size_t tets = 0, degree = 0;
  Gauge gauge;
  long offset = 0;  // subtracted from integrated heights to fix the gauge
  std::vector<std::array<long, 4>> h;
  long at(int tet, int coset, int corner) const {
    return h[static_cast<std::size_t>(tet) * degree + static_cast<std::size_t>(coset)][static_cast<std::size_t>(corner)];
  }
};

/* Integrates crossing degrees of T along lifted dual paths. Checks every face
 * of the cover against psi_geom on the Schreier element it closes up;
 * throws CheckFailure("heights", word) on a mismatch. */
HeightAssignment compute_heights(const Pipeline& p, const Gauge& gauge);

/* Height of corner k of (word * base lift of tet), coset j, by walking. */
long walk_height(const Pipeline& p, const HeightAssignment& h, const grp::Word& word, int coset, int tet, int corner);

/* Exponent vector (h_1, -h_1, ..., h_d, -h_d). */
std::vector<long> lattice_exponents(const std::vector<long>& heights);
std::array<bt::DiagonalClass, 4> f0(const HeightAssignment& h, int tet);

struct EquivarianceReport {
  std::size_t words = 0;
  std::size_t checks = 0;
  std::size_t cross_checks = 0;
};

/* For each word and each corner of each tetrahedron, compares the induced
 * action on the corner's class with the class of the translated corner.
 * Throws CheckFailure("equivariance", "word=<w> tet=<t> corner=<k>"). */
EquivarianceReport check_equivariance(const Pipeline& p, const HeightAssignment& h, const std::vector<grp::Word>& words,
                                      bool cross_check);

struct TetImage {
  int tet = 0;
  std::size_t classes = 1;
  long distance = 0;
  std::vector<int> crossed_cosets;
  std::array<bool, 4> plus{};  // corner in the higher class
  std::vector<long> lambda_plus, lambda_minus, lambda_prime;
};

struct TetImageReport {
  std::vector<TetImage> tets;
  std::size_t two_class = 0;
  std::size_t cross_checks = 0;
};

/* Throws CheckFailure("tet_images", "tet <t>") on 3+ classes, distance != 2, a
 * primed lattice not adjacent to both classes, or a side partition that
 * disagrees with the input surface. */
TetImageReport check_tet_images(const Pipeline& p, const HeightAssignment& h, bool cross_check);

/* Two parallel copies of the disc separating the higher corners from the
 * lower ones, in every two-class tetrahedron. */
mfd::NormalSurface extract_dual_surface(const TetImageReport& lb, std::size_t tets);

struct TraceRow {
  std::string word;
  grp::LaurentPoly trace;
  std::optional<long> valuation;  // none for the zero polynomial
  bool symmetric = false;
  std::vector<long> w_coeffs;  // trace as a polynomial in z + 1/z
};

struct CharacterReport {
  std::vector<TraceRow> rows;
  bool all_symmetric = true;
  bool nonconstant = false;
  bool pole_at_zero = false;
  bool passed() const { return all_symmetric && nonconstant && pole_at_zero; }
};

CharacterReport character_report(const grp::Presentation& pres, const grp::CosetStructure& cs, const grp::PsiMap& psi,
                                 const std::vector<grp::Word>& words);

/* Generators whose induced action moves the diagonal class. */
std::vector<int> stabilizer_probe(const grp::CosetStructure& cs, const grp::PsiMap& psi, const bt::DiagonalClass& cls,
                                  const std::vector<grp::Word>& generators);

/* Generators, pairwise products, Schreier words and extra words. */
std::vector<grp::Word> report_words(const grp::Presentation& pres, const grp::CosetStructure& cs,
                                    const std::vector<grp::Word>& extra);

struct Failure {
  std::string kind, witness, message;
};

struct DetectReport {
  Gauge gauge;
  grp::Presentation presentation;
  std::size_t degree = 0;
  std::size_t cover_tets = 0;
  std::size_t lift_components = 0;
  int lift_component = -1;
  std::vector<long> psi_values;  // on Schreier generators, in use
  std::vector<long> psi_geom_values;
  bool psi_overridden = false;
  bool psi_surjective = false;
  long psi_relator_failure = -1;
  std::optional<HeightAssignment> heights;
  std::optional<EquivarianceReport> equivariance;
  std::optional<TetImageReport> tet_images;
  std::optional<mfd::NormalSurface> dual_surface;
  bool dual_equals_two_copies = false;
  std::size_t dual_components = 0;
  std::optional<CharacterReport> character;
  std::vector<int> moving_generators;
  std::vector<std::string> schreier_words;
  std::vector<std::string> coset_reps;
  std::optional<Failure> failure;
  bool passed() const { return !failure.has_value(); }
};

/* Runs every stage; the first failed check is recorded in `failure` and later
 * stages are skipped. InputError propagates. */
DetectReport detect(const DetectInput& in);

}  // namespace btsurf::det

#endif  // BTSURF_DETECT_HPP_
