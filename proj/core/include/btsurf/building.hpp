#ifndef BTSURF_BUILDING_HPP_
#define BTSURF_BUILDING_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "btsurf/funcfield.hpp"
#include "btsurf/matrix.hpp"

namespace btsurf::bt {

/* A lattice in F^n over O_v = Q[t] localized at t, given by the columns of a
 * nonsingular n x n matrix. */
class LatticeBasis {
 public:
  /* Throws InputError if m is not square or is singular. */
  explicit LatticeBasis(Matrix m);
  std::size_t dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }
  LatticeBasis scaled(const ff::RatFunc& s) const { return LatticeBasis(m_.scaled(s)); }

 private:
  Matrix m_;
};

/* Exponents a_1 <= ... <= a_n such that A has a basis (e_i) with
 * (t^{a_i} e_i) a basis of B. Computed by a Smith normal form of A^{-1} B over
 * O_v, pivoting on the entry of minimal valuation (ties: row-major order). */
std::vector<long> invariant_factor_exponents(const LatticeBasis& a, const LatticeBasis& b);

bool homothetic(const LatticeBasis& a, const LatticeBasis& b);
bool adjacent(const LatticeBasis& a, const LatticeBasis& b);
/* Graph distance of the homothety classes in the 1-skeleton: max - min of the
 * invariant-factor exponents. */
long graph_distance(const LatticeBasis& a, const LatticeBasis& b);
/* v(det) mod n, in [0, n). */
long vertex_type(const LatticeBasis& a);
/* Column span of g * A. Throws InputError if g is singular. */
LatticeBasis act(const Matrix& g, const LatticeBasis& a);

/* inner ⊆ outer as O_v-modules. */
bool contains(const LatticeBasis& outer, const LatticeBasis& inner);

/* Representatives with t*outer ⊊ inner ⊊ outer. */
struct Flag {
  LatticeBasis inner;
  LatticeBasis outer;
  bool inner_is_a;  // inner is homothetic to the first argument
};

/* For adjacent classes, constructs and membership-checks a flag; nullopt
 * otherwise. */
std::optional<Flag> flag_witness(const LatticeBasis& a, const LatticeBasis& b);

/* span(t^n e1, t^-n e2) and span(t^n e1, t^{-n-1} e2) in F^2. */
LatticeBasis standard_lambda(long n);
LatticeBasis standard_lambda_prime(long n);

/* Homothety class of a diagonal lattice span(t^{e_i} e_i), stored with the
 * minimum exponent shifted to 0. */
class DiagonalClass {
 public:
  explicit DiagonalClass(std::vector<long> exps);
  const std::vector<long>& exponents() const { return e_; }
  std::size_t dim() const { return e_.size(); }
  LatticeBasis basis() const;
  bool operator==(const DiagonalClass& o) const { return e_ == o.e_; }
  auto operator<=>(const DiagonalClass& o) const { return e_ <=> o.e_; }

 private:
  std::vector<long> e_;
};

/* Exponent-vector distance max(a-b) - min(a-b). */
long diagonal_distance(const DiagonalClass& a, const DiagonalClass& b);

/* Canonical key of a homothety class: lower-triangular column Hermite form
 * over O_v with diagonal t^{a_i} (min a_i = 0) and each entry below the
 * diagonal in row i reduced to a Laurent polynomial with degrees < a_i. */
class LatticeClass {
 public:
  static LatticeClass of(const LatticeBasis& a);
  std::size_t dim() const { return pivots_.size(); }
  const std::vector<long>& pivot_exponents() const { return pivots_; }
  /* Row-major entries strictly below the diagonal. */
  const std::vector<ff::RatFunc>& lower_entries() const { return lower_; }
  bool operator==(const LatticeClass& o) const { return pivots_ == o.pivots_ && lower_ == o.lower_; }
  std::string str() const;

 private:
  std::vector<long> pivots_;
  std::vector<ff::RatFunc> lower_;
};

std::string format_exponents(const std::vector<long>& e);

}  // namespace btsurf::bt

#endif  // BTSURF_BUILDING_HPP_
