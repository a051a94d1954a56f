#ifndef BTSURF_GROUP_HPP_
#define BTSURF_GROUP_HPP_

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "btsurf/matrix.hpp"

namespace btsurf::grp {

/* Freely reduced word; letter +(g+1) is generator g, -(g+1) its inverse. */
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<int> letters);
  static Word generator(int g) { return Word({g + 1}); }

  const std::vector<int>& letters() const { return w_; }
  bool empty() const { return w_.empty(); }
  std::size_t length() const { return w_.size(); }

  Word inverse() const;
  Word pow(long k) const;
  friend Word operator*(const Word& a, const Word& b);
  Word& operator*=(const Word& b) { return *this = *this * b; }
  bool operator==(const Word& o) const { return w_ == o.w_; }
  auto operator<=>(const Word& o) const { return w_ <=> o.w_; }

  /* Space-separated tokens such as "a b^-1 a^2"; "1" or "" is the empty word. */
  std::string str(const std::vector<std::string>& names) const;

 private:
  std::vector<int> w_;
};

struct Presentation {
  std::vector<std::string> generators;
  std::vector<Word> relators;

  std::size_t rank() const { return generators.size(); }
  int generator_index(std::string_view name) const;  // -1 if absent
  Word parse_word(std::string_view text) const;
  std::string format(const Word& w) const { return w.str(generators); }

  /* "gens: a b" then "rel: a b a^-1 b^-1" lines. */
  static Presentation parse(std::string_view text);
  std::string serialize() const;
};

using Perm = std::vector<int>;  // 0-based images

Perm compose(const Perm& a, const Perm& b);  // a after b
Perm invert(const Perm& p);

/* Left action of a finitely presented group on {0..d-1}: the word
 * x_1 ... x_k acts as perm(x_1) o ... o perm(x_k). */
class PermRep {
 public:
  PermRep() = default;
  PermRep(std::size_t degree, std::vector<Perm> perms);
  /* "perm a: 2 1" lines (1-based images), one per generator of pres. */
  static PermRep parse(std::string_view text, const Presentation& pres);
  std::string serialize(const Presentation& pres) const;

  std::size_t degree() const { return degree_; }
  std::size_t rank() const { return perms_.size(); }
  const Perm& generator_perm(std::size_t g) const { return perms_[g]; }
  Perm action(const Word& w) const;
  int apply(const Word& w, int point) const;

  bool is_transitive() const;
  /* Throws CheckFailure naming the first relator that does not act trivially,
   * or a non-transitivity witness. */
  void validate(const Presentation& pres) const;

 private:
  std::size_t degree_ = 0;
  std::vector<Perm> perms_;
};

/* Number of orbits of the subgroup generated by `words` on {0..d-1}. */
std::size_t orbit_count(const PermRep& rep, const std::vector<Word>& words);

/* Breadth-first Schreier tree on cosets of the stabilizer H of point 0.
 * rep(i) maps coset 0 to coset i (rep(0) is empty). For coset c and
 * generator x with j = x.c, the Schreier generator is rep(j)^-1 x rep(c);
 * pairs on tree edges give the identity and are not numbered. */
class CosetStructure {
 public:
  static CosetStructure build(const Presentation& pres, const PermRep& rep);

  std::size_t degree() const { return reps_.size(); }
  const PermRep& perm_rep() const { return rep_; }
  const Word& rep(std::size_t i) const { return reps_[i]; }
  const std::vector<Word>& reps() const { return reps_; }

  struct SchreierGen {
    int coset;
    int generator;
    Word word;  // in the original generators
  };
  const std::vector<SchreierGen>& schreier_generators() const { return sgens_; }
  /* Index of the Schreier generator for (coset, generator), or -1 on a tree edge. */
  int schreier_index(int coset, int generator) const { return table_[static_cast<std::size_t>(coset) * rank_ + static_cast<std::size_t>(generator)]; }

  /* Reidemeister-Schreier rewriting of a word stabilizing coset 0 into a word
   * in the Schreier generators. Throws CheckFailure otherwise. */
  Word rewrite(const Word& w) const;
  /* Expands a word in Schreier generators back into the original generators. */
  Word expand(const Word& s) const;
  /* Rewritten conjugates rep(c)^-1 r rep(c) of every relator r. */
  std::vector<Word> subgroup_relators(const Presentation& pres) const;

 private:
  PermRep rep_;
  std::size_t rank_ = 0;
  std::vector<Word> reps_;
  std::vector<SchreierGen> sgens_;
  std::vector<int> table_;
};

/* A homomorphism H -> Z given by its values on the Schreier generators. */
struct PsiMap {
  std::vector<long> values;

  long eval_rewritten(const Word& s) const;
  /* Throws CheckFailure if w is not in H. */
  long eval(const CosetStructure& cs, const Word& w) const;
  bool surjective() const;  // gcd of values is 1
  /* Index of the first subgroup relator on which psi is nonzero, or -1. */
  long first_nonvanishing_relator(const CosetStructure& cs, const Presentation& pres) const;

  /* "psi v1" then "<coset> <generator> <value>" lines (1-based cosets). */
  static PsiMap parse(std::string_view text, const CosetStructure& cs, const Presentation& pres);
  std::string serialize(const CosetStructure& cs, const Presentation& pres) const;
};

/* Block-monomial element of SL_{2d}(Q(t)): diag(t^{e_i}, t^{-e_i}) in block
 * row sigma(i), block column i. */
struct MonomialRep {
  Perm sigma;
  std::vector<long> exps;

  static MonomialRep identity(std::size_t d);
  std::size_t degree() const { return sigma.size(); }
  friend MonomialRep operator*(const MonomialRep& a, const MonomialRep& b);
  MonomialRep inverse() const;
  bool operator==(const MonomialRep& o) const { return sigma == o.sigma && exps == o.exps; }
};

/* sigma = action of w; e_i = psi(rep(sigma(i))^-1 w rep(i)). */
MonomialRep induced_rep(const Word& w, const CosetStructure& cs, const PsiMap& psi);
Matrix monomial_to_matrix(const MonomialRep& m);

/* Laurent polynomial in z with integer coefficients. */
class LaurentPoly {
 public:
  LaurentPoly() = default;
  void add(long exponent, long coeff);
  const std::map<long, long>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /* Lowest exponent; only meaningful when nonzero. */
  long lowest() const { return terms_.begin()->first; }
  bool symmetric() const;  // invariant under z <-> 1/z
  /* Coefficients c_k with p(z) = sum c_k (z + 1/z)^k. Throws if not symmetric. */
  std::vector<long> in_w() const;
  bool operator==(const LaurentPoly& o) const { return terms_ == o.terms_; }
  std::string str() const;

 private:
  std::map<long, long> terms_;
};

LaurentPoly trace_poly(const MonomialRep& m);

/* Abelianization Z^rank + sum Z/torsion_i (torsion entries > 1). */
struct Abelianization {
  std::size_t rank = 0;
  std::vector<long> torsion;
  bool operator==(const Abelianization& o) const { return rank == o.rank && torsion == o.torsion; }
  std::string str() const;
};

Abelianization abelianize(const Presentation& pres);

}  // namespace btsurf::grp

#endif  // BTSURF_GROUP_HPP_
