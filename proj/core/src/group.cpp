#include "btsurf/group.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <numeric>
#include <sstream>
#include <utility>

#include <gmpxx.h>

#include "btsurf/error.hpp"
#include "btsurf/text.hpp"

namespace btsurf::grp {

using ff::RatFunc;

// ---------------------------------------------------------------- Word

Word::Word(std::vector<int> letters) {
  w_.reserve(letters.size());
  for (int x : letters) {
    if (x == 0) throw InputError("word letter 0 is invalid");
    if (!w_.empty() && w_.back() == -x) w_.pop_back();
    else w_.push_back(x);
  }
}

Word Word::inverse() const {
  Word r;
  r.w_.assign(w_.rbegin(), w_.rend());
  for (int& x : r.w_) x = -x;
  return r;
}

Word Word::pow(long k) const {
  if (k < 0) return inverse().pow(-k);
  Word r;
  for (long i = 0; i < k; ++i) r *= *this;
  return r;
}

Word operator*(const Word& a, const Word& b) {
  Word r = a;
  for (int x : b.w_) {
    if (!r.w_.empty() && r.w_.back() == -x) r.w_.pop_back();
    else r.w_.push_back(x);
  }
  return r;
}

std::string Word::str(const std::vector<std::string>& names) const {
  if (w_.empty()) return "1";
  std::ostringstream os;
  std::size_t i = 0;
  bool first = true;
  while (i < w_.size()) {
    std::size_t j = i;
    while (j < w_.size() && w_[j] == w_[i]) ++j;
    const int g = std::abs(w_[i]) - 1;
    long e = static_cast<long>(j - i);
    if (w_[i] < 0) e = -e;
    if (!first) os << ' ';
    first = false;
    os << names.at(static_cast<std::size_t>(g));
    if (e != 1) os << '^' << e;
    i = j;
  }
  return os.str();
}

// -------------------------------------------------------- Presentation

int Presentation::generator_index(std::string_view name) const {
  for (std::size_t i = 0; i < generators.size(); ++i)
    if (generators[i] == name) return static_cast<int>(i);
  return -1;
}

Word Presentation::parse_word(std::string_view text) const {
  std::vector<int> letters;
  for (const std::string& tok : text::split_ws(text)) {
    if (tok == "1") continue;
    std::string name = tok;
    long e = 1;
    const auto caret = tok.find('^');
    if (caret != std::string::npos) {
      name = tok.substr(0, caret);
      e = text::parse_long(tok.substr(caret + 1), "word exponent");
    }
    const int g = generator_index(name);
    if (g < 0) throw InputError("unknown generator '" + name + "' in word '" + std::string(text) + "'");
    const int letter = e < 0 ? -(g + 1) : g + 1;
    for (long k = 0; k < std::labs(e); ++k) letters.push_back(letter);
  }
  return Word(std::move(letters));
}

Presentation Presentation::parse(std::string_view body) {
  Presentation p;
  bool have_gens = false;
  for (const text::Line& line : text::lines(body)) {
    const auto colon = line.text.find(':');
    if (colon == std::string::npos) line.fail("expected 'gens:' or 'rel:'");
    const std::string key = text::trim(line.text.substr(0, colon));
    const std::string rest = line.text.substr(colon + 1);
    if (key == "gens") {
      if (have_gens) line.fail("duplicate 'gens:' line");
      have_gens = true;
      p.generators = text::split_ws(rest);
      for (std::size_t i = 0; i < p.generators.size(); ++i) {
        const std::string& g = p.generators[i];
        if (g.find('^') != std::string::npos || g == "1") line.fail("invalid generator name '" + g + "'");
        for (std::size_t j = 0; j < i; ++j)
          if (p.generators[j] == g) line.fail("duplicate generator '" + g + "'");
      }
    } else if (key == "rel") {
      if (!have_gens) line.fail("'rel:' before 'gens:'");
      try {
        p.relators.push_back(p.parse_word(rest));
      } catch (const InputError& e) {
        line.fail(e.what());
      }
    } else {
      line.fail("unknown key '" + key + "'");
    }
  }
  if (!have_gens) throw InputError("presentation: missing 'gens:' line");
  return p;
}

std::string Presentation::serialize() const {
  std::ostringstream os;
  os << "gens:";
  for (const auto& g : generators) os << ' ' << g;
  os << '\n';
  for (const auto& r : relators) os << "rel: " << format(r) << '\n';
  return os.str();
}

// ------------------------------------------------------------- PermRep

Perm compose(const Perm& a, const Perm& b) {
  Perm r(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = a[static_cast<std::size_t>(b[i])];
  return r;
}

Perm invert(const Perm& p) {
  Perm r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
  return r;
}

PermRep::PermRep(std::size_t degree, std::vector<Perm> perms) : degree_(degree), perms_(std::move(perms)) {
  if (degree_ == 0) throw InputError("permutation degree must be positive");
  for (const Perm& p : perms_) {
    if (p.size() != degree_) throw InputError("permutation has wrong degree");
    std::vector<bool> seen(degree_, false);
    for (int x : p) {
      if (x < 0 || static_cast<std::size_t>(x) >= degree_ || seen[static_cast<std::size_t>(x)])
        throw InputError("not a permutation");
      seen[static_cast<std::size_t>(x)] = true;
    }
  }
}

PermRep PermRep::parse(std::string_view body, const Presentation& pres) {
  std::vector<Perm> perms(pres.rank());
  std::vector<bool> have(pres.rank(), false);
  std::size_t degree = 0;
  for (const text::Line& line : text::lines(body)) {
    const auto colon = line.text.find(':');
    if (colon == std::string::npos) line.fail("expected 'perm <gen>: <images>'");
    const auto head = text::split_ws(line.text.substr(0, colon));
    if (head.size() != 2 || head[0] != "perm") line.fail("expected 'perm <gen>:'");
    const int g = pres.generator_index(head[1]);
    if (g < 0) line.fail("unknown generator '" + head[1] + "'");
    if (have[static_cast<std::size_t>(g)]) line.fail("duplicate permutation for '" + head[1] + "'");
    have[static_cast<std::size_t>(g)] = true;
    Perm p;
    for (const auto& tok : text::split_ws(line.text.substr(colon + 1))) {
      long v = 0;
      try {
        v = text::parse_long(tok, "permutation image");
      } catch (const InputError& e) {
        line.fail(e.what());
      }
      p.push_back(static_cast<int>(v - 1));
    }
    if (degree == 0) degree = p.size();
    if (p.size() != degree || degree == 0) line.fail("permutation degree mismatch");
    perms[static_cast<std::size_t>(g)] = std::move(p);
  }
  for (std::size_t g = 0; g < pres.rank(); ++g)
    if (!have[g]) throw InputError("permutation missing for generator '" + pres.generators[g] + "'");
  if (pres.rank() == 0) degree = 1;
  return PermRep(degree, std::move(perms));
}

std::string PermRep::serialize(const Presentation& pres) const {
  std::ostringstream os;
  for (std::size_t g = 0; g < perms_.size(); ++g) {
    os << "perm " << pres.generators[g] << ':';
    for (int x : perms_[g]) os << ' ' << x + 1;
    os << '\n';
  }
  return os.str();
}

int PermRep::apply(const Word& w, int point) const {
  const auto& l = w.letters();
  for (auto it = l.rbegin(); it != l.rend(); ++it) {
    const std::size_t g = static_cast<std::size_t>(std::abs(*it) - 1);
    if (g >= perms_.size()) throw InputError("word uses a generator outside the permutation representation");
    if (*it > 0) {
      point = perms_[g][static_cast<std::size_t>(point)];
    } else {
      const Perm& p = perms_[g];
      point = static_cast<int>(std::find(p.begin(), p.end(), point) - p.begin());
    }
  }
  return point;
}

Perm PermRep::action(const Word& w) const {
  Perm r(degree_);
  for (std::size_t i = 0; i < degree_; ++i) r[i] = apply(w, static_cast<int>(i));
  return r;
}

bool PermRep::is_transitive() const {
  std::vector<bool> seen(degree_, false);
  std::deque<int> q{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!q.empty()) {
    const int c = q.front();
    q.pop_front();
    for (const Perm& p : perms_) {
      const int n = p[static_cast<std::size_t>(c)];
      if (!seen[static_cast<std::size_t>(n)]) {
        seen[static_cast<std::size_t>(n)] = true;
        ++count;
        q.push_back(n);
      }
    }
  }
  return count == degree_;
}

void PermRep::validate(const Presentation& pres) const {
  if (pres.rank() != perms_.size()) throw InputError("permutation representation rank differs from presentation");
  Perm id(degree_);
  std::iota(id.begin(), id.end(), 0);
  for (std::size_t r = 0; r < pres.relators.size(); ++r) {
    if (action(pres.relators[r]) != id) {
      throw CheckFailure("relator_not_killed", "relator " + std::to_string(r) + ": " + pres.format(pres.relators[r]),
                         "permutation representation does not kill relator " + pres.format(pres.relators[r]));
    }
  }
  if (!is_transitive()) throw CheckFailure("not_transitive", "orbit of point 1", "permutation action is not transitive");
}

std::size_t orbit_count(const PermRep& rep, const std::vector<Word>& words) {
  const std::size_t d = rep.degree();
  std::vector<int> parent(d);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  };
  std::size_t comps = d;
  for (const Word& w : words) {
    const Perm p = rep.action(w);
    for (std::size_t i = 0; i < d; ++i) {
      const int a = find(static_cast<int>(i)), b = find(p[i]);
      if (a != b) {
        parent[static_cast<std::size_t>(a)] = b;
        --comps;
      }
    }
  }
  return comps;
}

// ----------------------------------------------------- CosetStructure

CosetStructure CosetStructure::build(const Presentation& pres, const PermRep& rep) {
  rep.validate(pres);
  CosetStructure cs;
  cs.rep_ = rep;
  cs.rank_ = pres.rank();
  const std::size_t d = rep.degree();
  cs.reps_.assign(d, Word());
  std::vector<bool> seen(d, false);
  // tree_gen[j] = generator whose edge discovered coset j.
  std::vector<int> tree_from(d, -1), tree_gen(d, -1);
  std::deque<int> q{0};
  seen[0] = true;
  while (!q.empty()) {
    const int c = q.front();
    q.pop_front();
    for (std::size_t g = 0; g < cs.rank_; ++g) {
      const int j = rep.generator_perm(g)[static_cast<std::size_t>(c)];
      if (seen[static_cast<std::size_t>(j)]) continue;
      seen[static_cast<std::size_t>(j)] = true;
      tree_from[static_cast<std::size_t>(j)] = c;
      tree_gen[static_cast<std::size_t>(j)] = static_cast<int>(g);
      cs.reps_[static_cast<std::size_t>(j)] = Word::generator(static_cast<int>(g)) * cs.reps_[static_cast<std::size_t>(c)];
      q.push_back(j);
    }
  }
  cs.table_.assign(d * cs.rank_, -1);
  for (std::size_t c = 0; c < d; ++c)
    for (std::size_t g = 0; g < cs.rank_; ++g) {
      const int j = rep.generator_perm(g)[c];
      if (tree_from[static_cast<std::size_t>(j)] == static_cast<int>(c) && tree_gen[static_cast<std::size_t>(j)] == static_cast<int>(g))
        continue;
      cs.table_[c * cs.rank_ + g] = static_cast<int>(cs.sgens_.size());
      Word w = cs.reps_[static_cast<std::size_t>(j)].inverse() * Word::generator(static_cast<int>(g)) * cs.reps_[c];
      cs.sgens_.push_back({static_cast<int>(c), static_cast<int>(g), std::move(w)});
    }
  return cs;
}

Word CosetStructure::rewrite(const Word& w) const {
  std::vector<int> out;
  int cur = 0;
  const auto& l = w.letters();
  for (auto it = l.rbegin(); it != l.rend(); ++it) {
    const int g = std::abs(*it) - 1;
    if (static_cast<std::size_t>(g) >= rank_) throw InputError("rewrite: generator out of range");
    const Perm& p = rep_.generator_perm(static_cast<std::size_t>(g));
    if (*it > 0) {
      const int s = schreier_index(cur, g);
      if (s >= 0) out.push_back(s + 1);
      cur = p[static_cast<std::size_t>(cur)];
    } else {
      const int j = static_cast<int>(std::find(p.begin(), p.end(), cur) - p.begin());
      const int s = schreier_index(j, g);
      if (s >= 0) out.push_back(-(s + 1));
      cur = j;
    }
  }
  if (cur != 0) {
    throw CheckFailure("not_in_subgroup", "coset " + std::to_string(cur + 1),
                       "word does not stabilize the base coset (ends at coset " + std::to_string(cur + 1) + ")");
  }
  std::reverse(out.begin(), out.end());
  return Word(std::move(out));
}

Word CosetStructure::expand(const Word& s) const {
  Word r;
  for (int x : s.letters()) {
    const Word& g = sgens_.at(static_cast<std::size_t>(std::abs(x) - 1)).word;
    r *= x > 0 ? g : g.inverse();
  }
  return r;
}

std::vector<Word> CosetStructure::subgroup_relators(const Presentation& pres) const {
  std::vector<Word> out;
  for (const Word& r : pres.relators)
    for (const Word& g : reps_) out.push_back(rewrite(g.inverse() * r * g));
  return out;
}

// -------------------------------------------------------------- PsiMap

long PsiMap::eval_rewritten(const Word& s) const {
  long sum = 0;
  for (int x : s.letters()) {
    const long v = values.at(static_cast<std::size_t>(std::abs(x) - 1));
    sum += x > 0 ? v : -v;
  }
  return sum;
}

long PsiMap::eval(const CosetStructure& cs, const Word& w) const { return eval_rewritten(cs.rewrite(w)); }

bool PsiMap::surjective() const {
  long g = 0;
  for (long v : values) g = std::gcd(g, v);
  return g == 1;
}

long PsiMap::first_nonvanishing_relator(const CosetStructure& cs, const Presentation& pres) const {
  const auto rels = cs.subgroup_relators(pres);
  for (std::size_t i = 0; i < rels.size(); ++i)
    if (eval_rewritten(rels[i]) != 0) return static_cast<long>(i);
  return -1;
}

PsiMap PsiMap::parse(std::string_view body, const CosetStructure& cs, const Presentation& pres) {
  const auto& sg = cs.schreier_generators();
  PsiMap psi;
  psi.values.assign(sg.size(), 0);
  std::vector<bool> have(sg.size(), false);
  bool header = false;
  for (const text::Line& line : text::lines(body)) {
    const auto tok = text::split_ws(line.text);
    if (!header) {
      if (tok.size() != 2 || tok[0] != "psi" || tok[1] != "v1") line.fail("expected header 'psi v1'");
      header = true;
      continue;
    }
    if (tok.size() != 3) line.fail("expected '<coset> <generator> <value>'");
    long coset = 0, value = 0;
    try {
      coset = text::parse_long(tok[0], "coset");
      value = text::parse_long(tok[2], "psi value");
    } catch (const InputError& e) {
      line.fail(e.what());
    }
    const int g = pres.generator_index(tok[1]);
    if (g < 0) line.fail("unknown generator '" + tok[1] + "'");
    if (coset < 1 || static_cast<std::size_t>(coset) > cs.degree()) line.fail("coset out of range");
    const int idx = cs.schreier_index(static_cast<int>(coset - 1), g);
    if (idx < 0) line.fail("(coset, generator) is a Schreier tree edge, not a Schreier generator");
    if (have[static_cast<std::size_t>(idx)]) line.fail("duplicate Schreier generator");
    have[static_cast<std::size_t>(idx)] = true;
    psi.values[static_cast<std::size_t>(idx)] = value;
  }
  if (!header) throw InputError("psi file: missing header 'psi v1'");
  for (std::size_t i = 0; i < have.size(); ++i)
    if (!have[i])
      throw InputError("psi file: no value for Schreier generator (coset " + std::to_string(sg[i].coset + 1) + ", " +
                       pres.generators[static_cast<std::size_t>(sg[i].generator)] + ")");
  return psi;
}

std::string PsiMap::serialize(const CosetStructure& cs, const Presentation& pres) const {
  std::ostringstream os;
  os << "psi v1\n";
  const auto& sg = cs.schreier_generators();
  for (std::size_t i = 0; i < sg.size(); ++i)
    os << sg[i].coset + 1 << ' ' << pres.generators[static_cast<std::size_t>(sg[i].generator)] << ' ' << values[i] << '\n';
  return os.str();
}

// --------------------------------------------------------- MonomialRep

MonomialRep MonomialRep::identity(std::size_t d) {
  MonomialRep m;
  m.sigma.resize(d);
  std::iota(m.sigma.begin(), m.sigma.end(), 0);
  m.exps.assign(d, 0);
  return m;
}

MonomialRep operator*(const MonomialRep& a, const MonomialRep& b) {
  if (a.degree() != b.degree()) throw InputError("monomial product: degree mismatch");
  MonomialRep r;
  r.sigma = compose(a.sigma, b.sigma);
  r.exps.resize(b.degree());
  for (std::size_t i = 0; i < b.degree(); ++i) r.exps[i] = b.exps[i] + a.exps[static_cast<std::size_t>(b.sigma[i])];
  return r;
}

MonomialRep MonomialRep::inverse() const {
  MonomialRep r;
  r.sigma = invert(sigma);
  r.exps.resize(degree());
  for (std::size_t i = 0; i < degree(); ++i) r.exps[static_cast<std::size_t>(sigma[i])] = -exps[i];
  return r;
}

MonomialRep induced_rep(const Word& w, const CosetStructure& cs, const PsiMap& psi) {
  MonomialRep m;
  m.sigma = cs.perm_rep().action(w);
  m.exps.resize(cs.degree());
  for (std::size_t i = 0; i < cs.degree(); ++i) {
    const Word delta = cs.rep(static_cast<std::size_t>(m.sigma[i])).inverse() * w * cs.rep(i);
    m.exps[i] = psi.eval(cs, delta);
  }
  return m;
}

Matrix monomial_to_matrix(const MonomialRep& m) {
  const std::size_t d = m.degree();
  Matrix out(2 * d, 2 * d);
  for (std::size_t i = 0; i < d; ++i) {
    const std::size_t r = 2 * static_cast<std::size_t>(m.sigma[i]);
    out(r, 2 * i) = RatFunc::t_pow(m.exps[i]);
    out(r + 1, 2 * i + 1) = RatFunc::t_pow(-m.exps[i]);
  }
  return out;
}

// --------------------------------------------------------- LaurentPoly

void LaurentPoly::add(long exponent, long coeff) {
  if (coeff == 0) return;
  const long v = (terms_[exponent] += coeff);
  if (v == 0) terms_.erase(exponent);
}

bool LaurentPoly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0); }

bool LaurentPoly::symmetric() const {
  for (const auto& [e, c] : terms_) {
    auto it = terms_.find(-e);
    if (it == terms_.end() || it->second != c) return false;
  }
  return true;
}

std::vector<long> LaurentPoly::in_w() const {
  if (!symmetric()) throw Error("Laurent polynomial is not symmetric under z <-> 1/z");
  LaurentPoly rest = *this;
  const long top = rest.is_zero() ? 0 : rest.terms_.rbegin()->first;
  std::vector<long> out(static_cast<std::size_t>(top) + 1, 0);
  while (!rest.is_zero()) {
    const long k = rest.terms_.rbegin()->first;
    const long c = rest.terms_.rbegin()->second;
    out[static_cast<std::size_t>(k)] = c;
    // subtract c (z + 1/z)^k = c sum_j binom(k, j) z^{k-2j}
    mpz_class b = 1;
    for (long j = 0; j <= k; ++j) {
      rest.add(k - 2 * j, -c * b.get_si());
      b = b * (k - j) / (j + 1);
    }
  }
  return out;
}

std::string LaurentPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << '-';
    first = false;
    const long a = std::labs(c);
    if (e == 0) {
      os << a;
      continue;
    }
    if (a != 1) os << a << '*';
    os << 'z';
    if (e != 1) os << '^' << e;
  }
  return os.str();
}

LaurentPoly trace_poly(const MonomialRep& m) {
  LaurentPoly p;
  for (std::size_t i = 0; i < m.degree(); ++i) {
    if (m.sigma[i] != static_cast<int>(i)) continue;
    p.add(m.exps[i], 1);
    p.add(-m.exps[i], 1);
  }
  return p;
}

// ------------------------------------------------------- Abelianization

std::string Abelianization::str() const {
  std::ostringstream os;
  bool first = true;
  if (rank > 0) {
    os << "Z";
    if (rank > 1) os << '^' << rank;
    first = false;
  }
  for (long t : torsion) {
    if (!first) os << " + ";
    first = false;
    os << "Z/" << t;
  }
  if (first) os << '0';
  return os.str();
}

Abelianization abelianize(const Presentation& pres) {
  const std::size_t rows = pres.relators.size(), cols = pres.rank();
  std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols, 0));
  for (std::size_t r = 0; r < rows; ++r)
    for (int x : pres.relators[r].letters()) a[r][static_cast<std::size_t>(std::abs(x) - 1)] += x > 0 ? 1 : -1;
  std::vector<mpz_class> diag;
  std::size_t k = 0;
  while (k < rows && k < cols) {
    // Pivot: nonzero entry of least absolute value in the remaining block.
    std::size_t pr = rows, pc = cols;
    for (std::size_t r = k; r < rows; ++r)
      for (std::size_t c = k; c < cols; ++c)
        if (a[r][c] != 0 && (pr == rows || abs(a[r][c]) < abs(a[pr][pc]))) {
          pr = r;
          pc = c;
        }
    if (pr == rows) break;
    std::swap(a[k], a[pr]);
    for (auto& row : a) std::swap(row[k], row[pc]);
    bool clean = true;
    for (std::size_t r = k + 1; r < rows; ++r) {
      const mpz_class q = a[r][k] / a[k][k];
      if (q != 0)
        for (std::size_t c = k; c < cols; ++c) a[r][c] -= q * a[k][c];
      if (a[r][k] != 0) clean = false;
    }
    for (std::size_t c = k + 1; c < cols; ++c) {
      const mpz_class q = a[k][c] / a[k][k];
      if (q != 0)
        for (std::size_t r = k; r < rows; ++r) a[r][c] -= q * a[r][k];
      if (a[k][c] != 0) clean = false;
    }
    if (!clean) continue;  // a smaller remainder now exists; re-pivot
    diag.push_back(abs(a[k][k]));
    ++k;
  }
  // Normalize to a divisibility chain.
  for (std::size_t i = 0; i < diag.size(); ++i)
    for (std::size_t j = i + 1; j < diag.size(); ++j) {
      mpz_class g, l;
      mpz_gcd(g.get_mpz_t(), diag[i].get_mpz_t(), diag[j].get_mpz_t());
      mpz_lcm(l.get_mpz_t(), diag[i].get_mpz_t(), diag[j].get_mpz_t());
      diag[i] = g;
      diag[j] = l;
    }
  Abelianization ab;
  ab.rank = cols - diag.size();
  for (const auto& v : diag)
    if (v > 1) ab.torsion.push_back(v.get_si());
  return ab;
}

}  // namespace btsurf::grp
