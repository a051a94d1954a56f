#include "btsurf/building.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "btsurf/error.hpp"

namespace btsurf::bt {

using ff::RatFunc;

LatticeBasis::LatticeBasis(Matrix m) : m_(std::move(m)) {
  if (!m_.square() || m_.rows() == 0) throw InputError("lattice basis must be a nonempty square matrix");
  if (m_.determinant().is_zero()) throw InputError("lattice basis is singular");
}

namespace {

void require_same_dim(const LatticeBasis& a, const LatticeBasis& b) {
  if (a.dim() != b.dim()) {
    std::ostringstream os;
    os << "lattice dimension mismatch: " << a.dim() << " vs " << b.dim();
    throw InputError(os.str());
  }
}

/* Diagonal valuations of the Smith form of m over O_v. */
std::vector<long> smith_valuations(Matrix m) {
  const std::size_t n = m.rows();
  std::vector<long> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pr = n, pc = n;
    ff::Valuation best = ff::Valuation::infinite();
    for (std::size_t r = k; r < n; ++r)
      for (std::size_t c = k; c < n; ++c) {
        const ff::Valuation v = m(r, c).valuation();
        if (v < best) {
          best = v;
          pr = r;
          pc = c;
        }
      }
    if (pr == n) throw InputError("singular matrix in Smith form");
    m.swap_rows(k, pr);
    m.swap_columns(k, pc);
    out.push_back(best.value());
    const RatFunc inv = m(k, k).inverse();
    for (std::size_t r = k + 1; r < n; ++r) {
      if (m(r, k).is_zero()) continue;
      const RatFunc f = m(r, k) * inv;
      for (std::size_t c = k + 1; c < n; ++c)
        if (!m(k, c).is_zero()) m(r, c) -= f * m(k, c);
      m(r, k) = RatFunc();
    }
    // Column elimination only touches row k, which is not read again.
  }
  return out;
}

}  // namespace

std::vector<long> invariant_factor_exponents(const LatticeBasis& a, const LatticeBasis& b) {
  require_same_dim(a, b);
  std::vector<long> e = smith_valuations(a.matrix().inverse() * b.matrix());
  std::sort(e.begin(), e.end());
  return e;
}

bool homothetic(const LatticeBasis& a, const LatticeBasis& b) {
  const auto e = invariant_factor_exponents(a, b);
  return e.front() == e.back();
}

bool adjacent(const LatticeBasis& a, const LatticeBasis& b) {
  const auto e = invariant_factor_exponents(a, b);
  return e.back() - e.front() == 1;
}

long graph_distance(const LatticeBasis& a, const LatticeBasis& b) {
  const auto e = invariant_factor_exponents(a, b);
  return e.back() - e.front();
}

long vertex_type(const LatticeBasis& a) {
  const long n = static_cast<long>(a.dim());
  const long v = a.matrix().determinant().valuation().value();
  return ((v % n) + n) % n;
}

LatticeBasis act(const Matrix& g, const LatticeBasis& a) {
  if (!g.square() || g.rows() != a.dim()) throw InputError("act: dimension mismatch");
  if (g.determinant().is_zero()) throw InputError("act: singular matrix");
  return LatticeBasis(g * a.matrix());
}

bool contains(const LatticeBasis& outer, const LatticeBasis& inner) {
  require_same_dim(outer, inner);
  const Matrix coords = outer.matrix().inverse() * inner.matrix();
  for (std::size_t r = 0; r < coords.rows(); ++r)
    for (std::size_t c = 0; c < coords.cols(); ++c)
      if (coords(r, c).valuation() < ff::Valuation(0)) return false;
  return true;
}

namespace {

bool strictly_contains(const LatticeBasis& outer, const LatticeBasis& inner) {
  if (!contains(outer, inner)) return false;
  const RatFunc d = (outer.matrix().inverse() * inner.matrix()).determinant();
  return d.valuation() > ff::Valuation(0);
}

}  // namespace

std::optional<Flag> flag_witness(const LatticeBasis& a, const LatticeBasis& b) {
  const auto e = invariant_factor_exponents(a, b);
  if (e.back() - e.front() != 1) return std::nullopt;
  // b scaled by t^{-min} lies between t*a and a.
  Flag f{b.scaled(RatFunc::t_pow(-e.front())), a, false};
  const LatticeBasis t_outer = f.outer.scaled(RatFunc::t_pow(1));
  if (!strictly_contains(f.outer, f.inner) || !strictly_contains(f.inner, t_outer))
    throw Error("flag_witness: constructed flag failed membership check");
  return f;
}

LatticeBasis standard_lambda(long n) {
  return LatticeBasis(Matrix::diagonal({RatFunc::t_pow(n), RatFunc::t_pow(-n)}));
}

LatticeBasis standard_lambda_prime(long n) {
  return LatticeBasis(Matrix::diagonal({RatFunc::t_pow(n), RatFunc::t_pow(-n - 1)}));
}

DiagonalClass::DiagonalClass(std::vector<long> exps) : e_(std::move(exps)) {
  if (e_.empty()) throw InputError("empty diagonal class");
  const long m = *std::min_element(e_.begin(), e_.end());
  for (auto& x : e_) x -= m;
}

LatticeBasis DiagonalClass::basis() const {
  std::vector<RatFunc> d;
  d.reserve(e_.size());
  for (long x : e_) d.push_back(RatFunc::t_pow(x));
  return LatticeBasis(Matrix::diagonal(d));
}

long diagonal_distance(const DiagonalClass& a, const DiagonalClass& b) {
  if (a.dim() != b.dim()) throw InputError("diagonal class dimension mismatch");
  long lo = a.exponents()[0] - b.exponents()[0], hi = lo;
  for (std::size_t i = 1; i < a.dim(); ++i) {
    const long d = a.exponents()[i] - b.exponents()[i];
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  return hi - lo;
}

LatticeClass LatticeClass::of(const LatticeBasis& basis) {
  Matrix m = basis.matrix();
  const std::size_t n = m.rows();
  std::vector<long> piv(n);
  for (std::size_t r = 0; r < n; ++r) {
    std::size_t best_c = n;
    ff::Valuation best = ff::Valuation::infinite();
    for (std::size_t c = r; c < n; ++c) {
      const ff::Valuation v = m(r, c).valuation();
      if (v < best) {
        best = v;
        best_c = c;
      }
    }
    if (best_c == n) throw Error("LatticeClass: singular basis");
    m.swap_columns(r, best_c);
    piv[r] = best.value();
    // Make the pivot exactly t^{a_r} by a unit column scaling.
    const RatFunc unit_inv = RatFunc::t_pow(piv[r]) / m(r, r);
    for (std::size_t i = r; i < n; ++i)
      if (!m(i, r).is_zero()) m(i, r) *= unit_inv;
    const RatFunc pinv = RatFunc::t_pow(-piv[r]);
    for (std::size_t c = r + 1; c < n; ++c) {
      if (m(r, c).is_zero()) continue;
      const RatFunc f = m(r, c) * pinv;
      for (std::size_t i = r; i < n; ++i)
        if (!m(i, r).is_zero()) m(i, c) -= f * m(i, r);
    }
  }
  const long lo = *std::min_element(piv.begin(), piv.end());
  const RatFunc scale = RatFunc::t_pow(-lo);
  for (std::size_t i = 0; i < n; ++i) {
    piv[i] -= lo;
    for (std::size_t j = 0; j <= i; ++j) m(i, j) *= scale;
  }
  // Reduce entries below the diagonal, row by row, modulo t^{a_i} O_v.
  for (std::size_t i = 1; i < n; ++i) {
    const RatFunc pinv = RatFunc::t_pow(-piv[i]);
    for (std::size_t j = 0; j < i; ++j) {
      const RatFunc& x = m(i, j);
      if (x.is_zero()) continue;
      const RatFunc q = (x - ff::truncate_below(x, piv[i])) * pinv;
      if (q.is_zero()) continue;
      for (std::size_t k = i; k < n; ++k)
        if (!m(k, i).is_zero()) m(k, j) -= q * m(k, i);
    }
  }
  LatticeClass out;
  out.pivots_ = std::move(piv);
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) out.lower_.push_back(m(i, j));
  return out;
}

std::string LatticeClass::str() const {
  std::ostringstream os;
  os << "pivots " << format_exponents(pivots_) << " lower [";
  for (std::size_t i = 0; i < lower_.size(); ++i) os << (i ? ", " : "") << lower_[i];
  os << ']';
  return os.str();
}

std::string format_exponents(const std::vector<long>& e) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < e.size(); ++i) os << (i ? "," : "") << e[i];
  os << ')';
  return os.str();
}

}  // namespace btsurf::bt
