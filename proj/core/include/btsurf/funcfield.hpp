#ifndef BTSURF_FUNCFIELD_HPP_
#define BTSURF_FUNCFIELD_HPP_

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace btsurf::ff {

using Rational = mpq_class;

/* Dense polynomial in t over Q, coefficients indexed by degree.
 * The zero polynomial has no coefficients; otherwise the leading one is
 * nonzero. */
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rational> coeffs);
  static Poly constant(const Rational& c);
  static Poly monomial(const Rational& c, std::size_t degree);

  bool is_zero() const { return c_.empty(); }
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  const Rational& operator[](std::size_t i) const { return c_[i]; }
  std::size_t size() const { return c_.size(); }
  const Rational& leading() const { return c_.back(); }
  /* Number of trailing zero coefficients, i.e. the power of t dividing p. */
  std::size_t low_order() const;

  Poly operator-() const;
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly scaled(const Rational& c) const;
  Poly shifted_down(std::size_t k) const;  // divide by t^k, exact
  Poly monic() const;

  /* Euclidean division: a = q*b + r with deg r < deg b. */
  static void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r);
  /* Monic gcd; gcd(0,0) = 0. */
  static Poly gcd(Poly a, Poly b);

  bool operator==(const Poly& o) const { return c_ == o.c_; }

 private:
  void trim();
  std::vector<Rational> c_;
};

/* +infinity or an integer. */
class Valuation {
 public:
  constexpr Valuation(long v) : inf_(false), v_(v) {}  // NOLINT
  static constexpr Valuation infinite() { return Valuation(); }
  constexpr bool is_infinite() const { return inf_; }
  long value() const;
  friend std::strong_ordering operator<=>(const Valuation& a, const Valuation& b);
  friend bool operator==(const Valuation& a, const Valuation& b) {
    return (a <=> b) == std::strong_ordering::equal;
  }
  friend Valuation operator+(const Valuation& a, const Valuation& b);

 private:
  constexpr Valuation() : inf_(true), v_(0) {}
  bool inf_;
  long v_;
};

std::ostream& operator<<(std::ostream& os, const Valuation& v);

/* Element of Q(t) in the canonical form t^shift * num / den with num and den
 * coprime, both with nonzero constant term, den monic. Zero is a flag. */
class RatFunc {
 public:
  RatFunc();  // zero
  RatFunc(long c);  // NOLINT
  RatFunc(const Rational& c);  // NOLINT
  static RatFunc t_pow(long k);
  static RatFunc from_parts(long shift, Poly num, Poly den);
  /* Laurent polynomial sum_i coeffs[i] t^(low+i). */
  static RatFunc laurent(long low, const std::vector<Rational>& coeffs);
  static RatFunc parse(std::string_view text);

  bool is_zero() const { return zero_; }
  bool is_one() const;
  long shift() const { return shift_; }
  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_laurent_polynomial() const { return zero_ || den_.degree() == 0; }

  Valuation valuation() const;

  RatFunc operator-() const;
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  RatFunc& operator+=(const RatFunc& b) { return *this = *this + b; }
  RatFunc& operator-=(const RatFunc& b) { return *this = *this - b; }
  RatFunc& operator*=(const RatFunc& b) { return *this = *this * b; }
  RatFunc& operator/=(const RatFunc& b) { return *this = *this / b; }
  RatFunc inverse() const;
  RatFunc pow(long k) const;

  bool operator==(const RatFunc& o) const;

  std::string str() const;

 private:
  void canonicalize();
  bool zero_ = true;
  long shift_ = 0;
  Poly num_;
  Poly den_;
};

std::ostream& operator<<(std::ostream& os, const RatFunc& a);

enum class ArithOp { add, sub, mul, div };
RatFunc arith(const RatFunc& a, const RatFunc& b, ArithOp op);

/* Coefficients of t^start, ..., t^last of the Laurent expansion at t = 0,
 * where start = valuation(a). */
struct LaurentPrefix {
  long start = 0;
  std::vector<Rational> coeffs;
};

LaurentPrefix laurent_prefix(const RatFunc& a, long last);

/* The part of the Laurent expansion of a with degree < bound, as an element
 * of Q[t, 1/t]. a minus the result has valuation >= bound. */
RatFunc truncate_below(const RatFunc& a, long bound);

}  // namespace btsurf::ff

#endif  // BTSURF_FUNCFIELD_HPP_
