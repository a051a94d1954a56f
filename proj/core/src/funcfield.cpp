#include "btsurf/funcfield.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <sstream>
#include <utility>

#include "btsurf/error.hpp"

namespace btsurf::ff {

// ---------------------------------------------------------------- Poly

Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::constant(const Rational& c) { return Poly(std::vector<Rational>{c}); }

Poly Poly::monomial(const Rational& c, std::size_t degree) {
  std::vector<Rational> v(degree + 1);
  v[degree] = c;
  return Poly(std::move(v));
}

void Poly::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

std::size_t Poly::low_order() const {
  std::size_t k = 0;
  while (k < c_.size() && sgn(c_[k]) == 0) ++k;
  return k;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<Rational> v(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) v[i] = a.c_[i];
  for (std::size_t i = 0; i < b.size(); ++i) v[i] += b.c_[i];
  return Poly(std::move(v));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<Rational> v(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a.c_[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  }
  return Poly(std::move(v));
}

Poly Poly::scaled(const Rational& c) const {
  if (sgn(c) == 0) return Poly();
  Poly r = *this;
  for (auto& x : r.c_) x *= c;
  return r;
}

Poly Poly::shifted_down(std::size_t k) const {
  if (k == 0) return *this;
  if (k >= c_.size()) return Poly();
  return Poly(std::vector<Rational>(c_.begin() + static_cast<long>(k), c_.end()));
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  Rational inv = 1 / leading();
  return scaled(inv);
}

void Poly::divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
  if (b.is_zero()) throw DivisionByZero();
  if (a.degree() < b.degree()) {
    q = Poly();
    r = a;
    return;
  }
  std::vector<Rational> rem = a.c_;
  std::vector<Rational> quo(a.size() - b.size() + 1);
  const Rational lead_inv = 1 / b.leading();
  for (long i = static_cast<long>(quo.size()) - 1; i >= 0; --i) {
    const Rational f = rem[static_cast<std::size_t>(i) + b.size() - 1] * lead_inv;
    quo[static_cast<std::size_t>(i)] = f;
    if (sgn(f) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) rem[static_cast<std::size_t>(i) + j] -= f * b.c_[j];
  }
  q = Poly(std::move(quo));
  r = Poly(std::move(rem));
}

Poly Poly::gcd(Poly a, Poly b) {
  a = a.monic();
  b = b.monic();
  while (!b.is_zero()) {
    Poly q, r;
    divmod(a, b, q, r);
    a = std::move(b);
    b = r.monic();
  }
  return a;
}

// ----------------------------------------------------------- Valuation

long Valuation::value() const {
  if (inf_) throw Error("valuation of zero is infinite");
  return v_;
}

std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
  if (a.inf_ || b.inf_) return a.inf_ <=> b.inf_;
  return a.v_ <=> b.v_;
}

Valuation operator+(const Valuation& a, const Valuation& b) {
  if (a.inf_ || b.inf_) return Valuation::infinite();
  return Valuation(a.v_ + b.v_);
}

std::ostream& operator<<(std::ostream& os, const Valuation& v) {
  if (v.is_infinite()) return os << "+inf";
  return os << v.value();
}

// ------------------------------------------------------------- RatFunc

RatFunc::RatFunc() = default;

RatFunc::RatFunc(long c) : RatFunc(Rational(c)) {}

RatFunc::RatFunc(const Rational& c) {
  if (sgn(c) != 0) {
    zero_ = false;
    num_ = Poly::constant(c);
    den_ = Poly::constant(1);
  }
}

RatFunc RatFunc::t_pow(long k) {
  RatFunc r(1);
  r.shift_ = k;
  return r;
}

RatFunc RatFunc::from_parts(long shift, Poly num, Poly den) {
  if (den.is_zero()) throw DivisionByZero();
  RatFunc r;
  if (num.is_zero()) return r;
  r.zero_ = false;
  r.shift_ = shift;
  r.num_ = std::move(num);
  r.den_ = std::move(den);
  r.canonicalize();
  return r;
}

RatFunc RatFunc::laurent(long low, const std::vector<Rational>& coeffs) {
  return from_parts(low, Poly(coeffs), Poly::constant(1));
}

void RatFunc::canonicalize() {
  if (num_.is_zero()) {
    *this = RatFunc();
    return;
  }
  const std::size_t kn = num_.low_order();
  const std::size_t kd = den_.low_order();
  num_ = num_.shifted_down(kn);
  den_ = den_.shifted_down(kd);
  shift_ += static_cast<long>(kn) - static_cast<long>(kd);
  if (den_.degree() > 0 && num_.degree() > 0) {
    Poly g = Poly::gcd(num_, den_);
    if (g.degree() > 0) {
      Poly q, r;
      Poly::divmod(num_, g, q, r);
      num_ = std::move(q);
      Poly::divmod(den_, g, q, r);
      den_ = std::move(q);
    }
  }
  const Rational lead = den_.leading();
  if (lead != 1) {
    const Rational inv = 1 / lead;
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
}

bool RatFunc::is_one() const {
  return !zero_ && shift_ == 0 && den_.degree() == 0 && num_.degree() == 0 && num_[0] == 1;
}

Valuation RatFunc::valuation() const {
  if (zero_) return Valuation::infinite();
  return Valuation(shift_);
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

namespace {

Poly mul_t(const Poly& p, long k) {
  if (k <= 0 || p.is_zero()) return p;
  std::vector<Rational> v(static_cast<std::size_t>(k) + p.size());
  for (std::size_t i = 0; i < p.size(); ++i) v[i + static_cast<std::size_t>(k)] = p[i];
  return Poly(std::move(v));
}

}  // namespace

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.zero_) return b;
  if (b.zero_) return a;
  const long s = std::min(a.shift_, b.shift_);
  Poly an = mul_t(a.num_, a.shift_ - s);
  Poly bn = mul_t(b.num_, b.shift_ - s);
  if (a.den_ == b.den_) return RatFunc::from_parts(s, an + bn, a.den_);
  return RatFunc::from_parts(s, an * b.den_ + bn * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.zero_ || b.zero_) return RatFunc();
  if (a.den_.degree() == 0 && b.den_.degree() == 0) {
    // Laurent polynomials: product is already canonical.
    RatFunc r;
    r.zero_ = false;
    r.shift_ = a.shift_ + b.shift_;
    r.num_ = a.num_ * b.num_;
    r.den_ = Poly::constant(1);
    return r;
  }
  return RatFunc::from_parts(a.shift_ + b.shift_, a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc RatFunc::inverse() const {
  if (zero_) throw DivisionByZero();
  RatFunc r;
  r.zero_ = false;
  r.shift_ = -shift_;
  r.num_ = den_;
  r.den_ = num_;
  r.canonicalize();
  return r;
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.zero_) throw DivisionByZero();
  return a * b.inverse();
}

RatFunc RatFunc::pow(long k) const {
  if (k < 0) return inverse().pow(-k);
  RatFunc result(1), base = *this;
  while (k > 0) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return result;
}

bool RatFunc::operator==(const RatFunc& o) const {
  if (zero_ || o.zero_) return zero_ == o.zero_;
  return shift_ == o.shift_ && num_ == o.num_ && den_ == o.den_;
}

RatFunc arith(const RatFunc& a, const RatFunc& b, ArithOp op) {
  switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::sub: return a - b;
    case ArithOp::mul: return a * b;
    case ArithOp::div: return a / b;
  }
  return RatFunc();
}

// --------------------------------------------------------------- Laurent

LaurentPrefix laurent_prefix(const RatFunc& a, long last) {
  if (a.is_zero()) throw Error("laurent_prefix of zero");
  LaurentPrefix out;
  out.start = a.shift();
  if (last < out.start) throw Error("laurent_prefix: last degree below valuation");
  const std::size_t n = static_cast<std::size_t>(last - out.start + 1);
  const Poly& num = a.num();
  const Poly& den = a.den();
  const Rational d0_inv = 1 / den[0];
  out.coeffs.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    Rational c = j < num.size() ? num[j] : Rational(0);
    for (std::size_t i = 1; i <= j && i < den.size(); ++i) c -= den[i] * out.coeffs[j - i];
    out.coeffs[j] = c * d0_inv;
  }
  return out;
}

RatFunc truncate_below(const RatFunc& a, long bound) {
  if (a.is_zero() || a.shift() >= bound) return RatFunc();
  if (a.is_laurent_polynomial()) {
    const long top = a.shift() + a.num().degree();
    if (top < bound) return a;
  }
  LaurentPrefix p = laurent_prefix(a, bound - 1);
  return RatFunc::laurent(p.start, p.coeffs);
}

// ------------------------------------------------------- printing/parsing

namespace {

void print_rational_abs(std::ostream& os, const Rational& c) {
  Rational a = abs(c);
  os << a.get_num();
  if (a.get_den() != 1) os << '/' << a.get_den();
}

/* Prints sum_i p[i] t^(offset+i) in ascending degree. */
void print_laurent(std::ostream& os, const Poly& p, long offset) {
  bool first = true;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Rational& c = p[i];
    if (sgn(c) == 0) continue;
    const long e = offset + static_cast<long>(i);
    if (first) {
      if (sgn(c) < 0) os << '-';
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    const bool unit = abs(c) == 1;
    if (e == 0) {
      print_rational_abs(os, c);
      continue;
    }
    if (!unit) {
      print_rational_abs(os, c);
      os << '*';
    }
    os << 't';
    if (e != 1) os << '^' << e;
  }
  if (first) os << '0';
}

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  RatFunc parse_all() {
    RatFunc r = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing characters");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    std::ostringstream os;
    os << "cannot parse rational function '" << s_ << "' at offset " << pos_ << ": " << what;
    throw InputError(os.str());
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  RatFunc expr() {
    RatFunc acc;
    bool neg = accept('-');
    if (!neg) accept('+');
    acc = term();
    if (neg) acc = -acc;
    for (;;) {
      if (accept('+')) acc += term();
      else if (accept('-')) acc -= term();
      else return acc;
    }
  }

  RatFunc term() {
    RatFunc acc = power();
    for (;;) {
      if (accept('*')) acc *= power();
      else if (accept('/')) {
        RatFunc d = power();
        if (d.is_zero()) fail("division by zero");
        acc /= d;
      } else return acc;
    }
  }

  RatFunc power() {
    RatFunc base = atom();
    if (accept('^')) {
      bool neg = accept('-');
      long e = integer();
      if (neg) e = -e;
      if (base.is_zero() && e < 0) fail("zero to a negative power");
      base = base.pow(e);
    }
    return base;
  }

  long integer() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    if (pos_ - start > 9) fail("exponent too large");
    return std::stol(std::string(s_.substr(start, pos_ - start)));
  }

  RatFunc atom() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      RatFunc r = expr();
      if (!accept(')')) fail("expected ')'");
      return r;
    }
    if (c == 't') {
      ++pos_;
      return RatFunc::t_pow(1);
    }
    if (c == '-') {
      ++pos_;
      return -atom();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      mpz_class z(std::string(s_.substr(start, pos_ - start)));
      return RatFunc(Rational(z));
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string RatFunc::str() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const RatFunc& a) {
  if (a.is_zero()) return os << '0';
  if (a.den().degree() == 0) {
    print_laurent(os, a.num(), a.shift());
    return os;
  }
  os << '(';
  print_laurent(os, a.num(), a.shift());
  os << ")/(";
  print_laurent(os, a.den(), 0);
  return os << ')';
}

RatFunc RatFunc::parse(std::string_view text) { return Parser(text).parse_all(); }

}  // namespace btsurf::ff
