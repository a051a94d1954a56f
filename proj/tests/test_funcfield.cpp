#include <doctest.h>

#include <random>
#include <vector>

#include "btsurf/error.hpp"
#include "btsurf/funcfield.hpp"

using namespace btsurf;
using ff::Poly;
using ff::RatFunc;
using ff::Rational;
using ff::Valuation;

namespace {

// Reference polynomial arithmetic on plain coefficient vectors.
using Coeffs = std::vector<Rational>;

void strip(Coeffs& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Coeffs mul(const Coeffs& a, const Coeffs& b) {
  if (a.empty() || b.empty()) return {};
  Coeffs out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  strip(out);
  return out;
}

// Schoolbook long division from the top degree.
void long_divide(Coeffs a, const Coeffs& b, Coeffs& q, Coeffs& r) {
  strip(a);
  q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  while (a.size() >= b.size() && !a.empty()) {
    std::size_t k = a.size() - b.size();
    Rational c = a.back() / b.back();
    q[k] = c;
    for (std::size_t j = 0; j < b.size(); ++j) a[k + j] -= c * b[j];
    strip(a);
  }
  r = a;
}

Coeffs euclid_gcd(Coeffs a, Coeffs b) {
  strip(a);
  strip(b);
  while (!b.empty()) {
    Coeffs q, r;
    long_divide(a, b, q, r);
    a = b;
    b = r;
  }
  if (!a.empty()) {
    Rational lead = a.back();
    for (auto& c : a) c /= lead;
  }
  return a;
}

// Power series n/d at t = 0 (d(0) != 0), first k coefficients.
Coeffs series(const Coeffs& n, const Coeffs& d, std::size_t k) {
  Coeffs c(k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    Rational s = i < n.size() ? n[i] : Rational(0);
    for (std::size_t j = 1; j <= i && j < d.size(); ++j) s -= d[j] * c[i - j];
    c[i] = s / d[0];
  }
  return c;
}

RatFunc random_ratfunc(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coef(-3, 3), deg(0, 3), shift(-3, 3);
  auto poly = [&](bool nonzero_const) {
    std::vector<Rational> c(static_cast<std::size_t>(deg(rng)) + 1);
    for (auto& x : c) x = coef(rng);
    if (nonzero_const && c[0] == 0) c[0] = 1;
    return Poly(c);
  };
  if (coef(rng) == 3) return RatFunc();
  Poly num = poly(false);
  if (num.is_zero()) return RatFunc();
  return RatFunc::t_pow(shift(rng)) * RatFunc::from_parts(0, num, Poly::constant(1)) /
         RatFunc::from_parts(0, poly(true), Poly::constant(1));
}

}  // namespace

TEST_CASE("arith examples") {
  auto t = RatFunc::t_pow(1);
  CHECK(ff::arith(t, t, ff::ArithOp::mul) == RatFunc::t_pow(2));
  CHECK(ff::arith(RatFunc(1), t, ff::ArithOp::add) == RatFunc::parse("1 + t"));
  auto a = RatFunc::parse("(1 + t)/t");
  auto b = RatFunc::parse("t/(1 + t)");
  CHECK(ff::arith(a, b, ff::ArithOp::mul).is_one());
  CHECK_THROWS_AS(ff::arith(a, RatFunc(), ff::ArithOp::div), DivisionByZero);
}

TEST_CASE("cancellation agrees with the gcd oracle") {
  // ((1+t)/t) * (t/(1+t)): numerator t + t^2, denominator t + t^2
  Coeffs n = mul({1, 1}, {0, 1}), d = mul({0, 1}, {1, 1});
  Coeffs g = euclid_gcd(n, d);
  Coeffs qn, rn, qd, rd;
  long_divide(n, g, qn, rn);
  long_divide(d, g, qd, rd);
  CHECK(rn.empty());
  CHECK(rd.empty());
  CHECK(qn == qd);
  CHECK(Poly::gcd(Poly(n), Poly(d)) == Poly(g));
}

TEST_CASE("polynomial division matches schoolbook division") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> coef(-4, 4), deg(0, 5);
  for (int it = 0; it < 200; ++it) {
    Coeffs a(static_cast<std::size_t>(deg(rng)) + 1), b(static_cast<std::size_t>(deg(rng)) + 1);
    for (auto& x : a) x = coef(rng);
    for (auto& x : b) x = coef(rng);
    strip(b);
    if (b.empty()) continue;
    Coeffs q, r;
    long_divide(a, b, q, r);
    strip(q);
    Poly pq, pr;
    Poly::divmod(Poly(a), Poly(b), pq, pr);
    CHECK(pq == Poly(q));
    CHECK(pr == Poly(r));
    CHECK(Poly::gcd(Poly(a), Poly(b)) == Poly(euclid_gcd(a, b)));
  }
}

TEST_CASE("valuation examples") {
  CHECK(RatFunc::t_pow(3).valuation() == Valuation(3));
  CHECK(RatFunc().valuation().is_infinite());
  auto x = RatFunc::parse("(t^2 + t^3)/(2 - t)");
  CHECK(x.valuation() == Valuation(2));
  // the expansion oracle starts at t^2 with a nonzero coefficient
  auto c = series({1, 1}, {2, -1}, 1);
  CHECK(c[0] != 0);
}

TEST_CASE("laurent prefix examples") {
  auto g = ff::laurent_prefix(RatFunc::parse("1/(1 - t)"), 2);
  CHECK(g.start == 0);
  CHECK(g.coeffs == std::vector<Rational>{1, 1, 1});
  auto sq = ff::laurent_prefix(RatFunc::t_pow(2), 2);
  CHECK(sq.start == 2);
  CHECK(sq.coeffs == std::vector<Rational>{1});
  auto x = ff::laurent_prefix(RatFunc::parse("(t^2 + t^3)/(2 - t)"), 3);
  CHECK(x.start == 2);
  CHECK(x.coeffs == series({1, 1}, {2, -1}, 2));
  CHECK(x.coeffs == std::vector<Rational>{Rational(1, 2), Rational(3, 4)});
  CHECK_THROWS(ff::laurent_prefix(RatFunc(), 3));
}

TEST_CASE("parse and print round trip") {
  for (const char* s : {"(t^2 + t^3)/(2 - t)", "0", "1", "t^-3", "-1/2*t + 3/4", "(1 + t)/t"}) {
    auto a = RatFunc::parse(s);
    CHECK(RatFunc::parse(a.str()) == a);
  }
}

TEST_CASE("valuation axioms on random pairs") {
  std::mt19937_64 rng(2024);
  for (int it = 0; it < 1000; ++it) {
    auto a = random_ratfunc(rng), b = random_ratfunc(rng);
    CHECK(((a.valuation() == Valuation(a.shift())) || a.is_zero()));
    CHECK((a * b).valuation() == a.valuation() + b.valuation());
    auto va = a.valuation(), vb = b.valuation();
    auto lo = va < vb ? va : vb;
    CHECK((a + b).valuation() >= lo);
    if (va != vb) CHECK((a + b).valuation() == lo);
    if (!b.is_zero()) CHECK((a / b) * b == a);
    CHECK(a + b == b + a);
    if (!a.is_zero()) {
      auto p = ff::laurent_prefix(a, a.shift() + 3);
      CHECK(Valuation(p.start) == a.valuation());
      CHECK(p.coeffs.front() != 0);
      CHECK((a - RatFunc::laurent(p.start, p.coeffs)).valuation() > Valuation(a.shift() + 3));
      auto n = a.num().coeffs(), d = a.den().coeffs();
      CHECK(p.coeffs == series(n, d, 4));
    }
  }
}

TEST_CASE("equal elements have identical canonical forms") {
  auto a = RatFunc::parse("(1 - t^2)/(1 + t)");
  auto b = RatFunc::parse("1 - t");
  CHECK(a == b);
  CHECK(a.num() == b.num());
  CHECK(a.den() == b.den());
  CHECK(a.str() == b.str());
}
