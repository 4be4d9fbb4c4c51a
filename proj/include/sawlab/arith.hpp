#pragma once
// Arithmetic foundations: arbitrary-precision integers and rationals (GMP),
// configurable-precision reals (MPFR) and a minimal complex type on top.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sawlab {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;
// Variable-precision real; precision is thread-local and set via set_precision_bits.
using Real = boost::multiprecision::mpfr_float;

// Sets the default mantissa precision for Real on the calling thread to at
// least `bits` bits (the underlying library rounds the decimal-digit request
// up, never down).
inline void set_precision_bits(unsigned bits) {
  if (bits < 24) bits = 24;
  unsigned digits10 = static_cast<unsigned>(bits * 0.30103) + 2;
  Real::default_precision(digits10);
}

inline Real real_pi() {
  Real m1(-1);
  return acos(m1);
}

struct Cplx {
  Real re, im;
  Cplx() : re(0), im(0) {}
  Cplx(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  explicit Cplx(int r) : re(r), im(0) {}

  Cplx operator+(const Cplx& o) const { return {re + o.re, im + o.im}; }
  Cplx operator-(const Cplx& o) const { return {re - o.re, im - o.im}; }
  Cplx operator*(const Cplx& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  Cplx& operator+=(const Cplx& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Cplx& operator-=(const Cplx& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Cplx operator-() const { return {-re, -im}; }
  Cplx operator*(const Real& s) const { return {re * s, im * s}; }
  Cplx operator/(const Cplx& o) const {
    Real d = o.re * o.re + o.im * o.im;
    return {(re * o.re + im * o.im) / d, (im * o.re - re * o.im) / d};
  }
  Cplx conj() const { return {re, -im}; }
  Real abs() const { return sqrt(re * re + im * im); }
};

inline bool operator==(const Cplx& a, const Cplx& b) {
  return a.re == b.re && a.im == b.im;
}

// unit complex number e^{i theta} with theta = num/den * pi
inline Cplx unit_from_pi_fraction(long num, long den) {
  Real theta = real_pi() * num / den;
  return {cos(theta), sin(theta)};
}

// Parses "p", "-p" or "p/q" into an exact rational; rejects anything else
// (in particular decimal floats, which would silently lose exactness).
inline Rat parse_rational(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational");
  auto ok = [](const std::string& t) {
    if (t.empty()) return false;
    size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  auto slash = s.find('/');
  if (slash == std::string::npos) {
    if (!ok(s)) throw std::invalid_argument("not an integer or p/q rational: " + s);
    return Rat(Int(s));
  }
  std::string p = s.substr(0, slash), q = s.substr(slash + 1);
  if (!ok(p) || !ok(q)) throw std::invalid_argument("not a p/q rational: " + s);
  Int den(q);
  if (den == 0) throw std::invalid_argument("zero denominator: " + s);
  return Rat(Int(p), den);
}

inline Real rat_to_real(const Rat& r) {
  return Real(numerator(r)) / Real(denominator(r));
}

}  // namespace sawlab
