#pragma once

// Exact scalar arithmetic: arbitrary-precision rationals, optionally carrying
// a formal parameter t (polynomials in t with rational coefficients).
// Nothing in here ever rounds.

#include <gmpxx.h>

#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace gla {

using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational parse_rational(const std::string& s) {
  Rational r;
  if (r.set_str(s, 10) != 0)
    throw std::invalid_argument("bad rational literal: '" + s + "'");
  if (r.get_den() == 0)
    throw std::invalid_argument("rational with zero denominator: '" + s + "'");
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

// A scalar is either a plain rational or a polynomial in t of degree >= 1.
// Polynomials that collapse to degree 0 are normalized back to rationals, so
// equality of values implies equality of representations.
class Scalar {
 public:
  Scalar() : v_(Rational(0)) {}
  Scalar(const Rational& r) : v_(r) {}
  Scalar(long n) : v_(Rational(n)) {}
  Scalar(int n) : v_(Rational(n)) {}

  static Scalar t(int power = 1) {
    if (power < 0) throw std::invalid_argument("negative power of t");
    if (power == 0) return Scalar(1);
    std::vector<Rational> c(power + 1, Rational(0));
    c[power] = 1;
    return from_coeffs(std::move(c));
  }

  static Scalar from_coeffs(std::vector<Rational> coeffs) {
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
    Scalar s;
    if (coeffs.empty())
      s.v_ = Rational(0);
    else if (coeffs.size() == 1)
      s.v_ = coeffs[0];
    else
      s.v_ = std::move(coeffs);
    return s;
  }

  bool is_rational() const { return std::holds_alternative<Rational>(v_); }
  bool is_zero() const { return is_rational() && std::get<Rational>(v_) == 0; }

  // Degree in t; 0 for rationals (including 0 itself).
  int degree() const {
    if (is_rational()) return 0;
    return static_cast<int>(std::get<Poly>(v_).size()) - 1;
  }

  Rational coeff(int power) const {
    if (power < 0) throw std::invalid_argument("negative power of t");
    if (is_rational()) return power == 0 ? std::get<Rational>(v_) : Rational(0);
    const Poly& p = std::get<Poly>(v_);
    return power < static_cast<int>(p.size()) ? p[power] : Rational(0);
  }

  const Rational& as_rational() const {
    if (!is_rational())
      throw std::invalid_argument("scalar has a nonzero t-degree: " + str());
    return std::get<Rational>(v_);
  }

  Scalar operator-() const {
    std::vector<Rational> c = coeff_vec();
    for (auto& x : c) x = -x;
    return from_coeffs(std::move(c));
  }

  Scalar operator+(const Scalar& o) const {
    std::vector<Rational> a = coeff_vec(), b = o.coeff_vec();
    if (a.size() < b.size()) a.swap(b);
    for (size_t i = 0; i < b.size(); ++i) a[i] += b[i];
    return from_coeffs(std::move(a));
  }

  Scalar operator-(const Scalar& o) const { return *this + (-o); }

  Scalar operator*(const Scalar& o) const {
    if (is_zero() || o.is_zero()) return Scalar(0);
    std::vector<Rational> a = coeff_vec(), b = o.coeff_vec();
    std::vector<Rational> c(a.size() + b.size() - 1, Rational(0));
    for (size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    }
    return from_coeffs(std::move(c));
  }

  // Division by a nonzero rational only; dividing by a genuine polynomial is
  // not a ring operation here.
  Scalar operator/(const Scalar& o) const {
    if (!o.is_rational())
      throw std::invalid_argument("division by a t-polynomial");
    const Rational& d = o.as_rational();
    if (d == 0) throw std::invalid_argument("division by zero");
    std::vector<Rational> a = coeff_vec();
    for (auto& x : a) x /= d;
    return from_coeffs(std::move(a));
  }

  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  bool operator==(const Scalar& o) const {
    if (is_rational() != o.is_rational()) return false;
    if (is_rational())
      return std::get<Rational>(v_) == std::get<Rational>(o.v_);
    return std::get<Poly>(v_) == std::get<Poly>(o.v_);
  }
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  Scalar eval_t(const Rational& t_value) const {
    if (is_rational()) return *this;
    const Poly& p = std::get<Poly>(v_);
    Rational acc(0);
    for (size_t i = p.size(); i-- > 0;) acc = acc * t_value + p[i];
    return Scalar(acc);
  }

  // Renders like "3/2", "t", "-t^2", "1-2*t^2", "2*t^3+1/2" (terms by
  // ascending power, no spaces).
  std::string str() const {
    if (is_rational()) return to_string(std::get<Rational>(v_));
    const Poly& p = std::get<Poly>(v_);
    std::string out;
    for (size_t k = 0; k < p.size(); ++k) {
      if (p[k] == 0) continue;
      std::string coef = to_string(p[k]);
      bool neg = coef[0] == '-';
      if (neg) coef = coef.substr(1);
      if (!out.empty())
        out += neg ? "-" : "+";
      else if (neg)
        out += "-";
      if (k == 0) {
        out += coef;
      } else {
        if (coef != "1") out += coef + "*";
        out += "t";
        if (k > 1) out += "^" + std::to_string(k);
      }
    }
    return out.empty() ? "0" : out;
  }

  static Scalar parse(const std::string& text);

 private:
  using Poly = std::vector<Rational>;
  std::vector<Rational> coeff_vec() const {
    if (is_rational()) return {std::get<Rational>(v_)};
    return std::get<Poly>(v_);
  }
  std::variant<Rational, Poly> v_;
};

inline Scalar operator*(const Rational& r, const Scalar& s) {
  return Scalar(r) * s;
}

// Parses what str() prints: signed sums of "c", "c*t^k", "t^k", "t".
inline Scalar Scalar::parse(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw std::invalid_argument("empty scalar literal");

  std::vector<Rational> coeffs;
  auto bump = [&](int power, const Rational& c) {
    if (power >= static_cast<int>(coeffs.size()))
      coeffs.resize(power + 1, Rational(0));
    coeffs[power] += c;
  };

  size_t i = 0;
  while (i < s.size()) {
    bool neg = false;
    if (s[i] == '+' || s[i] == '-') {
      neg = s[i] == '-';
      ++i;
    }
    if (i >= s.size()) throw std::invalid_argument("dangling sign in '" + text + "'");

    std::string num;
    while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '/'))
      num += s[i++];
    Rational coef = num.empty() ? Rational(1) : parse_rational(num);
    if (neg) coef = -coef;

    int power = 0;
    if (i < s.size() && (s[i] == '*' || s[i] == 't')) {
      if (s[i] == '*') ++i;
      if (i >= s.size() || s[i] != 't')
        throw std::invalid_argument("bad scalar literal: '" + text + "'");
      ++i;
      power = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        std::string exp;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
          exp += s[i++];
        if (exp.empty())
          throw std::invalid_argument("bad exponent in '" + text + "'");
        power = std::stoi(exp);
      }
    } else if (num.empty()) {
      throw std::invalid_argument("bad scalar literal: '" + text + "'");
    }
    bump(power, coef);
    if (i < s.size() && s[i] != '+' && s[i] != '-')
      throw std::invalid_argument("bad scalar literal: '" + text + "'");
  }
  return from_coeffs(std::move(coeffs));
}

}  // namespace gla
