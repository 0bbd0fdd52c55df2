#include "reeb/rational.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <regex>
#include <sstream>
#include <stdexcept>

namespace reeb {

namespace {

Integer pow10(unsigned e) {
  Integer r = 1;
  for (unsigned i = 0; i < e; ++i) r *= 10;
  return r;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  static const std::regex fraction(R"(\s*([+-]?\d+)\s*/\s*(\d+)\s*)");
  static const std::regex decimal(R"(\s*([+-]?)(\d*)(?:\.(\d*))?(?:[eE]([+-]?\d+))?\s*)");
  std::smatch m;
  if (std::regex_match(text, m, fraction)) {
    std::string ns = m[1].str(), ds = m[2].str();
    bool negative = !ns.empty() && ns[0] == '-';
    if (!ns.empty() && (ns[0] == '-' || ns[0] == '+')) ns.erase(0, 1);
    ns.erase(0, std::min(ns.find_first_not_of('0'), ns.size()));
    ds.erase(0, std::min(ds.find_first_not_of('0'), ds.size()));
    Integer num(ns.empty() ? std::string("0") : ns), den(ds.empty() ? std::string("0") : ds);
    if (negative) num = -num;
    if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    return Rational(num, den);
  }
  if (std::regex_match(text, m, decimal) && (m[2].length() > 0 || m[3].length() > 0)) {
    std::string digits = m[2].str() + m[3].str();
    // A leading zero would make the string constructor read octal.
    digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size()));
    Integer num(digits.empty() ? std::string("0") : digits);
    long exponent = m[4].matched ? std::stol(m[4].str()) : 0;
    exponent -= static_cast<long>(m[3].length());
    if (std::labs(exponent) > 4000) throw std::invalid_argument("exponent out of range in '" + text + "'");
    Rational q = exponent >= 0 ? Rational(num * pow10(exponent)) : Rational(num, pow10(-exponent));
    return m[1].str() == "-" ? Rational(-q) : q;
  }
  throw std::invalid_argument("not a rational literal: '" + text + "'");
}

std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

std::string to_decimal(const Rational& q, int digits) { return to_decimal(to_double(q), digits); }

std::string to_decimal(double x, int digits) {
  std::ostringstream os;
  os << std::setprecision(digits) << x;
  return os.str();
}

Integer gcd(const Integer& a, const Integer& b) { return boost::multiprecision::gcd(a, b); }

Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return boost::multiprecision::abs(a / gcd(a, b) * b);
}

VectorZ primitive(const VectorQ& v) {
  Integer l = 1;
  for (Eigen::Index i = 0; i < v.size(); ++i) l = lcm(l, denominator(v(i)));
  VectorZ z(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) z(i) = numerator(v(i)) * (l / denominator(v(i)));
  return primitive(z);
}

VectorZ primitive(const VectorZ& v) {
  Integer g = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) g = gcd(g, v(i));
  if (g == 0) return v;
  VectorZ z(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) z(i) = v(i) / g;
  return z;
}

bool is_primitive(const VectorZ& v) {
  Integer g = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) g = gcd(g, v(i));
  return g == 1;
}

VectorQ to_rational(const VectorZ& v) {
  VectorQ q(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) q(i) = Rational(v(i));
  return q;
}

MatrixQ to_rational(const MatrixZ& m) {
  MatrixQ q(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) q(i, j) = Rational(m(i, j));
  return q;
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

long double to_long_double(const Rational& q) {
  // GMP has no long double conversion; split into a double head and a double tail.
  double head = q.convert_to<double>();
  if (!std::isfinite(head)) return head;
  Rational rest = q - Rational(head);
  return static_cast<long double>(head) + static_cast<long double>(rest.convert_to<double>());
}

Vector<double> to_double(const VectorQ& v) {
  Vector<double> d(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) d(i) = to_double(v(i));
  return d;
}

Rational rationalize(double x, long max_den) {
  if (!std::isfinite(x)) throw std::invalid_argument("cannot rationalize a non-finite value");
  Rational exact(x);
  Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  Rational r = exact;
  for (int iter = 0; iter < 64; ++iter) {
    Integer a = numerator(r) / denominator(r);
    if (r < 0 && a * denominator(r) != numerator(r)) a -= 1;
    Integer q2 = a * q1 + q0;
    if (q2 > max_den) break;
    Integer p2 = a * p1 + p0;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    Rational frac = r - Rational(a);
    if (frac == 0) break;
    r = 1 / frac;
  }
  if (q1 == 0) return Rational(0);
  return Rational(p1, q1);
}

Rational factorial(int n) {
  Integer f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return Rational(f);
}

}  // namespace reeb
