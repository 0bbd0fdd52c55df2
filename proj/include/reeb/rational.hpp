#ifndef REEB_RATIONAL_HPP
#define REEB_RATIONAL_HPP

#include <cstddef>
#include <string>
#include <type_traits>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

namespace reeb {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using VectorQ = Vector<Rational>;
using MatrixQ = Matrix<Rational>;
using VectorZ = Vector<Integer>;
using MatrixZ = Matrix<Integer>;

/** Parses "p", "p/q", "-1.25" or "3e-4" into an exact rational. Throws std::invalid_argument. */
Rational parse_rational(const std::string& text);

/** Canonical rendering: "p" for integers, "p/q" otherwise. */
std::string to_string(const Rational& q);

/** Decimal rendering with the given number of significant digits. */
std::string to_decimal(const Rational& q, int digits = 17);
std::string to_decimal(double x, int digits = 17);

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);

/** Smallest positive integer multiple of v with integer entries and gcd 1. Zero stays zero. */
VectorZ primitive(const VectorQ& v);
VectorZ primitive(const VectorZ& v);

bool is_primitive(const VectorZ& v);

VectorQ to_rational(const VectorZ& v);
MatrixQ to_rational(const MatrixZ& m);

/** Rational to double, correctly rounded by GMP. */
double to_double(const Rational& q);
long double to_long_double(const Rational& q);

Vector<double> to_double(const VectorQ& v);

/** Continued-fraction best approximation with denominator at most max_den. */
Rational rationalize(double x, long max_den);

/** Strict lexicographic order on vectors of equal length. */
template <typename Scalar>
bool lex_less(const Vector<Scalar>& a, const Vector<Scalar>& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i) < b(i)) return true;
    if (b(i) < a(i)) return false;
  }
  return false;
}

template <typename Scalar>
bool equal(const Vector<Scalar>& a, const Vector<Scalar>& b) {
  if (a.size() != b.size()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (a(i) != b(i)) return false;
  return true;
}

template <typename Scalar>
Scalar dot(const Vector<Scalar>& a, const Vector<Scalar>& b) {
  Scalar s(0);
  for (Eigen::Index i = 0; i < a.size(); ++i) s += a(i) * b(i);
  return s;
}

/** Converts an integer to the requested scalar type. */
template <typename Scalar>
Scalar integer_cast(const Integer& z) {
  if constexpr (std::is_same_v<Scalar, Rational>)
    return Rational(z);
  else
    return z.template convert_to<Scalar>();
}

/** Pairing of an integer lattice vector with a scalar vector. */
template <typename Scalar>
Scalar pair(const VectorZ& w, const Vector<Scalar>& xi) {
  Scalar s(0);
  for (Eigen::Index i = 0; i < w.size(); ++i) s += integer_cast<Scalar>(w(i)) * xi(i);
  return s;
}

Rational factorial(int n);

/** Converts an exact rational to the requested scalar type. */
template <typename Scalar>
Scalar scalar_cast(const Rational& q) {
  if constexpr (std::is_same_v<Scalar, Rational>)
    return q;
  else if constexpr (std::is_same_v<Scalar, long double>)
    return to_long_double(q);
  else
    return static_cast<Scalar>(to_double(q));
}

template <typename Scalar>
Vector<Scalar> scalar_cast(const VectorQ& v) {
  Vector<Scalar> out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = scalar_cast<Scalar>(v(i));
  return out;
}

}  // namespace reeb

#endif
