#ifndef GROUPALG_SCALAR_HPP_
#define GROUPALG_SCALAR_HPP_

#include <boost/rational.hpp>
#include <cmath>
#include <complex>
#include <cstdlib>

namespace groupalg {

// Uniform scalar access for the algebra templates.  `real` is the type of
// absolute values and norms; exact scalars keep norms exact.
template <class S>
struct scalar_traits;

template <>
struct scalar_traits<double> {
  using real = double;
  static constexpr bool exact = false;
  static double conj(double x) { return x; }
  static double abs(double x) { return std::abs(x); }
  static double abs_sq(double x) { return x * x; }
  static bool is_zero(double x, double tol = 1e-12) {
    return std::abs(x) <= tol;
  }
};

template <>
struct scalar_traits<std::complex<double>> {
  using real = double;
  static constexpr bool exact = false;
  static std::complex<double> conj(std::complex<double> x) {
    return std::conj(x);
  }
  static double abs(std::complex<double> x) { return std::abs(x); }
  static double abs_sq(std::complex<double> x) { return std::norm(x); }
  static bool is_zero(std::complex<double> x, double tol = 1e-12) {
    return std::abs(x) <= tol;
  }
};

template <class I>
struct scalar_traits<boost::rational<I>> {
  using real = boost::rational<I>;
  static constexpr bool exact = true;
  static boost::rational<I> conj(boost::rational<I> x) { return x; }
  static boost::rational<I> abs(boost::rational<I> x) {
    return x < boost::rational<I>(0) ? -x : x;
  }
  static boost::rational<I> abs_sq(boost::rational<I> x) { return x * x; }
  static bool is_zero(boost::rational<I> x, boost::rational<I> = {}) {
    return x == boost::rational<I>(0);
  }
};

using Rat = boost::rational<long long>;
using Cx = std::complex<double>;

inline double to_double(double x) { return x; }
template <class I>
double to_double(boost::rational<I> const& x) {
  return boost::rational_cast<double>(x);
}

}  // namespace groupalg

#endif  // GROUPALG_SCALAR_HPP_
