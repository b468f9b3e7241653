#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>
#include <numbers>

#include "qss/qss.hpp"

namespace qss::test {

inline double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

inline double max_abs_diff(const ComplexArray& a, const ComplexArray& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// Closed-form integrals of exp(-c |x|^2) over R^n and of x_1^2 exp(-c |x|^2).
inline double gauss_integral(double c, int n) { return std::pow(std::numbers::pi / c, 0.5 * n); }
inline double gauss_second_moment(double c, int n) { return gauss_integral(c, n) / (2.0 * c); }

inline ComplexArray sample(const Grid& g, const std::function<cplx(const std::vector<double>&)>& f) {
  ComplexArray out(g.size());
  std::vector<int> idx(g.dim(), 0);
  std::vector<double> x(g.dim());
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (int j = 0; j < g.dim(); ++j) x[j] = g.coords(j)[idx[j]];
    out[i] = f(x);
    for (int j = g.dim() - 1; j >= 0; --j) {
      if (++idx[j] < g.points(j)) break;
      idx[j] = 0;
    }
  }
  return out;
}

inline double norm2(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

}  // namespace qss::test
