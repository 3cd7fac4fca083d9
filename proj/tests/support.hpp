#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "wjet/multi_index.hpp"
#include "wjet/polynomial.hpp"

namespace testing_support {

using wjet::multi_index;
using wjet::point;

inline double uniform(std::mt19937_64& g, double a, double b) {
  return std::uniform_real_distribution<double>(a, b)(g);
}

inline point random_point(std::mt19937_64& g, int n, double a = -1.0, double b = 1.0) {
  point x(n);
  for (auto& v : x) v = uniform(g, a, b);
  return x;
}

// Random polynomial about the origin with all monomials of degree <= d.
inline wjet::polynomial random_poly(std::mt19937_64& g, int n, int d, double scale = 1.0) {
  wjet::polynomial p(n);
  for (const auto& a : wjet::graded_lex(n, d)) p.add_term(a, uniform(g, -scale, scale));
  return p;
}

// Independent evaluation of sum c_a (x - center)^a through std::pow.
inline double eval_terms(const wjet::polynomial& p, const point& x) {
  double s = 0.0;
  for (const auto& [a, c] : p.terms()) {
    double t = c;
    for (std::size_t i = 0; i < a.size(); ++i) t *= std::pow(x[i] - p.center()[i], a[i]);
    s += t;
  }
  return s;
}

// d^a of a polynomial by the power rule term by term.
inline double deriv_terms(const wjet::polynomial& p, const multi_index& b, const point& x) {
  double s = 0.0;
  for (const auto& [a, c] : p.terms()) {
    double t = c;
    for (std::size_t i = 0; i < a.size() && t != 0.0; ++i) {
      if (a[i] < b[i]) {
        t = 0.0;
        break;
      }
      for (int k = 0; k < b[i]; ++k) t *= a[i] - k;
      t *= std::pow(x[i] - p.center()[i], a[i] - b[i]);
    }
    s += t;
  }
  return s;
}

}  // namespace testing_support
