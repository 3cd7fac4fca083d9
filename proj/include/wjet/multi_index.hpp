#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace wjet {

using multi_index = std::vector<int>;
using point = std::vector<double>;

constexpr double inf = std::numeric_limits<double>::infinity();

int order_of(const multi_index& a);
double factorial(const multi_index& a);
double factorial(int k);
double binomial(int n, int k);

// All multi-indices in n variables with |a| <= max_order, graded-lex order:
// by total degree, then lexicographically descending (x1-heavy first).
std::vector<multi_index> graded_lex(int n, int max_order);

// Position of a in graded_lex(n, q) for any q >= |a|.
int graded_lex_rank(const multi_index& a);

// "(a1,...,an)" serialization key, and its inverse.
std::string index_key(const multi_index& a);
multi_index parse_index_key(const std::string& s);

multi_index unit_index(int n, int i);
multi_index add(const multi_index& a, const multi_index& b);
bool leq(const multi_index& a, const multi_index& b);

// Monomial (y - x)^b with integer powers by repeated multiplication.
double monomial(const point& x, const point& y, const multi_index& b);

double distance(const point& a, const point& b);
double norm(const point& a);

}  // namespace wjet
