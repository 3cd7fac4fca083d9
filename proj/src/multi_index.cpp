#include "wjet/multi_index.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "wjet/error.hpp"

namespace wjet {

int order_of(const multi_index& a) { return std::accumulate(a.begin(), a.end(), 0); }

double factorial(int k) {
  double r = 1.0;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

double factorial(const multi_index& a) {
  double r = 1.0;
  for (int v : a) r *= factorial(v);
  return r;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

namespace {

void fill_degree(int n, int d, int pos, multi_index& cur, std::vector<multi_index>& out) {
  if (pos == n - 1) {
    cur[pos] = d;
    out.push_back(cur);
    return;
  }
  for (int v = d; v >= 0; --v) {
    cur[pos] = v;
    fill_degree(n, d - v, pos + 1, cur, out);
  }
}

}  // namespace

std::vector<multi_index> graded_lex(int n, int max_order) {
  std::vector<multi_index> out;
  if (n == 0) {
    out.emplace_back();
    return out;
  }
  multi_index cur(n, 0);
  for (int d = 0; d <= max_order; ++d) fill_degree(n, d, 0, cur, out);
  return out;
}

int graded_lex_rank(const multi_index& a) {
  const int n = static_cast<int>(a.size());
  if (n == 0) return 0;
  const int d = order_of(a);
  // indices of lower degree
  int rank = d == 0 ? 0 : static_cast<int>(binomial(n + d - 1, n));
  // within degree d: count indices that precede a (lex descending)
  int rem = d;
  for (int i = 0; i < n - 1; ++i) {
    // indices with a larger value at position i come first
    for (int v = rem; v > a[i]; --v) {
      int left = rem - v, vars = n - 1 - i;
      rank += static_cast<int>(binomial(left + vars - 1, vars - 1));
    }
    rem -= a[i];
  }
  return rank;
}

std::string index_key(const multi_index& a) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) os << ',';
    os << a[i];
  }
  os << ')';
  return os.str();
}

multi_index parse_index_key(const std::string& s) {
  std::string t;
  for (char c : s)
    if (c != ' ') t += c;
  if (t.size() < 2 || t.front() != '(' || t.back() != ')')
    throw schema_error("bad multi-index key '" + s + "'");
  multi_index a;
  std::string body = t.substr(1, t.size() - 2);
  if (body.empty()) return a;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw schema_error("bad multi-index key '" + s + "'");
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw schema_error("bad multi-index key '" + s + "'");
    }
    if (used != item.size() || v < 0) throw schema_error("bad multi-index key '" + s + "'");
    a.push_back(v);
  }
  return a;
}

multi_index unit_index(int n, int i) {
  multi_index e(n, 0);
  e[i] = 1;
  return e;
}

multi_index add(const multi_index& a, const multi_index& b) {
  multi_index c(a);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += b[i];
  return c;
}

bool leq(const multi_index& a, const multi_index& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

double monomial(const point& x, const point& y, const multi_index& b) {
  double r = 1.0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    const double h = y[i] - x[i];
    for (int k = 0; k < b[i]; ++k) r *= h;
  }
  return r;
}

double distance(const point& a, const point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

double norm(const point& a) {
  double s = 0.0;
  for (double v : a) s += v * v;
  return std::sqrt(s);
}

}  // namespace wjet
