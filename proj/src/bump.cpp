#include "wjet/bump.hpp"

#include <cmath>
#include <sstream>

#include "wjet/error.hpp"

namespace wjet {

std::vector<double> join_coefficients(int p) {
  // smoothstep S(s) = s^(p+1) sum_k C(p+k,k) (1-s)^k, q = 1 - S
  std::vector<double> S(2 * p + 2, 0.0);
  for (int k = 0; k <= p; ++k) {
    const double c = binomial(p + k, k);
    // (1-s)^k expanded, shifted by s^(p+1)
    for (int j = 0; j <= k; ++j) S[p + 1 + j] += c * binomial(k, j) * ((j % 2) ? -1.0 : 1.0);
  }
  std::vector<double> q(2 * p + 2);
  for (std::size_t i = 0; i < q.size(); ++i) q[i] = -S[i];
  q[0] += 1.0;
  return q;
}

bump_fn::bump_fn(bump_spec s) : spec_(s), q_(join_coefficients(s.p)) {
  if (s.p < 1) throw input_error("bump smoothness p must be at least 1");
  if (!(s.plateau > 0.0 && s.plateau < 1.0)) throw input_error("bump plateau half-width must lie in (0,1)");
}

std::string bump_fn::describe() const {
  std::ostringstream os;
  os << "xi(p=" << spec_.p << ", plateau=" << spec_.plateau << ")";
  return os.str();
}

std::vector<double> bump_fn::piece_derivs(piece pc, double t, int q) const {
  std::vector<double> d(q + 1, 0.0);
  if (pc == piece::plateau) {
    d[0] = 1.0;
    return d;
  }
  if (pc == piece::outside) return d;
  const double w = spec_.plateau;
  const double sg = t < 0.0 ? -1.0 : 1.0;
  const double s = (std::abs(t) - w) / (1.0 - w);
  const double ds = sg / (1.0 - w);
  // k-th derivative of q at s via coefficient differentiation
  std::vector<double> c = q_;
  double scale = 1.0;
  for (int k = 0; k <= q; ++k) {
    double v = 0.0;
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) v = v * s + c[i];
    d[k] = v * scale;
    scale *= ds;
    for (std::size_t i = 0; i + 1 < c.size(); ++i) c[i] = c[i + 1] * static_cast<double>(i + 1);
    if (!c.empty()) c.back() = 0.0;
  }
  return d;
}

std::vector<double> bump_fn::derivs(double t, int q) const {
  const double u = std::abs(t);
  if (u <= spec_.plateau) return piece_derivs(piece::plateau, t, q);
  if (u >= 1.0) return piece_derivs(piece::outside, t, q);
  return piece_derivs(piece::join, t, q);
}

expr bump_xi(const bump_spec& s, const expr& arg) { return wjet::apply(std::make_shared<bump_fn>(s), arg); }

expr bump_xi(const bump_spec& s) { return bump_xi(s, coordinate(0)); }

expr bump_chi(int n, const bump_spec& s) { return bump_chi_at(point(n, 0.0), 1.0, s); }

expr bump_chi_at(const point& c, double r, const bump_spec& s) {
  const int n = static_cast<int>(c.size());
  polynomial p(n, c);
  for (int i = 0; i < n; ++i) {
    multi_index a(n, 0);
    a[i] = 2;
    p.add_term(a, 1.0 / (r * r));
  }
  return bump_xi(s, poly(p));
}

}  // namespace wjet
