#include "wjet/modulus.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wjet/error.hpp"
#include "wjet/jet.hpp"

namespace wjet {

modulus modulus::holder(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw input_error("holder exponent must lie in (0,1]");
  modulus w;
  w.kind_ = kind::holder;
  w.alpha_ = alpha;
  return w;
}

modulus modulus::linear() { return modulus(); }

modulus modulus::piecewise_linear(std::vector<std::pair<double, double>> pts) {
  if (pts.empty()) throw input_error("piecewise-linear modulus needs at least one point");
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!(pts[i].first >= 0.0) || !(pts[i].second > 0.0) || !std::isfinite(pts[i].first) ||
        !std::isfinite(pts[i].second))
      throw input_error("piecewise-linear modulus points need t >= 0 and v > 0");
    if (i && !(pts[i].first > pts[i - 1].first))
      throw input_error("piecewise-linear modulus abscissae must increase strictly");
  }
  modulus w;
  w.kind_ = kind::piecewise_linear;
  w.pts_ = std::move(pts);
  return w;
}

double modulus::operator()(double t) const {
  if (t <= 0.0) return 0.0;
  switch (kind_) {
    case kind::linear:
      return t;
    case kind::holder:
      return alpha_ == 0.5 ? std::sqrt(t) : std::pow(t, alpha_);
    case kind::piecewise_linear:
      break;
  }
  const auto& p = pts_;
  if (t < p.front().first) return p.front().second * t / p.front().first;
  if (p.size() == 1) return p.front().first > 0.0 ? p.front().second * t / p.front().first : p.front().second;
  for (std::size_t i = 1; i < p.size(); ++i)
    if (t <= p[i].first) {
      const double s = (t - p[i - 1].first) / (p[i].first - p[i - 1].first);
      return p[i - 1].second + s * (p[i].second - p[i - 1].second);
    }
  const auto& a = p[p.size() - 2];
  const auto& b = p.back();
  return b.second + (t - b.first) * (b.second - a.second) / (b.first - a.first);
}

std::string modulus::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind_) {
    case kind::linear:
      os << "linear";
      break;
    case kind::holder:
      os << "holder(" << alpha_ << ")";
      break;
    case kind::piecewise_linear:
      os << "pl[";
      for (std::size_t i = 0; i < pts_.size(); ++i) os << (i ? "," : "") << "(" << pts_[i].first << "," << pts_[i].second << ")";
      os << "]";
      break;
  }
  return os.str();
}

std::vector<double> geometric_grid(double lo, double hi, int per_decade) {
  if (!(lo > 0.0) || !(hi > lo) || per_decade < 1) throw input_error("bad geometric grid bounds");
  std::vector<double> g;
  const double step = std::pow(10.0, 1.0 / per_decade);
  const int count = static_cast<int>(std::ceil(std::log10(hi / lo) * per_decade));
  for (int i = 0; i <= count; ++i) g.push_back(std::min(hi, lo * std::pow(step, i)));
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

modulus_certificate check_modulus(const modulus& w, const std::vector<double>& grid) {
  if (grid.empty()) throw input_error("check_modulus: empty grid");
  if (grid.size() < 3) throw input_error("check_modulus: grid needs at least 3 points");
  modulus_certificate c;
  auto fail = [&](const std::string& s) {
    if (c.pass) {
      c.pass = false;
      c.violation = s;
    }
  };
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = grid[i];
    if (i && !(t > grid[i - 1])) throw input_error("check_modulus: grid must be sorted and positive");
    if (!(t > 0.0)) throw input_error("check_modulus: grid must be positive");
    if (!(w(t) > 0.0)) {
      os << "not positive at t=" << t;
      fail(os.str());
    }
    if (i && w(t) < w(grid[i - 1])) {
      os << "not increasing between t=" << grid[i - 1] << " and t=" << t;
      fail(os.str());
    }
  }
  // midpoint concavity on consecutive triples and on pairs (s, t, (s+t)/2)
  const double tol = 1e-12;
  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    const double a = grid[i - 1], b = grid[i], d = grid[i + 1];
    const double lam = (d - b) / (d - a);
    const double chord = lam * w(a) + (1.0 - lam) * w(d);
    if (w(b) < chord - tol * std::max(1.0, std::abs(chord))) {
      os << "concavity fails at triple (" << a << "," << b << "," << d << ")";
      fail(os.str());
    }
  }
  c.smallest_value = w(grid.front());
  c.vanishing_ok = c.smallest_value <= 1e-2 * w(grid.back());
  return c;
}

double sigma_profile::operator()(double t) const {
  double v = 0.0;
  for (const auto& [s, x] : breakpoints) {
    if (s <= t)
      v = x;
    else
      break;
  }
  return v;
}

sigma_profile sigma_from_jet(const jet& F, const std::vector<double>& grid) {
  const auto& pts = F.points();
  const int m = F.order();
  const auto& idx = F.indices();
  std::vector<std::pair<double, double>> pairs;  // (distance, quotient)
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (i == j) continue;
      const double d = distance(pts[i], pts[j]);
      const auto R = remainder(F, i, j);
      double q = 0.0;
      for (std::size_t k = 0; k < idx.size(); ++k)
        q = std::max(q, std::abs(R[k]) / std::pow(d, m - order_of(idx[k])));
      pairs.emplace_back(d, q);
    }
  std::sort(pairs.begin(), pairs.end());
  sigma_profile exact;
  double best = 0.0;
  for (const auto& [d, q] : pairs)
    if (q > best) {
      best = q;
      if (!exact.breakpoints.empty() && exact.breakpoints.back().first == d)
        exact.breakpoints.back().second = q;
      else
        exact.breakpoints.emplace_back(d, q);
    }
  if (grid.empty()) return exact;
  sigma_profile s;
  for (double t : grid) s.breakpoints.emplace_back(t, exact(t));
  return s;
}

modulus least_concave_majorant(std::vector<std::pair<double, double>> samples) {
  if (samples.empty()) throw input_error("least_concave_majorant: empty input");
  for (const auto& [t, v] : samples)
    if (!(t >= 0.0) || !(v >= 0.0) || !std::isfinite(t) || !std::isfinite(v))
      throw input_error("least_concave_majorant: samples need t >= 0 and v >= 0");
  std::sort(samples.begin(), samples.end());
  // keep the largest value per abscissa
  std::vector<std::pair<double, double>> pts;
  for (const auto& s : samples) {
    if (!pts.empty() && pts.back().first == s.first)
      pts.back().second = std::max(pts.back().second, s.second);
    else
      pts.push_back(s);
  }
  // upper hull, monotone chain
  std::vector<std::pair<double, double>> hull;
  for (const auto& p : pts) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      const double cross = (b.first - a.first) * (p.second - a.second) - (b.second - a.second) * (p.first - a.first);
      if (cross >= 0.0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(p);
  }
  // the majorant is constant after its maximum
  std::size_t top = 0;
  for (std::size_t i = 0; i < hull.size(); ++i)
    if (hull[i].second > hull[top].second) top = i;
  hull.resize(top + 1);
  if (!(hull.back().second > 0.0)) throw input_error("least_concave_majorant: majorant is identically zero");
  std::vector<std::pair<double, double>> out;
  for (const auto& h : hull)
    if (h.second > 0.0) out.push_back(h);
  const double tl = out.back().first;
  out.emplace_back(tl + std::max(1.0, tl), out.back().second);
  return modulus::piecewise_linear(out);
}

modulus least_concave_majorant(const sigma_profile& p) {
  std::vector<std::pair<double, double>> s{{0.0, 0.0}};
  for (const auto& b : p.breakpoints) s.push_back(b);
  return least_concave_majorant(s);
}

modulus modulus_for_cm(const jet& F) {
  const sigma_profile sig = sigma_from_jet(F);
  std::vector<std::pair<double, double>> tau{{0.0, 0.0}};
  for (const auto& [t, v] : sig.breakpoints) tau.emplace_back(t, t < 1.0 ? v : std::max(1.0, v));
  tau.emplace_back(1.0, std::max(1.0, sig(1.0)));
  return least_concave_majorant(tau);
}

}  // namespace wjet
