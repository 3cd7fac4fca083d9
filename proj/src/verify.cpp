#include "wjet/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>
#include <thread>

#include "wjet/error.hpp"

namespace wjet {

namespace {

constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19};

double radical_inverse(std::uint64_t i, int base) {
  double f = 1.0, r = 0.0;
  while (i > 0) {
    f /= base;
    r += f * static_cast<double>(i % base);
    i /= base;
  }
  return r;
}

int thread_count(int requested, std::size_t work) {
  int t = requested > 0 ? requested : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  return static_cast<int>(std::min<std::size_t>(t, std::max<std::size_t>(1, work / 64)));
}

template <class Fn>
void parallel_chunks(std::size_t count, int threads, Fn fn) {
  const int T = thread_count(threads, count);
  if (T <= 1) {
    fn(0, count, 0);
    return;
  }
  std::vector<std::thread> pool;
  for (int t = 0; t < T; ++t) {
    const std::size_t b = count * t / T, e = count * (t + 1) / T;
    pool.emplace_back([=, &fn] { fn(b, e, t); });
  }
  for (auto& th : pool) th.join();
}

struct probe_value {
  bool ok = false;
  std::vector<double> d;  // derivatives in graded-lex order
};

}  // namespace

std::vector<point> halton_cloud(const point& lo, const point& hi, int count, std::uint64_t seed) {
  const int d = static_cast<int>(lo.size());
  if (d > 8) throw input_error("halton cloud supports at most 8 dimensions");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::vector<double> shift(d);
  for (auto& s : shift) s = U(rng);
  std::vector<point> out(count, point(d));
  for (int i = 0; i < count; ++i)
    for (int j = 0; j < d; ++j) {
      double v = radical_inverse(static_cast<std::uint64_t>(i) + 1, kPrimes[j]) + shift[j];
      v -= std::floor(v);
      out[i][j] = lo[j] + (hi[j] - lo[j]) * v;
    }
  return out;
}

bool extension_report::finite() const {
  for (double v : {restriction_max_error, sup_derivatives, holder_quotient, norm, flatness_violation, seam_residual})
    if (!std::isfinite(v)) return false;
  return true;
}

std::string extension_report::summary() const {
  std::ostringstream os;
  os.precision(10);
  os << "restriction_max_error " << restriction_max_error << "\n";
  if (restriction_worst_point >= 0)
    os << "restriction_worst " << restriction_worst_point << " " << index_key(restriction_worst_index) << "\n";
  os << "sup_derivatives " << sup_derivatives << "\n";
  os << "holder_quotient " << holder_quotient << "\n";
  os << "norm_estimate " << norm << "\n";
  os << "flatness_violation " << flatness_violation << " (" << flat_probes << " probes)\n";
  os << "seam_residual " << seam_residual << " (" << seam_points << " points)\n";
  os << "probes " << probes << " (+" << refine_probes << " local) skipped " << skipped << " seed " << seed << " pair_radius " << pair_radius << "\n";
  os << "probe_box";
  for (std::size_t i = 0; i < box_lo.size(); ++i) os << " [" << box_lo[i] << ", " << box_hi[i] << "]";
  os << "\nmodulus " << modulus << "\n";
  return os.str();
}

extension_report verify_extension(const expr& f, const jet& F, const modulus& w, const verify_options& opt) {
  const int n = F.dim(), m = F.order();
  const std::vector<multi_index> idx = graded_lex(n, m);
  extension_report rep;
  rep.seed = opt.seed;
  rep.pair_radius = opt.pair_radius;
  rep.modulus = w.describe();

  // restriction on the jet samples
  for (std::size_t i = 0; i < F.size(); ++i) {
    double err = 0.0;
    multi_index worst = idx[0];
    try {
      const tps s = eval_series(f, F.points()[i], m);
      for (std::size_t k = 0; k < idx.size(); ++k) {
        const double e = std::abs(s.derivative(idx[k]) - F.value(k, i));
        if (e > err) {
          err = e;
          worst = idx[k];
        }
      }
    } catch (const domain_error&) {
      err = inf;
    }
    if (rep.restriction_worst_point < 0 || err > rep.restriction_max_error) {
      rep.restriction_max_error = err;
      rep.restriction_worst_point = static_cast<int>(i);
      rep.restriction_worst_index = worst;
    }
  }

  // probe box
  if (opt.has_box) {
    rep.box_lo = opt.box_lo;
    rep.box_hi = opt.box_hi;
  } else {
    rep.box_lo.assign(n, inf);
    rep.box_hi.assign(n, -inf);
    for (const auto& x : F.points())
      for (int j = 0; j < n; ++j) {
        rep.box_lo[j] = std::min(rep.box_lo[j], x[j]);
        rep.box_hi[j] = std::max(rep.box_hi[j], x[j]);
      }
    if (F.size() == 0) {
      rep.box_lo.assign(n, 0.0);
      rep.box_hi.assign(n, 0.0);
    }
    for (int j = 0; j < n; ++j) {
      rep.box_lo[j] -= opt.margin;
      rep.box_hi[j] += opt.margin;
    }
  }

  const std::vector<point> cloud = halton_cloud(rep.box_lo, rep.box_hi, opt.probes, opt.seed);
  rep.probes = opt.probes;
  std::vector<probe_value> vals(cloud.size());
  parallel_chunks(cloud.size(), opt.threads, [&](std::size_t b, std::size_t e, int) {
    for (std::size_t i = b; i < e; ++i) {
      try {
        const tps s = eval_series(f, cloud[i], m);
        vals[i].d.resize(idx.size());
        for (std::size_t k = 0; k < idx.size(); ++k) vals[i].d[k] = s.derivative(idx[k]);
        vals[i].ok = true;
      } catch (const domain_error&) {
        vals[i].ok = false;
      }
    }
  });

  std::size_t first_top = 0;
  while (first_top < idx.size() && order_of(idx[first_top]) < m) ++first_top;

  long sup_at = -1;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    if (!vals[i].ok) {
      ++rep.skipped;
      continue;
    }
    double mx = 0.0;
    for (double v : vals[i].d) mx = std::max(mx, std::abs(v));
    if (mx > rep.sup_derivatives || sup_at < 0) {
      rep.sup_derivatives = std::max(rep.sup_derivatives, mx);
      sup_at = static_cast<long>(i);
    }
    if (opt.flat_zone && opt.flat_zone(cloud[i])) {
      ++rep.flat_probes;
      rep.flatness_violation = std::max(rep.flatness_violation, mx);
    }
  }

  // near pairs via grid buckets of side pair_radius; probes are regrouped by
  // bucket into flat arrays (coordinates, top-order derivatives)
  const double R = opt.pair_radius, R2 = R * R;
  const std::size_t top = idx.size() - first_top;
  auto key_of = [&](const point& x) {
    std::vector<long> k(n);
    for (int j = 0; j < n; ++j) k[j] = static_cast<long>(std::floor((x[j] - rep.box_lo[j]) / R));
    return k;
  };
  std::map<std::vector<long>, std::vector<int>> members;
  for (std::size_t i = 0; i < cloud.size(); ++i)
    if (vals[i].ok) members[key_of(cloud[i])].push_back(static_cast<int>(i));
  // within a bucket, probes with nonzero top-order derivatives come first;
  // pairs of two zero probes are skipped
  struct range {
    std::size_t b, nz, e;
  };
  std::vector<double> xs, ds;
  std::map<std::vector<long>, range> buckets;
  std::vector<std::vector<long>> keys;
  auto is_zero = [&](int i) {
    for (std::size_t q = first_top; q < idx.size(); ++q)
      if (vals[i].d[q] != 0.0) return false;
    return true;
  };
  for (auto& [k, list] : members) {
    std::stable_partition(list.begin(), list.end(), [&](int i) { return !is_zero(i); });
    const std::size_t b = xs.size() / n;
    std::size_t nz = b;
    for (int i : list) {
      xs.insert(xs.end(), cloud[i].begin(), cloud[i].end());
      ds.insert(ds.end(), vals[i].d.begin() + static_cast<long>(first_top), vals[i].d.end());
      if (!is_zero(i)) ++nz;
    }
    buckets[k] = {b, nz, b + list.size()};
    keys.push_back(k);
  }
  std::vector<std::vector<long>> offsets{{}};
  for (int j = 0; j < n; ++j) {
    std::vector<std::vector<long>> next;
    for (const auto& o : offsets)
      for (long dlt = -1; dlt <= 1; ++dlt) {
        auto v = o;
        v.push_back(dlt);
        next.push_back(v);
      }
    offsets = std::move(next);
  }
  // the best pairs, kept apart by at least `sep` in both ends so that the
  // refinement below starts from distinct basins
  double vol = 1.0;
  for (int j = 0; j < n; ++j) vol *= rep.box_hi[j] - rep.box_lo[j];
  const double spacing = std::pow(vol / std::max(1, opt.probes), 1.0 / n);
  const double sep2 = 16.0 * spacing * spacing;
  const std::size_t K = static_cast<std::size_t>(std::max(1, opt.refine_starts));
  struct pair_best {
    double q = 0.0;
    std::size_t i = 0, j = 0;
    bool better(const pair_best& o) const { return q != o.q ? q > o.q : std::pair(i, j) < std::pair(o.i, o.j); }
  };
  auto near_pair = [&](const pair_best& u, const pair_best& v) {
    auto d2 = [&](std::size_t a, std::size_t b) {
      double s2 = 0.0;
      for (int c = 0; c < n; ++c) s2 += (xs[a * n + c] - xs[b * n + c]) * (xs[a * n + c] - xs[b * n + c]);
      return s2;
    };
    return (d2(u.i, v.i) < sep2 && d2(u.j, v.j) < sep2) || (d2(u.i, v.j) < sep2 && d2(u.j, v.i) < sep2);
  };
  auto offer = [&](std::vector<pair_best>& list, const pair_best& c) {
    for (auto& e : list)
      if (near_pair(e, c)) {
        if (c.better(e)) e = c;
        std::sort(list.begin(), list.end(), [](const auto& x, const auto& y) { return x.better(y); });
        return;
      }
    if (list.size() < K) {
      list.push_back(c);
    } else if (c.better(list.back())) {
      list.back() = c;
    } else {
      return;
    }
    std::sort(list.begin(), list.end(), [](const auto& x, const auto& y) { return x.better(y); });
  };
  std::vector<std::vector<pair_best>> best(thread_count(opt.threads, keys.size() * 64));
  parallel_chunks(keys.size(), opt.threads, [&](std::size_t kb, std::size_t ke, int t) {
    std::vector<pair_best> local;
    double floor_q = 0.0;  // the K-th best so far; smaller quotients cannot enter
    for (std::size_t kk = kb; kk < ke; ++kk) {
      const range I = buckets.at(keys[kk]);
      for (const auto& o : offsets) {
        auto k = keys[kk];
        for (int j = 0; j < n; ++j) k[j] += o[j];
        auto it = buckets.find(k);
        if (it == buckets.end()) continue;
        const range J = it->second;
        if (J.b < I.b) continue;  // each unordered bucket pair once
        for (std::size_t i = I.b; i < I.e; ++i) {
          const double* xi = &xs[i * n];
          const double* di = &ds[i * top];
          const std::size_t jend = i < I.nz ? J.e : J.nz;
          for (std::size_t jj = std::max(J.b, i + 1); jj < jend; ++jj) {
            const double* dj = &ds[jj * top];
            double diff = 0.0;
            for (std::size_t q = 0; q < top; ++q) diff = std::max(diff, std::abs(di[q] - dj[q]));
            if (diff == 0.0) continue;
            const double* xj = &xs[jj * n];
            double d2 = 0.0;
            for (int c = 0; c < n; ++c) d2 += (xi[c] - xj[c]) * (xi[c] - xj[c]);
            if (d2 > R2 || d2 == 0.0) continue;
            const double q = diff / w(std::sqrt(d2));
            if (q < floor_q) continue;
            offer(local, {q, i, jj});
            floor_q = local.size() < K ? 0.0 : local.back().q;
          }
        }
      }
    }
    best[t] = std::move(local);
  });
  std::vector<pair_best> starts;
  for (const auto& list : best)
    for (const auto& c : list) offer(starts, c);
  rep.holder_quotient = starts.empty() ? 0.0 : starts.front().q;

  // local refinement: shrinking Halton neighbourhoods around the best probe
  // and around each end of the best pairs
  if (opt.refine_rounds > 0 && sup_at >= 0) {
    auto derivs_at = [&](const point& x, std::vector<double>& out) {
      try {
        const tps s = eval_series(f, x, m);
        out.resize(idx.size());
        for (std::size_t k = 0; k < idx.size(); ++k) out[k] = s.derivative(idx[k]);
        return true;
      } catch (const domain_error&) {
        return false;
      }
    };
    auto quotient = [&](const point& a, const std::vector<double>& da, const point& b, const std::vector<double>& db) {
      const double d = distance(a, b);
      if (d == 0.0 || d > R) return 0.0;
      double diff = 0.0;
      for (std::size_t q = first_top; q < idx.size(); ++q) diff = std::max(diff, std::abs(da[q] - db[q]));
      return diff / w(d);
    };
    auto around = [&](const point& c, double h, std::uint64_t salt) {
      point lo = c, hi = c;
      for (int j = 0; j < n; ++j) {
        lo[j] -= h;
        hi[j] += h;
      }
      return halton_cloud(lo, hi, opt.refine_points, opt.seed * 7919 + salt);
    };
    std::vector<double> dv;

    point xb = cloud[sup_at];
    double h = spacing;
    for (int round = 0; round < opt.refine_rounds; ++round, h *= 0.5)
      for (const auto& y : around(xb, h, static_cast<std::uint64_t>(round))) {
        if (!derivs_at(y, dv)) continue;
        ++rep.refine_probes;
        double mx = 0.0;
        for (double v : dv) mx = std::max(mx, std::abs(v));
        if (mx > rep.sup_derivatives) {
          rep.sup_derivatives = mx;
          xb = y;
        }
      }

    for (std::size_t s0 = 0; s0 < starts.size(); ++s0) {
      point px(xs.begin() + static_cast<long>(starts[s0].i * n), xs.begin() + static_cast<long>((starts[s0].i + 1) * n));
      point py(xs.begin() + static_cast<long>(starts[s0].j * n), xs.begin() + static_cast<long>((starts[s0].j + 1) * n));
      std::vector<double> dx, dy;
      if (!derivs_at(px, dx) || !derivs_at(py, dy)) continue;
      double cur = quotient(px, dx, py, dy);
      h = spacing;
      for (int round = 0; round < opt.refine_rounds; ++round, h *= 0.5)
        for (int end = 0; end < 2; ++end) {
          point& moving = end == 0 ? px : py;
          std::vector<double>& dm = end == 0 ? dx : dy;
          const point& fixed = end == 0 ? py : px;
          const std::vector<double>& dfix = end == 0 ? dy : dx;
          const std::uint64_t salt = 1000 * (s0 + 1) + 2 * static_cast<std::uint64_t>(round) + end;
          for (const auto& y : around(moving, h, salt)) {
            if (!derivs_at(y, dv)) continue;
            ++rep.refine_probes;
            const double q = quotient(y, dv, fixed, dfix);
            if (q > cur) {
              cur = q;
              moving = y;
              dm = dv;
            }
          }
        }
      rep.holder_quotient = std::max(rep.holder_quotient, cur);
    }
  }
  rep.norm = rep.sup_derivatives + rep.holder_quotient;

  // seams: compare both sides along each axis
  for (const auto& x : opt.seam_points) {
    bool counted = false;
    for (int j = 0; j < n; ++j) {
      point a = x, b = x;
      a[j] -= opt.seam_eps;
      b[j] += opt.seam_eps;
      try {
        const tps sa = eval_series(f, a, m), sb = eval_series(f, b, m);
        for (const auto& g : idx) rep.seam_residual = std::max(rep.seam_residual, std::abs(sa.derivative(g) - sb.derivative(g)));
        counted = true;
      } catch (const domain_error&) {
      }
    }
    if (counted) ++rep.seam_points;
  }
  return rep;
}

}  // namespace wjet
