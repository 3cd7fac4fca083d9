#include "wjet/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "wjet/error.hpp"

namespace wjet {

namespace {

const json& require(const json& j, const std::string& key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw schema_error(where + ": missing \"" + key + "\"");
  return j.at(key);
}

double number(const json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf" || s == "+inf") return inf;
    if (s == "-inf") return -inf;
  }
  throw schema_error(where + ": expected a number");
}

int integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw schema_error(where + ": expected an integer");
  return j.get<int>();
}

point point_from(const json& j, const std::string& where) {
  if (!j.is_array()) throw schema_error(where + ": expected an array of numbers");
  point x;
  for (const auto& v : j) x.push_back(number(v, where));
  return x;
}

json num_json(double v) {
  if (std::isinf(v)) return v > 0 ? json("+inf") : json("-inf");
  return json(v);
}

}  // namespace

void schema_ctx::check_keys(const json& j, const std::vector<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw schema_error(where + ": expected an object");
  for (const auto& [k, v] : j.items()) {
    bool ok = false;
    for (const auto& a : allowed)
      if (a == k) ok = true;
    if (ok) continue;
    const std::string msg = where + ": unknown field \"" + k + "\"";
    if (strict) throw schema_error(msg);
    warnings.push_back(msg);
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw schema_error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw schema_error(path + ": " + e.what());
  }
}

modulus modulus_from_json(const json& j, schema_ctx& ctx) {
  const std::string where = "modulus";
  const json& kind = require(j, "kind", where);
  if (!kind.is_string()) throw schema_error(where + ": kind must be a string");
  const std::string k = kind.get<std::string>();
  try {
    if (k == "holder") {
      ctx.check_keys(j, {"kind", "alpha"}, where);
      return modulus::holder(number(require(j, "alpha", where), where + ".alpha"));
    }
    if (k == "linear") {
      ctx.check_keys(j, {"kind"}, where);
      return modulus::linear();
    }
    if (k == "pl") {
      ctx.check_keys(j, {"kind", "points"}, where);
      std::vector<std::pair<double, double>> pts;
      const json& p = require(j, "points", where);
      if (!p.is_array()) throw schema_error(where + ".points: expected an array");
      for (const auto& q : p) {
        const point tv = point_from(q, where + ".points");
        if (tv.size() != 2) throw schema_error(where + ".points: entries are [t, v]");
        pts.emplace_back(tv[0], tv[1]);
      }
      return modulus::piecewise_linear(pts);
    }
  } catch (const input_error& e) {
    throw schema_error(where + ": " + e.what());
  }
  throw schema_error(where + ": unknown kind \"" + k + "\"");
}

json to_json(const modulus& w) {
  json j;
  switch (w.type()) {
    case modulus::kind::holder:
      j["kind"] = "holder";
      j["alpha"] = w.alpha();
      break;
    case modulus::kind::linear:
      j["kind"] = "linear";
      break;
    case modulus::kind::piecewise_linear: {
      j["kind"] = "pl";
      json pts = json::array();
      for (const auto& [t, v] : w.points()) pts.push_back({t, v});
      j["points"] = pts;
      break;
    }
  }
  return j;
}

polynomial polynomial_from_json(const json& j, schema_ctx& ctx, int n) {
  const std::string where = "polynomial";
  ctx.check_keys(j, {"coeffs", "center", "n"}, where);
  if (j.contains("n")) {
    const int nn = integer(j.at("n"), where + ".n");
    if (n >= 0 && nn != n) throw schema_error(where + ": n = " + std::to_string(nn) + ", expected " + std::to_string(n));
    n = nn;
  }
  const json& c = require(j, "coeffs", where);
  if (!c.is_object()) throw schema_error(where + ".coeffs: expected an object");
  std::vector<std::pair<multi_index, double>> terms;
  for (const auto& [k, v] : c.items()) {
    const multi_index a = parse_index_key(k);
    if (n < 0) n = static_cast<int>(a.size());
    if (static_cast<int>(a.size()) != n) throw schema_error(where + ": key " + k + " has the wrong length");
    terms.emplace_back(a, number(v, where + ".coeffs"));
  }
  if (n < 0) throw schema_error(where + ": cannot infer the number of variables (give \"n\")");
  point center(n, 0.0);
  if (j.contains("center")) {
    center = point_from(j.at("center"), where + ".center");
    if (static_cast<int>(center.size()) != n) throw schema_error(where + ".center: wrong length");
  }
  polynomial p(n, center);
  for (const auto& [a, v] : terms) p.add_term(a, v);
  return p;
}

json to_json(const polynomial& p) {
  json j;
  j["n"] = p.nvars();
  json c = json::object();
  for (const auto& [a, v] : p.terms()) c[index_key(a)] = v;
  j["coeffs"] = c;
  bool centred = false;
  for (double v : p.center())
    if (v != 0.0) centred = true;
  if (centred) j["center"] = p.center();
  return j;
}

jet jet_from_json(const json& j, schema_ctx& ctx) {
  const std::string where = "jet";
  ctx.check_keys(j, {"n", "m", "points", "fields"}, where);
  const int n = integer(require(j, "n", where), where + ".n");
  const int m = integer(require(j, "m", where), where + ".m");
  if (n < 1 || m < 0) throw schema_error(where + ": need n >= 1, m >= 0");
  const json& pts = require(j, "points", where);
  if (!pts.is_array()) throw schema_error(where + ".points: expected an array");
  std::vector<point> X;
  for (const auto& p : pts) {
    X.push_back(point_from(p, where + ".points"));
    if (static_cast<int>(X.back().size()) != n) throw schema_error(where + ".points: wrong dimension");
  }
  const auto idx = graded_lex(n, m);
  std::vector<std::vector<double>> vals(X.size(), std::vector<double>(idx.size(), 0.0));
  if (j.contains("fields")) {
    const json& f = j.at("fields");
    if (!f.is_object()) throw schema_error(where + ".fields: expected an object");
    for (const auto& [k, v] : f.items()) {
      const multi_index a = parse_index_key(k);
      if (static_cast<int>(a.size()) != n || order_of(a) > m) throw schema_error(where + ": field " + k + " out of range");
      if (!v.is_array() || v.size() != X.size()) throw schema_error(where + ": field " + k + " needs one value per point");
      const int r = graded_lex_rank(a);
      for (std::size_t i = 0; i < X.size(); ++i) vals[i][r] = number(v[i], where + ".fields");
    }
  }
  jet F(n, m);
  try {
    for (std::size_t i = 0; i < X.size(); ++i) F.add_point(X[i], vals[i]);
  } catch (const input_error& e) {
    throw schema_error(where + ": " + e.what());
  }
  return F;
}

json to_json(const jet& F) {
  json j;
  j["n"] = F.dim();
  j["m"] = F.order();
  j["points"] = F.points();
  json f = json::object();
  for (std::size_t k = 0; k < F.indices().size(); ++k) {
    json v = json::array();
    for (std::size_t i = 0; i < F.size(); ++i) v.push_back(F.value(k, i));
    f[index_key(F.indices()[k])] = v;
  }
  j["fields"] = f;
  return j;
}

cell_ptr cell_from_json(const json& j, schema_ctx& ctx) {
  const std::string where = "cell";
  if (!j.is_object()) throw schema_error(where + ": expected an object");
  const double C = j.contains("C") ? number(j.at("C"), where + ".C") : 1.0;
  try {
    if (j.contains("interval")) {
      ctx.check_keys(j, {"interval", "C"}, where);
      const point ab = point_from(j.at("interval"), where + ".interval");
      if (ab.size() != 2) throw schema_error(where + ".interval: expected [a, b]");
      return lambda_cell::interval(ab[0], ab[1], C);
    }
    if (j.contains("band")) {
      ctx.check_keys(j, {"band", "C"}, where);
      const json& b = j.at("band");
      ctx.check_keys(b, {"lo", "hi", "base"}, where + ".band");
      const cell_ptr base = cell_from_json(require(b, "base", where + ".band"), ctx);
      auto bound = [&](const char* key, const char* infinite) -> std::optional<polynomial> {
        if (!b.contains(key)) return std::nullopt;
        const json& v = b.at(key);
        if (v.is_string()) {
          const std::string s = v.get<std::string>();
          if (s == infinite || (s == "inf" && std::string(infinite) == "+inf")) return std::nullopt;
          throw schema_error(where + ".band." + key + ": unexpected string \"" + s + "\"");
        }
        if (v.is_number()) return polynomial::constant(base->ambient(), v.get<double>());
        return polynomial_from_json(v, ctx, base->ambient());
      };
      return lambda_cell::band(bound("lo", "-inf"), bound("hi", "+inf"), base, C);
    }
    if (j.contains("graph")) {
      ctx.check_keys(j, {"graph", "C"}, where);
      const json& g = j.at("graph");
      ctx.check_keys(g, {"map", "base"}, where + ".graph");
      const cell_ptr base = cell_from_json(require(g, "base", where + ".graph"), ctx);
      const json& mp = require(g, "map", where + ".graph");
      if (!mp.is_array()) throw schema_error(where + ".graph.map: expected an array");
      std::vector<polynomial> map;
      for (const auto& p : mp) {
        if (p.is_number())
          map.push_back(polynomial::constant(base->ambient(), p.get<double>()));
        else
          map.push_back(polynomial_from_json(p, ctx, base->ambient()));
      }
      return lambda_cell::graph(map, base, C);
    }
  } catch (const input_error& e) {
    throw schema_error(where + ": " + e.what());
  }
  throw schema_error(where + ": expected one of interval, band, graph");
}

json to_json(const lambda_cell& c) {
  json j;
  switch (c.type()) {
    case lambda_cell::kind::interval:
      j["interval"] = {num_json(c.a1()), num_json(c.a2())};
      break;
    case lambda_cell::kind::band: {
      json b;
      b["lo"] = c.lo() ? to_json(*c.lo()) : json("-inf");
      b["hi"] = c.hi() ? to_json(*c.hi()) : json("+inf");
      b["base"] = to_json(*c.base());
      j["band"] = b;
      break;
    }
    case lambda_cell::kind::graph: {
      json g;
      json mp = json::array();
      for (const auto& p : c.map()) mp.push_back(to_json(p));
      g["map"] = mp;
      g["base"] = to_json(*c.base());
      j["graph"] = g;
      break;
    }
  }
  if (c.constant() != 1.0) j["C"] = c.constant();
  return j;
}

expr expr_from_json(const json& j, schema_ctx& ctx, int n) {
  const std::string where = "expression";
  if (j.is_number()) return constant(j.get<double>());
  if (!j.is_object()) throw schema_error(where + ": expected an object or a number");
  if (j.contains("coeffs")) return poly(polynomial_from_json(j, ctx, n));
  if (j.contains("constant")) {
    ctx.check_keys(j, {"constant"}, where);
    return constant(number(j.at("constant"), where));
  }
  for (const char* op : {"sum", "product"}) {
    if (!j.contains(op)) continue;
    ctx.check_keys(j, {op}, where);
    const json& a = j.at(op);
    if (!a.is_array()) throw schema_error(where + "." + op + ": expected an array");
    std::vector<expr> parts;
    for (const auto& e : a) parts.push_back(expr_from_json(e, ctx, n));
    return std::string(op) == "sum" ? sum(parts) : product(parts);
  }
  throw schema_error(where + ": expected coeffs, constant, sum or product");
}

namespace {

stratum stratum_from_json(const json& j, schema_ctx& ctx, int n, int m, bool flat, const std::string& where) {
  stratum S;
  if (flat)
    ctx.check_keys(j, {"point", "cell", "frame", "samples"}, where);
  else
    ctx.check_keys(j, {"point", "values", "generator", "cell", "frame", "samples"}, where);
  if (j.contains("point") == j.contains("cell")) throw schema_error(where + ": give exactly one of point, cell");
  if (j.contains("point")) {
    S.is_point = true;
    S.x = point_from(j.at("point"), where + ".point");
    if (static_cast<int>(S.x.size()) != n) throw schema_error(where + ".point: wrong dimension");
    if (!flat && j.contains("values")) {
      const json& v = j.at("values");
      if (!v.is_object()) throw schema_error(where + ".values: expected an object");
      std::vector<double> vals(graded_lex(n, m).size(), 0.0);
      for (const auto& [k, x] : v.items()) {
        const multi_index a = parse_index_key(k);
        if (static_cast<int>(a.size()) != n || order_of(a) > m) throw schema_error(where + ": value " + k + " out of range");
        vals[graded_lex_rank(a)] = number(x, where + ".values");
      }
      S.values = vals;
    }
  } else {
    S.is_point = false;
    S.cell = cell_from_json(j.at("cell"), ctx);
    if (S.cell->ambient() > n) throw schema_error(where + ".cell: does not fit in R^" + std::to_string(n));
  }
  if (!flat && j.contains("generator")) S.generator = expr_from_json(j.at("generator"), ctx, n);
  if (!flat && !S.is_point && !S.generator) throw schema_error(where + ": cell strata need a generator");
  if (j.contains("frame")) {
    const json& f = j.at("frame");
    if (!f.is_array()) throw schema_error(where + ".frame: expected rows");
    for (const auto& r : f) S.Q.push_back(point_from(r, where + ".frame"));
  }
  if (j.contains("samples")) S.samples = integer(j.at("samples"), where + ".samples");
  return S;
}

}  // namespace

problem problem_from_json(const json& j, schema_ctx& ctx) {
  const std::string where = "problem";
  ctx.check_keys(j, {"version", "name", "n", "m", "p", "modulus", "bump", "strata", "extras", "set", "options"}, where);
  if (j.contains("version") && integer(j.at("version"), where + ".version") != 1)
    throw schema_error(where + ": unsupported version");
  problem P;
  if (j.contains("name")) P.name = j.at("name").get<std::string>();
  P.n = integer(require(j, "n", where), where + ".n");
  P.m = integer(require(j, "m", where), where + ".m");
  P.p = j.contains("p") ? integer(j.at("p"), where + ".p") : P.m + 1;
  if (P.n < 1 || P.m < 0) throw schema_error(where + ": need n >= 1 and m >= 0");
  if (j.contains("modulus")) P.omega = modulus_from_json(j.at("modulus"), ctx);
  if (j.contains("bump")) {
    const json& b = j.at("bump");
    ctx.check_keys(b, {"p", "plateau"}, where + ".bump");
    if (b.contains("p")) P.bump.p = integer(b.at("p"), where + ".bump.p");
    if (b.contains("plateau")) P.bump.plateau = number(b.at("plateau"), where + ".bump.plateau");
  }
  P.bump.p = std::max(P.bump.p, P.p);
  if (j.contains("strata")) {
    const json& s = j.at("strata");
    if (!s.is_array()) throw schema_error(where + ".strata: expected an array");
    for (std::size_t i = 0; i < s.size(); ++i)
      P.strata.push_back(stratum_from_json(s[i], ctx, P.n, P.m, false, where + ".strata[" + std::to_string(i) + "]"));
  }
  if (j.contains("extras")) {
    const json& s = j.at("extras");
    if (!s.is_array()) throw schema_error(where + ".extras: expected an array");
    for (std::size_t i = 0; i < s.size(); ++i)
      P.extras.push_back(stratum_from_json(s[i], ctx, P.n, P.m, true, where + ".extras[" + std::to_string(i) + "]"));
  }
  if (j.contains("set")) {
    const json& s = j.at("set");
    if (!s.is_array()) throw schema_error(where + ".set: expected an array");
    for (const auto& c : s) {
      const cell_ptr cp = cell_from_json(c, ctx);
      if (cp->dim() >= 1) ++P.unstratified;
    }
  }
  return P;
}

json to_json(const extension_report& r) {
  json j;
  j["restriction_max_error"] = r.restriction_max_error;
  j["restriction_worst_point"] = r.restriction_worst_point;
  j["restriction_worst_index"] = r.restriction_worst_index.empty() ? "" : index_key(r.restriction_worst_index);
  j["sup_derivatives"] = r.sup_derivatives;
  j["holder_quotient"] = r.holder_quotient;
  j["norm_estimate"] = r.norm;
  j["flatness_violation"] = r.flatness_violation;
  j["flat_probes"] = r.flat_probes;
  j["seam_residual"] = r.seam_residual;
  j["seam_points"] = r.seam_points;
  j["probes"] = r.probes;
  j["refine_probes"] = r.refine_probes;
  j["skipped_probes"] = r.skipped;
  j["seed"] = r.seed;
  j["pair_radius"] = r.pair_radius;
  j["probe_box_lo"] = r.box_lo;
  j["probe_box_hi"] = r.box_hi;
  j["modulus"] = r.modulus;
  return j;
}

json to_json(const whitney_report& r) {
  json j;
  j["sup_norm"] = r.sup_norm;
  j["holder_constant"] = r.holder_constant;
  j["worst_x"] = r.worst_x;
  j["worst_y"] = r.worst_y;
  j["worst_index"] = r.worst_index;
  return j;
}

json to_json(const gromov_certificate& c) {
  json j;
  j["hypothesis_holds"] = c.hypothesis_holds;
  j["failing_order"] = c.failing_order;
  j["grid_points"] = c.grid_points;
  j["sup_f"] = c.sup_f;
  j["holder_constant"] = c.holder_constant;
  j["observed"] = c.observed;
  j["bound"] = c.bound;
  j["margin"] = c.margin;
  j["pass"] = c.pass;
  return j;
}

json to_json(const family_report& r) {
  json j;
  json mem = json::array();
  for (const auto& s : r.members) {
    json e;
    e["name"] = s.name;
    e["ok"] = s.ok;
    if (!s.ok) e["error"] = s.error;
    e["norm"] = s.norm;
    e["restriction_error"] = s.restriction_error;
    e["omega_at_1"] = s.omega_at_1;
    mem.push_back(e);
  }
  j["members"] = mem;
  j["sup_norm"] = r.sup_norm;
  j["min_norm"] = r.min_norm;
  j["ratio"] = r.ratio;
  j["worst_member"] = r.worst;
  j["uniform_omega_C"] = r.uniform_omega_C;
  j["failures"] = r.failures;
  return j;
}

}  // namespace wjet
