#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "wjet/cells.hpp"
#include "wjet/extend.hpp"
#include "wjet/gromov.hpp"
#include "wjet/jet.hpp"
#include "wjet/modulus.hpp"
#include "wjet/polynomial.hpp"
#include "wjet/shvartsman.hpp"

namespace wjet {

using json = nlohmann::ordered_json;

// Unknown keys raise schema_error in strict mode and are collected as
// warnings otherwise.
struct schema_ctx {
  bool strict = false;
  std::vector<std::string> warnings;
  void check_keys(const json& j, const std::vector<std::string>& allowed, const std::string& where);
};

json read_json_file(const std::string& path);

modulus modulus_from_json(const json& j, schema_ctx& ctx);
json to_json(const modulus& w);

// {"coeffs": {"(a1,..,an)": c}, "center": [...], "n": n}
polynomial polynomial_from_json(const json& j, schema_ctx& ctx, int n = -1);
json to_json(const polynomial& p);

jet jet_from_json(const json& j, schema_ctx& ctx);
json to_json(const jet& F);

cell_ptr cell_from_json(const json& j, schema_ctx& ctx);
json to_json(const lambda_cell& c);

// Polynomial, or {"constant": c}, {"sum": [...]}, {"product": [...]}.
expr expr_from_json(const json& j, schema_ctx& ctx, int n);

problem problem_from_json(const json& j, schema_ctx& ctx);

json to_json(const extension_report& r);
json to_json(const whitney_report& r);
json to_json(const gromov_certificate& c);
json to_json(const family_report& r);

}  // namespace wjet
