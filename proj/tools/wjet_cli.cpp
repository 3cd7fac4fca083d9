#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "wjet/error.hpp"
#include "wjet/extend.hpp"
#include "wjet/glue.hpp"
#include "wjet/gromov.hpp"
#include "wjet/io.hpp"
#include "wjet/jet.hpp"
#include "wjet/shvartsman.hpp"
#include "wjet/verify.hpp"

using namespace wjet;

namespace {

constexpr int kPass = 0, kVerifyFail = 2, kPrecondition = 3, kSchema = 4;
constexpr double kRestrictionTol = 1e-6;

struct options {
  std::string problem;
  std::string out;
  int probes = 10000;
  std::uint64_t seed = 1;
  double plateau = -1.0;
  bool strict = false;
  bool csv = false;
};

struct output {
  std::ostringstream text;
  json data;
  std::string csv;
};

std::string num(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

void header(output& o, const std::string& cmd, const options& opt) {
  o.text << "wjet report\ncommand " << cmd << "\nproblem " << opt.problem << "\n";
  o.data["command"] = cmd;
  o.data["problem"] = opt.problem;
}

void probe_meta(output& o, const options& opt, double plateau) {
  o.text << "plateau " << num(plateau) << "\nprobe_cloud halton count " << opt.probes << " seed " << opt.seed
         << " (bounding box of the jet samples grown by 1)\n"
         << "tolerances restriction " << num(kRestrictionTol) << "\n";
  json m;
  m["plateau"] = plateau;
  m["probe_cloud"] = {{"kind", "halton"}, {"count", opt.probes}, {"seed", opt.seed}, {"margin", 1.0}};
  m["tolerances"] = {{"restriction", kRestrictionTol}};
  o.data["metadata"] = m;
}

void warnings(output& o, const schema_ctx& ctx) {
  for (const auto& w : ctx.warnings) {
    o.text << "warning " << w << "\n";
    std::cerr << "warning: " << w << "\n";
  }
  if (!ctx.warnings.empty()) o.data["warnings"] = ctx.warnings;
}

verify_options vopts(const options& opt) {
  verify_options v;
  v.probes = opt.probes;
  v.seed = opt.seed;
  return v;
}

std::string probe_csv(const expr& f, const extension_report& r, const options& opt) {
  std::ostringstream os;
  os.precision(12);
  const auto cloud = halton_cloud(r.box_lo, r.box_hi, opt.probes, opt.seed);
  for (std::size_t j = 0; j < r.box_lo.size(); ++j) os << "x" << j + 1 << ",";
  os << "f\n";
  for (const auto& x : cloud) {
    for (double v : x) os << v << ",";
    try {
      os << eval(f, x) << "\n";
    } catch (const domain_error&) {
      os << "nan\n";
    }
  }
  return os.str();
}

void emit_extension(output& o, const extension_result& r, const options& opt) {
  for (const auto& l : r.log) o.text << "log " << l << "\n";
  o.text << r.report.summary();
  o.data["log"] = r.log;
  o.data["report"] = to_json(r.report);
  if (opt.csv) o.csv = probe_csv(r.f, r.report, opt);
}

bool extension_ok(const extension_report& r) {
  return r.finite() && r.restriction_max_error <= kRestrictionTol;
}

problem load_problem(const json& j, schema_ctx& ctx, const options& opt) {
  problem P = problem_from_json(j, ctx);
  if (opt.plateau > 0.0) P.bump.plateau = opt.plateau;
  return P;
}

int cmd_extend(const options& opt, output& o) {
  header(o, "extend", opt);
  schema_ctx ctx{opt.strict, {}};
  const json j = read_json_file(opt.problem);
  const problem P = load_problem(j, ctx, opt);
  warnings(o, ctx);
  probe_meta(o, opt, P.bump.plateau);
  const extension_result r = extend_jet(P, vopts(opt));
  emit_extension(o, r, opt);
  json c;
  c["problem"] = j;
  c["options"] = {{"probes", opt.probes}, {"seed", opt.seed}, {"plateau", P.bump.plateau}};
  c["report"] = to_json(r.report);
  o.data["construction"] = c;
  return extension_ok(r.report) ? kPass : kVerifyFail;
}

int cmd_verify(const options& opt, output& o) {
  header(o, "verify", opt);
  schema_ctx ctx{opt.strict, {}};
  json c = read_json_file(opt.problem);
  if (c.contains("construction")) c = c.at("construction");
  ctx.check_keys(c, {"problem", "options", "report"}, "construction");
  if (!c.contains("problem") || !c.contains("options") || !c.contains("report"))
    throw schema_error("construction: needs problem, options and report");
  options o2 = opt;
  const json& op = c.at("options");
  o2.probes = op.value("probes", opt.probes);
  o2.seed = op.value("seed", opt.seed);
  o2.plateau = op.value("plateau", -1.0);
  const problem P = load_problem(c.at("problem"), ctx, o2);
  warnings(o, ctx);
  probe_meta(o, o2, P.bump.plateau);
  const extension_result r = extend_jet(P, vopts(o2));
  emit_extension(o, r, o2);
  const bool same = to_json(r.report) == c.at("report");
  o.text << "logged_report " << (same ? "reproduced" : "DIFFERS") << "\n";
  o.data["reproduced"] = same;
  return same && extension_ok(r.report) ? kPass : kVerifyFail;
}

int cmd_family(const options& opt, output& o) {
  header(o, "family", opt);
  schema_ctx ctx{opt.strict, {}};
  const json j = read_json_file(opt.problem);
  ctx.check_keys(j, {"version", "mode", "members"}, "family");
  const std::string mode = j.value("mode", std::string("fixed"));
  if (mode != "fixed" && mode != "per-member") throw schema_error("family: mode is fixed or per-member");
  if (!j.contains("members") || !j.at("members").is_array()) throw schema_error("family: members must be an array");
  std::vector<problem> members;
  for (const auto& m : j.at("members")) members.push_back(load_problem(m, ctx, opt));
  warnings(o, ctx);
  probe_meta(o, opt, members.empty() ? bump_spec{}.plateau : members[0].bump.plateau);
  o.text << "mode " << mode << "\n";
  const family_report r =
      extend_family(members, mode == "fixed" ? family_mode::fixed_omega : family_mode::per_member_omega, vopts(opt));
  o.text << r.summary();
  o.data["mode"] = mode;
  o.data["report"] = to_json(r);
  if (opt.csv) {
    std::ostringstream os;
    os.precision(12);
    os << "member,name,ok,norm,restriction_error,omega_at_1\n";
    for (std::size_t i = 0; i < r.members.size(); ++i) {
      const auto& s = r.members[i];
      os << i << "," << s.name << "," << s.ok << "," << s.norm << "," << s.restriction_error << "," << s.omega_at_1
         << "\n";
    }
    o.csv = os.str();
  }
  bool ok = r.failures.empty();
  for (const auto& s : r.members) ok = ok && s.restriction_error <= kRestrictionTol;
  return ok ? kPass : kVerifyFail;
}

int cmd_gromov(const options& opt, output& o) {
  header(o, "gromov", opt);
  schema_ctx ctx{opt.strict, {}};
  const json j = read_json_file(opt.problem);
  ctx.check_keys(j, {"version", "function", "t0", "r", "m", "modulus", "intervals"}, "gromov");
  if (!j.contains("function") || !j.contains("t0") || !j.contains("r") || !j.contains("m"))
    throw schema_error("gromov: needs function, t0, r, m");
  const expr f = expr_from_json(j.at("function"), ctx, 1);
  std::optional<modulus> w;
  if (j.contains("modulus")) w = modulus_from_json(j.at("modulus"), ctx);
  const int intervals = j.value("intervals", 512);
  warnings(o, ctx);
  const gromov_certificate c =
      verify_gromov(f, j.at("t0").get<double>(), j.at("r").get<double>(), j.at("m").get<int>(), w, intervals);
  o.text << "grid equispaced " << c.grid_points << " points on [t0 - r, t0 + r]\n" << c.summary() << "\n";
  o.data["grid_points"] = c.grid_points;
  o.data["certificate"] = to_json(c);
  if (!c.hypothesis_holds) return kPrecondition;
  return c.pass ? kPass : kVerifyFail;
}

int cmd_whitney(const options& opt, output& o) {
  header(o, "whitney", opt);
  schema_ctx ctx{opt.strict, {}};
  const json j = read_json_file(opt.problem);
  ctx.check_keys(j, {"version", "jet", "modulus", "radius"}, "whitney");
  if (!j.contains("jet")) throw schema_error("whitney: needs jet");
  const jet F = jet_from_json(j.at("jet"), ctx);
  const modulus w = j.contains("modulus") ? modulus_from_json(j.at("modulus"), ctx) : modulus::linear();
  whitney_options wo;
  wo.radius = j.value("radius", 0.0);
  warnings(o, ctx);
  const whitney_report r = whitney_constant(F, w, wo);
  o.text << "modulus " << w.describe() << "\npairs exhaustive" << (wo.radius > 0 ? " within radius " + num(wo.radius) : "")
         << "\n"
         << r.summary();
  o.data["modulus"] = w.describe();
  o.data["report"] = to_json(r);
  return kPass;
}

int cmd_cm(const options& opt, output& o) {
  header(o, "cm", opt);
  schema_ctx ctx{opt.strict, {}};
  const json j = read_json_file(opt.problem);
  const problem P = load_problem(j, ctx, opt);
  warnings(o, ctx);
  probe_meta(o, opt, P.bump.plateau);
  const cm_result r = cm_extend(P, vopts(opt));
  o.text << "omega " << r.omega.describe() << "\nomega_at_1 " << num(r.omega_at_1) << "\nsigma_max "
         << num(r.sigma_max) << "\n";
  o.text << "note omega is linear through the origin below its first breakpoint\n";
  o.data["omega"] = to_json(r.omega);
  o.data["omega_at_1"] = r.omega_at_1;
  o.data["sigma_max"] = r.sigma_max;
  emit_extension(o, r.ext, opt);
  return extension_ok(r.ext.report) && r.omega_at_1 >= 1.0 ? kPass : kVerifyFail;
}

int cmd_shvartsman(const options& opt, output& o) {
  header(o, "shvartsman", opt);
  schema_ctx ctx{opt.strict, {}};
  const json j = read_json_file(opt.problem);
  ctx.check_keys(j, {"version", "jet", "modulus"}, "shvartsman");
  if (!j.contains("jet")) throw schema_error("shvartsman: needs jet");
  const jet F = jet_from_json(j.at("jet"), ctx);
  const modulus w = j.contains("modulus") ? modulus_from_json(j.at("modulus"), ctx) : modulus::linear();
  warnings(o, ctx);
  const int m = F.order();
  const auto field = field_from_jet(F);
  const auto d = chain_distances(field, w, m);
  double asym = 0.0, self = 0.0, excess = 0.0;
  for (std::size_t a = 0; a < field.size(); ++a) {
    self = std::max(self, delta_omega(field[a], field[a], w, m));
    for (std::size_t b = 0; b < field.size(); ++b) {
      const double dab = delta_omega(field[a], field[b], w, m);
      asym = std::max(asym, std::abs(dab - delta_omega(field[b], field[a], w, m)));
      if (a != b) excess = std::max(excess, d[a][b] - dab);
    }
  }
  const lip_norm_result ln = lip_norm(field, w, m);
  const whitney_report wr = whitney_constant(F, w);
  const double wn = wr.sup_norm + wr.holder_constant;
  o.text << "modulus " << w.describe() << "\ncandidates field points only (upper bound on d_omega)\n"
         << "delta_symmetry_defect " << num(asym) << "\ndelta_self_distance " << num(self)
         << "\nchain_minus_delta_max " << num(excess) << "\nlip_norm " << num(ln.total) << " (sup term "
         << num(ln.sup_term) << ", lambda term " << num(ln.lambda_term) << ")\nwhitney_norm " << num(wn)
         << "\nratio_lip_over_whitney " << (wn > 0 ? num(ln.total / wn) : std::string("undefined")) << "\n";
  o.data["delta_symmetry_defect"] = asym;
  o.data["delta_self_distance"] = self;
  o.data["chain_minus_delta_max"] = excess;
  o.data["lip_norm"] = {{"total", ln.total}, {"sup_term", ln.sup_term}, {"lambda_term", ln.lambda_term}};
  o.data["whitney_norm"] = wn;
  return asym == 0.0 && self == 0.0 && excess <= 0.0 ? kPass : kVerifyFail;
}

int cmd_glue(const options& opt, output& o) {
  header(o, "glue", opt);
  schema_ctx ctx{opt.strict, {}};
  const json j = read_json_file(opt.problem);
  const problem P = load_problem(j, ctx, opt);
  warnings(o, ctx);
  probe_meta(o, opt, P.bump.plateau);
  const glue_pipeline_result r = glue_annuli(P, vopts(opt));
  o.text << "annuli " << r.glued.K << " points_per_piece";
  for (int c : r.points_per_piece) o.text << " " << c;
  o.text << "\n";
  o.data["annuli"] = r.glued.K;
  o.data["points_per_piece"] = r.points_per_piece;
  emit_extension(o, r.ext, opt);
  return extension_ok(r.ext.report) ? kPass : kVerifyFail;
}

const char* status_word(int status) {
  return status == kPass ? "PASS" : status == kPrecondition ? "PRECONDITION" : "FAIL";
}

void write_outputs(const output& o, const options& opt, const std::string& cmd, int status) {
  if (opt.out.empty()) return;
  std::filesystem::create_directories(opt.out);
  const std::filesystem::path dir(opt.out);
  std::ofstream(dir / (cmd + "_report.txt")) << o.text.str() << "status " << status_word(status) << "\n";
  json d = o.data;
  d["status"] = status;
  std::ofstream(dir / (cmd + "_report.json")) << d.dump(2) << "\n";
  if (o.data.contains("construction")) std::ofstream(dir / "construction.json") << o.data["construction"].dump(2) << "\n";
  if (opt.csv && !o.csv.empty()) std::ofstream(dir / (cmd + "_probes.csv")) << o.csv;
}

void error_record(const char* kind, const std::string& msg) {
  json e;
  e["error"] = kind;
  e["message"] = msg;
  std::cerr << e.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Whitney jets of class C^{m,omega}: construction and verification"};
  app.require_subcommand(1, 1);
  options opt;
  auto add_common = [&](CLI::App* s) {
    s->add_option("--problem", opt.problem, "input file")->required();
    s->add_option("--out", opt.out, "output directory");
    s->add_option("--probes", opt.probes, "probe cloud size")->check(CLI::PositiveNumber);
    s->add_option("--seed", opt.seed, "probe cloud seed");
    s->add_option("--plateau", opt.plateau, "bump plateau half-width")->check(CLI::Range(0.0, 1.0));
    s->add_flag("--strict", opt.strict, "reject unknown fields");
    s->add_flag("--csv", opt.csv, "write probe values as CSV");
  };
  struct entry {
    const char* name;
    const char* help;
    int (*fn)(const options&, output&);
  };
  const entry cmds[] = {
      {"extend", "extend one problem and verify", cmd_extend},
      {"family", "extend a batch and compare norms", cmd_family},
      {"verify", "recheck a logged construction", cmd_verify},
      {"gromov", "certify the derivative inequalities", cmd_gromov},
      {"whitney", "Whitney constants of a jet", cmd_whitney},
      {"cm", "C^m pipeline with a constructed modulus", cmd_cm},
      {"shvartsman", "metric and Lipschitz norm of a jet field", cmd_shvartsman},
      {"glue", "annulus gluing pipeline", cmd_glue},
  };
  for (const auto& c : cmds) add_common(app.add_subcommand(c.name, c.help));
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kSchema;
  }
  for (const auto& c : cmds) {
    if (!app.got_subcommand(c.name)) continue;
    output o;
    int status;
    try {
      status = c.fn(opt, o);
    } catch (const schema_error& e) {
      error_record("schema", e.what());
      return kSchema;
    } catch (const json::exception& e) {
      error_record("schema", e.what());
      return kSchema;
    } catch (const precondition_error& e) {
      error_record("precondition", e.what());
      return kPrecondition;
    } catch (const input_error& e) {
      error_record("precondition", e.what());
      return kPrecondition;
    } catch (const domain_error& e) {
      error_record("precondition", e.what());
      return kPrecondition;
    }
    std::cout << o.text.str() << "status " << status_word(status) << "\n";
    write_outputs(o, opt, c.name, status);
    return status;
  }
  return kSchema;
}
