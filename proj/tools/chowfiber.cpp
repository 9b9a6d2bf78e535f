// chowfiber: command-line front end.
//
//   chowfiber validate <model>
//   chowfiber compute  <model> [--strict|--permissive] [--json]
//   chowfiber snf      <matrix> [--check]
//   chowfiber oracle   <matrix>
//
// Exit status: 0 success, 1 validation errors (strict mode), 2 parse/schema
// or input errors, 3 internal invariant violation.

#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "chowfiber/chowfiber.hpp"

namespace {

using namespace chowfiber;

enum Exit : int { kOk = 0, kValidation = 1, kInput = 2, kInternal = 3 };

Style output_style() {
  const char* env = std::getenv("CHOWFIBER_COLOR");
  std::string mode = env ? env : "auto";
  if (mode == "always") return {true};
  if (mode == "never") return {false};
  return {::isatty(STDOUT_FILENO) == 1};
}

int fail(int code, const std::string& message) {
  std::cerr << "chowfiber: " << message << "\n";
  return code;
}

IntMatrix load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MatrixParseError(0, "cannot open \"" + path + "\"");
  return read_matrix_text(in);
}

std::string join(const IntVector& xs) {
  if (xs.empty()) return "(none)";
  std::string s;
  for (const auto& x : xs) s += (s.empty() ? "" : " ") + x.get_str();
  return s;
}

int cmd_validate(const std::string& path) {
  FiberModel m;
  try {
    m = load_model(path);
  } catch (const ParseError& e) {
    return fail(kInput, std::string("parse error: ") + e.what());
  } catch (const SchemaError& e) {
    return fail(kInput, std::string("schema error: ") + e.what());
  }
  const Style style = output_style();
  auto diags = validate(m);
  for (const auto& d : diags) std::cout << styled_diagnostic(d, style) << "\n";
  return has_errors(diags) ? kValidation : kOk;
}

int cmd_compute(const std::string& path, bool permissive, bool json) {
  FiberModel m;
  try {
    m = load_model(path);
  } catch (const ParseError& e) {
    return fail(kInput, std::string("parse error: ") + e.what());
  } catch (const SchemaError& e) {
    return fail(kInput, std::string("schema error: ") + e.what());
  }
  const Style style = output_style();
  try {
    ChowReport r = report(m, permissive ? Mode::permissive : Mode::strict);
    if (json)
      std::cout << report_to_json(r).dump(2) << "\n";
    else
      std::cout << render_text(r, style);
    return kOk;
  } catch (const InvalidModel& e) {
    if (json) {
      Json diags = Json::array();
      for (const auto& d : e.diagnostics())
        diags.push_back({{"severity", d.severity == Severity::error ? "error" : "warning"},
                         {"code", d.code},
                         {"subject", d.subject},
                         {"message", d.message}});
      Json out = {{"model", m.name}, {"error", "invalid-model"}, {"diagnostics", std::move(diags)}};
      std::cout << out.dump(2) << "\n";
    } else {
      for (const auto& d : e.diagnostics()) std::cout << styled_diagnostic(d, style) << "\n";
    }
    return fail(kValidation, "model failed validation in strict mode (use --permissive for the formal cokernel)");
  } catch (const InvariantViolation& e) {
    return fail(kInternal, std::string("internal invariant violated: ") + e.what());
  }
}

int cmd_snf(const std::string& path, bool check) {
  IntMatrix a;
  try {
    a = load_matrix(path);
  } catch (const MatrixParseError& e) {
    return fail(kInput, std::string("matrix parse error: ") + e.what());
  }
  SmithDecomposition d = snf(a);
  if (!(d.u * a * d.v == d.s) || !d.s.is_diagonal())
    return fail(kInternal, "Smith decomposition self-check failed");
  IntVector factors = d.diagonal();
  factors.resize(d.rank());
  std::cout << "rank " << d.rank() << "; invariant factors: " << join(factors) << "\n";
  if (!check) return kOk;

  std::vector<Integer> divisors;
  try {
    divisors = determinantal_divisors(a);
  } catch (const OracleSizeLimit& e) {
    std::cerr << "chowfiber: check skipped: " << e.what() << "\n";
    return kOk;
  }
  if (invariant_factors_from_divisors(divisors) != d.diagonal() ||
      abs(determinant(d.u)) != 1 || abs(determinant(d.v)) != 1)
    return fail(kInternal, "Smith normal form disagrees with determinantal divisors");
  std::cout << "check: agrees with determinantal divisors\n";
  return kOk;
}

int cmd_oracle(const std::string& path) {
  IntMatrix a;
  try {
    a = load_matrix(path);
  } catch (const MatrixParseError& e) {
    return fail(kInput, std::string("matrix parse error: ") + e.what());
  }
  try {
    std::cout << "determinantal divisors: " << join(determinantal_divisors(a)) << "\n";
  } catch (const OracleSizeLimit& e) {
    return fail(kInput, e.what());
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chow groups of 0-cycles from special-fiber intersection data"};
  app.require_subcommand(1);

  std::string path;
  bool strict = false, permissive = false, json = false, check = false;

  auto* validate_cmd = app.add_subcommand("validate", "Check a fiber model and print diagnostics");
  validate_cmd->add_option("model", path, "Model document (JSON)")->required();

  auto* compute_cmd = app.add_subcommand("compute", "Compute B(X), B(X)_0 and the index");
  compute_cmd->add_option("model", path, "Model document (JSON)")->required();
  auto* strict_flag = compute_cmd->add_flag("--strict", strict, "Refuse models with validation errors (default)");
  compute_cmd->add_flag("--permissive", permissive, "Report the formal cokernel despite validation errors")
      ->excludes(strict_flag);
  compute_cmd->add_flag("--json", json, "Emit the report as JSON");

  auto* snf_cmd = app.add_subcommand("snf", "Smith normal form of an integer matrix");
  snf_cmd->add_option("matrix", path, "Matrix text file")->required();
  snf_cmd->add_flag("--check", check, "Cross-check against determinantal divisors");

  auto* oracle_cmd = app.add_subcommand("oracle", "Determinantal divisors by minor enumeration");
  oracle_cmd->add_option("matrix", path, "Matrix text file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  if (validate_cmd->parsed()) return cmd_validate(path);
  if (compute_cmd->parsed()) return cmd_compute(path, permissive, json);
  if (snf_cmd->parsed()) return cmd_snf(path, check);
  return cmd_oracle(path);
}
