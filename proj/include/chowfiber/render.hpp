#pragma once

// Human-readable and JSON renderings of groups and reports.

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "chowfiber/chow.hpp"
#include "chowfiber/fiber_model.hpp"
#include "chowfiber/lattice.hpp"

namespace chowfiber {

/// "Z^2 ⊕ Z/2 ⊕ Z/4", "Z", or "0".
inline std::string format_group(const FGAbelianGroup& g) {
  std::vector<std::string> parts;
  if (g.rank == 1) parts.emplace_back("Z");
  if (g.rank > 1) parts.push_back("Z^" + std::to_string(g.rank));
  for (const auto& f : g.invariant_factors) parts.push_back("Z/" + f.get_str());
  if (parts.empty()) return "0";
  std::string s = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) s += " ⊕ " + parts[i];
  return s;
}

struct Style {
  bool color = false;

  std::string bold(const std::string& s) const { return color ? "\x1b[1m" + s + "\x1b[0m" : s; }
  std::string severity(Severity sev) const {
    std::string label = severity_label(sev);
    if (!color) return label;
    return (sev == Severity::error ? "\x1b[31m" : "\x1b[33m") + label + "\x1b[0m";
  }
};

inline std::string styled_diagnostic(const Diagnostic& d, const Style& style) {
  return style.severity(d.severity) + " " + d.code + " " + d.subject + ": " + d.message;
}

inline constexpr const char* kUndefinedIndex = "undefined-under-invalid-input";

inline std::string interpretation(const ChowReport& r) {
  if (r.formal_only) return "formal cokernel only; validation failed, no Chow group identification";
  return "B(X) ≅ A_0(X_K) and B(X)_0 ≅ A_0(X_K)_0, conditional on the asserted hypotheses";
}

inline std::string render_text(const ChowReport& r, const Style& style = {}) {
  const std::string b0 = r.b0 ? format_group(*r.b0) : std::string("undefined");
  const std::string index = r.index ? r.index->get_str() : std::string(kUndefinedIndex);

  std::string summary = "B(X) = " + format_group(r.b) + ", B(X)_0 = " + b0 + ", index = " + index;
  if (r.special_case) summary += ", special case: irreducible fiber";
  if (r.formal_only) summary += " [formal cokernel only]";

  std::string out = style.bold(summary) + "\n";
  auto field = [&](const std::string& label, const std::string& value) {
    out += "  " + label + std::string(label.size() < 18 ? 18 - label.size() : 1, ' ') + value + "\n";
  };
  field("model", r.model_name);
  field("B(X)", format_group(r.b));
  field("B(X)_0", b0);
  field("index", index);
  std::string xi;
  for (const auto& v : r.xi_on_generators) xi += (xi.empty() ? "" : " ") + v.get_str();
  field("xi on generators", r.formal_only ? "undefined" : (xi.empty() ? "(none)" : xi));
  field("special case", r.special_case ? special_case_tag(*r.special_case) : "none");
  field("hypotheses", std::string("reduced_components_smooth=") +
                          (r.hypotheses.reduced_components_smooth ? "true" : "false") +
                          " pic_unramified_descent=" + (r.hypotheses.pic_unramified_descent ? "true" : "false"));
  field("interpretation", interpretation(r));
  if (r.expected) {
    std::string e = "B(X)_0 = ";
    FGAbelianGroup g{r.expected->b0_rank.value_or(0), r.expected->b0_torsion};
    e += r.expected->b0_rank ? format_group(g) : "?";
    if (!r.expected->source.empty()) e += " (" + r.expected->source + ")";
    field("expected", e);
  }
  if (r.diagnostics.empty()) {
    field("diagnostics", "none");
  } else {
    out += "  diagnostics:\n";
    for (const auto& d : r.diagnostics) out += "    " + styled_diagnostic(d, style) + "\n";
  }
  return out;
}

inline Json group_to_json(const FGAbelianGroup& g) {
  Json torsion = Json::array();
  for (const auto& f : g.invariant_factors) torsion.push_back(detail::integer_to_json(f));
  return {{"rank", g.rank}, {"torsion", std::move(torsion)}};
}

inline FGAbelianGroup group_from_json(const Json& j) {
  FGAbelianGroup g;
  g.rank = j.at("rank").get<std::size_t>();
  for (const auto& f : j.at("torsion")) g.invariant_factors.push_back(detail::require_integer(f, "torsion"));
  return g;
}

inline Json report_to_json(const ChowReport& r) {
  using detail::integer_to_json;
  Json j = Json::object();
  j["model"] = r.model_name;
  j["b"] = group_to_json(r.b);
  j["b0"] = r.b0 ? group_to_json(*r.b0) : Json(nullptr);
  j["index"] = r.index ? integer_to_json(*r.index) : Json(nullptr);
  Json xi = Json::array();
  for (const auto& v : r.xi_on_generators) xi.push_back(integer_to_json(v));
  j["xi_on_generators"] = std::move(xi);
  j["special_case"] = r.special_case ? Json(special_case_tag(*r.special_case)) : Json(nullptr);
  j["formal_only"] = r.formal_only;
  j["hypotheses"] = {{"reduced_components_smooth", r.hypotheses.reduced_components_smooth},
                     {"pic_unramified_descent", r.hypotheses.pic_unramified_descent}};
  j["interpretation"] = interpretation(r);
  if (r.expected) {
    Json e = Json::object();
    e["b0_rank"] = r.expected->b0_rank ? Json(*r.expected->b0_rank) : Json(nullptr);
    Json t = Json::array();
    for (const auto& f : r.expected->b0_torsion) t.push_back(integer_to_json(f));
    e["b0_torsion"] = std::move(t);
    e["source"] = r.expected->source;
    j["expected"] = std::move(e);
  } else {
    j["expected"] = nullptr;
  }
  Json diags = Json::array();
  for (const auto& d : r.diagnostics)
    diags.push_back({{"severity", d.severity == Severity::error ? "error" : "warning"},
                     {"code", d.code},
                     {"subject", d.subject},
                     {"message", d.message}});
  j["diagnostics"] = std::move(diags);
  return j;
}

/// Inverse of report_to_json (the derived "interpretation" field is ignored).
inline ChowReport report_from_json(const Json& j) {
  ChowReport r;
  r.model_name = j.at("model").get<std::string>();
  r.b = group_from_json(j.at("b"));
  if (!j.at("b0").is_null()) r.b0 = group_from_json(j.at("b0"));
  if (!j.at("index").is_null()) r.index = detail::require_integer(j.at("index"), "index");
  for (const auto& v : j.at("xi_on_generators")) r.xi_on_generators.push_back(detail::require_integer(v, "xi"));
  if (!j.at("special_case").is_null()) {
    if (j.at("special_case").get<std::string>() != "irreducible-fiber")
      throw SchemaError("special_case: unknown tag");
    r.special_case = SpecialCase::irreducible_fiber;
  }
  r.formal_only = j.at("formal_only").get<bool>();
  r.hypotheses.reduced_components_smooth = j.at("hypotheses").at("reduced_components_smooth").get<bool>();
  r.hypotheses.pic_unramified_descent = j.at("hypotheses").at("pic_unramified_descent").get<bool>();
  if (!j.at("expected").is_null()) {
    const Json& e = j.at("expected");
    ExpectedResult ex;
    if (!e.at("b0_rank").is_null()) ex.b0_rank = e.at("b0_rank").get<std::size_t>();
    for (const auto& f : e.at("b0_torsion")) ex.b0_torsion.push_back(detail::require_integer(f, "b0_torsion"));
    ex.source = e.at("source").get<std::string>();
    r.expected = std::move(ex);
  }
  for (const auto& d : j.at("diagnostics"))
    r.diagnostics.push_back({d.at("severity").get<std::string>() == "error" ? Severity::error : Severity::warning,
                             d.at("code").get<std::string>(), d.at("subject").get<std::string>(),
                             d.at("message").get<std::string>()});
  return r;
}

}  // namespace chowfiber
