#pragma once

// Special-fiber model documents: parsing, normalization to orbit level,
// the specialization matrix and model validation.
//
// Document layout (JSON, strict: unknown keys are rejected):
//
//   {
//     "name": "...",
//     "hypotheses": { "reduced_components_smooth": bool, "pic_unramified_descent": bool },
//     "orbits": [ { "name": "A", "multiplicity": 1, "size": 2 }, ... ],
//     "generators": [ { "name": "c1", "host": "A", "degrees": { "A": -2, "R": 1 } }, ... ],
//     "geometric": {                                   // optional
//       "components": ["A1", "A2", ...],
//       "frobenius": ["A2", "A1", ...],                // image list
//       "orbit_of": { "A1": "A", "A2": "A", ... },
//       "degrees": { "c1": { "A1": -2, "A2": -2 }, ... }
//     },
//     "notes": "...",                                  // optional
//     "expected": { "b0_rank": 0, "b0_torsion": [2], "source": "..." }  // optional
//   }
//
// Missing degree entries mean 0. A generator without a "degrees" object takes
// its orbit-level degrees from the geometric section when one is present.

#include <cstddef>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "chowfiber/galois.hpp"
#include "chowfiber/int_matrix.hpp"

namespace chowfiber {

using Json = nlohmann::ordered_json;

/// Malformed document text (or unreadable file).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Well-formed JSON that violates the model schema.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Hypotheses {
  bool reduced_components_smooth = false;
  bool pic_unramified_descent = false;

  friend bool operator==(const Hypotheses&, const Hypotheses&) = default;
};

struct ExpectedResult {
  std::optional<std::size_t> b0_rank;
  std::vector<Integer> b0_torsion;
  std::string source;

  friend bool operator==(const ExpectedResult&, const ExpectedResult&) = default;
};

/// A chosen generator of Pic Y for some component Y, with its degree against
/// each orbit (aligned with FiberModel::orbits).
struct PicGenerator {
  std::string name;
  std::string host;
  IntVector degrees;

  friend bool operator==(const PicGenerator&, const PicGenerator&) = default;
};

struct GeometricSection {
  PermutationAction action;
  std::vector<std::string> orbit_of;  // aligned with action.ground_set()
  // generator name -> component name -> degree (missing components mean 0)
  std::map<std::string, std::map<std::string, Integer>> degrees;

  friend bool operator==(const GeometricSection&, const GeometricSection&) = default;
};

struct FiberModel {
  std::string name;
  Hypotheses hypotheses;
  std::vector<ComponentOrbit> orbits;
  std::vector<PicGenerator> generators;
  std::optional<GeometricSection> geometric;
  std::string notes;
  std::optional<ExpectedResult> expected;

  std::optional<std::size_t> orbit_index(std::string_view orbit_name) const {
    for (std::size_t i = 0; i < orbits.size(); ++i)
      if (orbits[i].name == orbit_name) return i;
    return std::nullopt;
  }

  friend bool operator==(const FiberModel&, const FiberModel&) = default;
};

enum class Severity { error, warning };

inline const char* severity_label(Severity s) { return s == Severity::error ? "ERROR" : "WARNING"; }

namespace diagnostic_code {
inline constexpr const char* xi_orthogonality = "xi-orthogonality";
inline constexpr const char* orbit_constancy = "orbit-constancy";
inline constexpr const char* no_generators = "no-generators";
inline constexpr const char* multiplicity_gcd = "multiplicity-gcd";
}  // namespace diagnostic_code

struct Diagnostic {
  Severity severity = Severity::error;
  std::string code;
  std::string subject;
  std::string message;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

/// "SEVERITY code subject: message"
inline std::string format_diagnostic(const Diagnostic& d) {
  return std::string(severity_label(d.severity)) + " " + d.code + " " + d.subject + ": " + d.message;
}

inline bool has_errors(const std::vector<Diagnostic>& ds) {
  for (const auto& d : ds)
    if (d.severity == Severity::error) return true;
  return false;
}

namespace detail {

inline void check_keys(const Json& obj, std::initializer_list<std::string_view> allowed,
                       const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) throw SchemaError(where + ": unknown key \"" + key + "\"");
  }
}

inline const Json& require(const Json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(where + ": missing key \"" + key + "\"");
  return *it;
}

inline const Json& require_object(const Json& j, const std::string& where) {
  if (!j.is_object()) throw SchemaError(where + ": expected an object");
  return j;
}

inline const Json& require_array(const Json& j, const std::string& where) {
  if (!j.is_array()) throw SchemaError(where + ": expected an array");
  return j;
}

inline std::string require_string(const Json& j, const std::string& where) {
  if (!j.is_string()) throw SchemaError(where + ": expected a string");
  return j.get<std::string>();
}

inline bool require_bool(const Json& j, const std::string& where) {
  if (!j.is_boolean()) throw SchemaError(where + ": expected a boolean");
  return j.get<bool>();
}

// Accepts JSON integers, and base-10 strings for values beyond 64 bits.
inline Integer require_integer(const Json& j, const std::string& where) {
  if (j.is_number_unsigned()) return Integer(std::to_string(j.get<std::uint64_t>()));
  if (j.is_number_integer()) return Integer(std::to_string(j.get<std::int64_t>()));
  if (j.is_string()) {
    Integer v;
    std::string s = j.get<std::string>();
    if (!s.empty() && parse_integer(s, v)) return v;
  }
  throw SchemaError(where + ": expected an integer");
}

inline Json integer_to_json(const Integer& v) {
  if (v.fits_slong_p()) return Json(static_cast<std::int64_t>(v.get_si()));
  return Json(v.get_str());
}

inline std::size_t require_positive_size(const Json& j, const std::string& where) {
  Integer v = require_integer(j, where);
  if (v < 1) throw SchemaError(where + ": must be >= 1");
  if (!v.fits_ulong_p()) throw SchemaError(where + ": too large");
  return v.get_ui();
}

inline std::map<std::string, Integer> parse_degree_map(const Json& j, const std::string& where) {
  require_object(j, where);
  std::map<std::string, Integer> out;
  for (const auto& [key, value] : j.items()) out.emplace(key, require_integer(value, where + "." + key));
  return out;
}

inline GeometricSection parse_geometric(const Json& g, const std::vector<ComponentOrbit>& orbit_list,
                                        const std::set<std::string>& generator_names) {
  const std::string where = "geometric";
  require_object(g, where);
  check_keys(g, {"components", "frobenius", "orbit_of", "degrees"}, where);

  std::vector<std::string> components, images;
  for (const auto& c : require_array(require(g, "components", where), where + ".components"))
    components.push_back(require_string(c, where + ".components[]"));
  for (const auto& c : require_array(require(g, "frobenius", where), where + ".frobenius"))
    images.push_back(require_string(c, where + ".frobenius[]"));

  std::optional<PermutationAction> action;
  try {
    action.emplace(components, images);
  } catch (const std::invalid_argument& e) {
    throw SchemaError(where + ": " + e.what());
  }

  const Json& orbit_of = require_object(require(g, "orbit_of", where), where + ".orbit_of");
  std::vector<std::string> assignment(components.size());
  std::vector<bool> assigned(components.size(), false);
  for (const auto& [comp, orbit] : orbit_of.items()) {
    if (!action->contains(comp))
      throw SchemaError(where + ".orbit_of: unknown component \"" + comp + "\"");
    std::string orbit_name = require_string(orbit, where + ".orbit_of." + comp);
    bool known = false;
    for (const auto& y : orbit_list) known = known || y.name == orbit_name;
    if (!known) throw SchemaError(where + ".orbit_of." + comp + ": unknown orbit \"" + orbit_name + "\"");
    assignment[action->index_of(comp)] = orbit_name;
    assigned[action->index_of(comp)] = true;
  }
  for (std::size_t i = 0; i < components.size(); ++i)
    if (!assigned[i])
      throw SchemaError(where + ".orbit_of: component \"" + components[i] + "\" has no orbit");

  // Each Frobenius cycle must be exactly one declared orbit.
  std::map<std::string, std::size_t> cycles_per_orbit;
  for (const auto& cycle : orbits(*action)) {
    const std::string& orbit_name = assignment[action->index_of(cycle.front())];
    for (const auto& c : cycle)
      if (assignment[action->index_of(c)] != orbit_name)
        throw SchemaError(where + ": Frobenius cycle through \"" + cycle.front() +
                          "\" meets orbits \"" + orbit_name + "\" and \"" +
                          assignment[action->index_of(c)] + "\"");
    ++cycles_per_orbit[orbit_name];
    for (const auto& y : orbit_list)
      if (y.name == orbit_name && y.size != cycle.size())
        throw SchemaError(where + ": orbit \"" + orbit_name + "\" declares size " +
                          std::to_string(y.size) + " but its Frobenius cycle has " +
                          std::to_string(cycle.size()) + " components");
  }
  for (const auto& y : orbit_list) {
    auto n = cycles_per_orbit[y.name];
    if (n != 1)
      throw SchemaError(where + ": orbit \"" + y.name + "\" corresponds to " + std::to_string(n) +
                        " Frobenius cycles, expected 1");
  }

  GeometricSection section{std::move(*action), std::move(assignment), {}};
  if (auto it = g.find("degrees"); it != g.end()) {
    require_object(*it, where + ".degrees");
    for (const auto& [gen, per_component] : it->items()) {
      if (!generator_names.contains(gen))
        throw SchemaError(where + ".degrees: unknown generator \"" + gen + "\"");
      auto degrees = parse_degree_map(per_component, where + ".degrees." + gen);
      for (const auto& [comp, value] : degrees)
        if (!section.action.contains(comp))
          throw SchemaError(where + ".degrees." + gen + ": unknown component \"" + comp + "\"");
      section.degrees.emplace(gen, std::move(degrees));
    }
  }
  return section;
}

inline Integer geometric_degree(const GeometricSection& g, const std::string& generator,
                                const std::string& component) {
  auto it = g.degrees.find(generator);
  if (it == g.degrees.end()) return 0;
  auto jt = it->second.find(component);
  return jt == it->second.end() ? Integer(0) : jt->second;
}

}  // namespace detail

/// Parses and normalizes a model document. Throws ParseError for malformed
/// JSON and SchemaError for schema violations.
inline FiberModel parse_model(std::string_view document) {
  Json doc;
  try {
    doc = Json::parse(document.begin(), document.end());
  } catch (const Json::parse_error& e) {
    throw ParseError(e.what());
  }
  using namespace detail;
  require_object(doc, "document");
  check_keys(doc, {"name", "hypotheses", "orbits", "generators", "geometric", "notes", "expected"},
             "document");

  FiberModel m;
  m.name = require_string(require(doc, "name", "document"), "name");

  if (auto it = doc.find("hypotheses"); it != doc.end()) {
    require_object(*it, "hypotheses");
    check_keys(*it, {"reduced_components_smooth", "pic_unramified_descent"}, "hypotheses");
    if (auto h = it->find("reduced_components_smooth"); h != it->end())
      m.hypotheses.reduced_components_smooth = require_bool(*h, "hypotheses.reduced_components_smooth");
    if (auto h = it->find("pic_unramified_descent"); h != it->end())
      m.hypotheses.pic_unramified_descent = require_bool(*h, "hypotheses.pic_unramified_descent");
  }

  const Json& orbit_array = require_array(require(doc, "orbits", "document"), "orbits");
  if (orbit_array.empty()) throw SchemaError("orbits: at least one orbit is required");
  std::set<std::string> orbit_names;
  for (std::size_t i = 0; i < orbit_array.size(); ++i) {
    std::string where = "orbits[" + std::to_string(i) + "]";
    const Json& o = require_object(orbit_array[i], where);
    check_keys(o, {"name", "multiplicity", "size"}, where);
    ComponentOrbit y;
    y.name = require_string(require(o, "name", where), where + ".name");
    if (!orbit_names.insert(y.name).second) throw SchemaError(where + ": duplicate orbit \"" + y.name + "\"");
    Integer mult = require_integer(require(o, "multiplicity", where), where + ".multiplicity");
    if (mult < 1) throw SchemaError(where + ".multiplicity: must be >= 1");
    y.multiplicity = mult;
    y.size = require_positive_size(require(o, "size", where), where + ".size");
    m.orbits.push_back(std::move(y));
  }

  struct PendingGenerator {
    PicGenerator gen;
    bool has_degrees;
  };
  std::vector<PendingGenerator> pending;
  std::set<std::string> generator_names;
  if (auto it = doc.find("generators"); it != doc.end()) {
    require_array(*it, "generators");
    for (std::size_t i = 0; i < it->size(); ++i) {
      std::string where = "generators[" + std::to_string(i) + "]";
      const Json& g = require_object((*it)[i], where);
      check_keys(g, {"name", "host", "degrees"}, where);
      PicGenerator gen;
      gen.name = require_string(require(g, "name", where), where + ".name");
      if (!generator_names.insert(gen.name).second)
        throw SchemaError(where + ": duplicate generator \"" + gen.name + "\"");
      gen.host = require_string(require(g, "host", where), where + ".host");
      if (!orbit_names.contains(gen.host))
        throw SchemaError(where + ".host: unknown orbit \"" + gen.host + "\"");
      gen.degrees.assign(m.orbits.size(), 0);
      bool has_degrees = g.contains("degrees");
      if (has_degrees) {
        for (auto& [orbit, value] : parse_degree_map(g["degrees"], where + ".degrees")) {
          auto idx = m.orbit_index(orbit);
          if (!idx) throw SchemaError(where + ".degrees: unknown orbit \"" + orbit + "\"");
          gen.degrees[*idx] = value;
        }
      }
      pending.push_back({std::move(gen), has_degrees});
    }
  }

  if (auto it = doc.find("geometric"); it != doc.end()) {
    m.geometric = parse_geometric(*it, m.orbits, generator_names);
    const auto& g = *m.geometric;
    for (const auto& cycle : orbits(g.action)) {
      auto idx = m.orbit_index(g.orbit_of[g.action.index_of(cycle.front())]);
      m.orbits[*idx].members = cycle;
    }
    for (auto& p : pending) {
      if (p.has_degrees || !g.degrees.contains(p.gen.name)) continue;
      // Orbit-level value read off the first member; validate() reports any
      // variation within the orbit.
      for (std::size_t y = 0; y < m.orbits.size(); ++y)
        p.gen.degrees[y] = geometric_degree(g, p.gen.name, m.orbits[y].members.front());
    }
  }
  for (auto& p : pending) m.generators.push_back(std::move(p.gen));

  if (auto it = doc.find("notes"); it != doc.end()) m.notes = require_string(*it, "notes");

  if (auto it = doc.find("expected"); it != doc.end()) {
    require_object(*it, "expected");
    check_keys(*it, {"b0_rank", "b0_torsion", "source"}, "expected");
    ExpectedResult e;
    if (auto r = it->find("b0_rank"); r != it->end()) {
      Integer v = require_integer(*r, "expected.b0_rank");
      if (v < 0 || !v.fits_ulong_p()) throw SchemaError("expected.b0_rank: must be a nonnegative integer");
      e.b0_rank = v.get_ui();
    }
    if (auto t = it->find("b0_torsion"); t != it->end())
      for (const auto& f : require_array(*t, "expected.b0_torsion"))
        e.b0_torsion.push_back(require_integer(f, "expected.b0_torsion[]"));
    if (auto s = it->find("source"); s != it->end()) e.source = require_string(*s, "expected.source");
    m.expected = std::move(e);
  }
  return m;
}

inline FiberModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str());
}

/// Normalized document for a model; parse_model(serialize) reproduces it.
inline Json model_to_json(const FiberModel& m) {
  using detail::integer_to_json;
  Json doc = Json::object();
  doc["name"] = m.name;
  doc["hypotheses"] = {{"reduced_components_smooth", m.hypotheses.reduced_components_smooth},
                       {"pic_unramified_descent", m.hypotheses.pic_unramified_descent}};
  Json orbit_array = Json::array();
  for (const auto& y : m.orbits)
    orbit_array.push_back({{"name", y.name},
                           {"multiplicity", integer_to_json(y.multiplicity)},
                           {"size", y.size}});
  doc["orbits"] = std::move(orbit_array);
  Json gens = Json::array();
  for (const auto& g : m.generators) {
    Json degrees = Json::object();
    for (std::size_t y = 0; y < m.orbits.size(); ++y) degrees[m.orbits[y].name] = integer_to_json(g.degrees[y]);
    gens.push_back({{"name", g.name}, {"host", g.host}, {"degrees", std::move(degrees)}});
  }
  doc["generators"] = std::move(gens);
  if (m.geometric) {
    const auto& g = *m.geometric;
    Json orbit_of = Json::object();
    for (std::size_t i = 0; i < g.action.size(); ++i) orbit_of[g.action.ground_set()[i]] = g.orbit_of[i];
    Json degrees = Json::object();
    for (const auto& gen : m.generators) {
      auto it = g.degrees.find(gen.name);
      if (it == g.degrees.end()) continue;
      Json per = Json::object();
      for (const auto& c : g.action.ground_set())
        if (auto jt = it->second.find(c); jt != it->second.end()) per[c] = integer_to_json(jt->second);
      degrees[gen.name] = std::move(per);
    }
    doc["geometric"] = {{"components", g.action.ground_set()},
                        {"frobenius", g.action.frobenius()},
                        {"orbit_of", std::move(orbit_of)},
                        {"degrees", std::move(degrees)}};
  }
  if (!m.notes.empty()) doc["notes"] = m.notes;
  if (m.expected) {
    Json e = Json::object();
    if (m.expected->b0_rank) e["b0_rank"] = *m.expected->b0_rank;
    Json torsion = Json::array();
    for (const auto& f : m.expected->b0_torsion) torsion.push_back(integer_to_json(f));
    e["b0_torsion"] = std::move(torsion);
    e["source"] = m.expected->source;
    doc["expected"] = std::move(e);
  }
  return doc;
}

inline std::string serialize_model(const FiberModel& m) { return model_to_json(m).dump(2) + "\n"; }

/// Rows are orbits and columns are generators, both in model order; entry
/// (Y, g) is the degree of g against Y.
inline IntMatrix build_specialization_matrix(const FiberModel& m) {
  IntMatrix a(m.orbits.size(), m.generators.size());
  for (std::size_t j = 0; j < m.generators.size(); ++j)
    for (std::size_t i = 0; i < m.orbits.size(); ++i) a(i, j) = m.generators[j].degrees[i];
  return a;
}

/// Model checks, in a fixed order: fiber-class orthogonality per generator,
/// orbit constancy of geometric degrees, then the two advisory warnings.
inline std::vector<Diagnostic> validate(const FiberModel& m) {
  std::vector<Diagnostic> out;
  const WeightVector w = xi_weights(m.orbits);

  for (const auto& g : m.generators) {
    Integer sum = dot(w.weights, g.degrees);
    if (sum != 0)
      out.push_back({Severity::error, diagnostic_code::xi_orthogonality, g.name,
                     "weighted degree sum is " + sum.get_str() + ", expected 0"});
  }

  if (m.geometric) {
    const auto& geo = *m.geometric;
    for (const auto& g : m.generators) {
      if (!geo.degrees.contains(g.name)) continue;
      for (std::size_t y = 0; y < m.orbits.size(); ++y) {
        const auto& members = m.orbits[y].members;
        std::string listing;
        bool varies = false;
        Integer first = detail::geometric_degree(geo, g.name, members.front());
        for (const auto& c : members) {
          Integer d = detail::geometric_degree(geo, g.name, c);
          varies = varies || d != first;
          listing += (listing.empty() ? "" : ", ") + c + "=" + d.get_str();
        }
        if (varies)
          out.push_back({Severity::error, diagnostic_code::orbit_constancy, g.name,
                         "degrees vary across orbit " + m.orbits[y].name + " (" + listing + ")"});
        else if (first != g.degrees[y])
          out.push_back({Severity::error, diagnostic_code::orbit_constancy, g.name,
                         "orbit " + m.orbits[y].name + ": geometric degree " + first.get_str() +
                             " disagrees with orbit-level degree " + g.degrees[y].get_str()});
      }
    }
  }

  if (m.orbits.size() > 1 && m.generators.empty())
    out.push_back({Severity::warning, diagnostic_code::no_generators, m.name,
                   "model has " + std::to_string(m.orbits.size()) + " orbits and no Picard generators"});

  Integer g = gcd_of(w.weights);
  if (g > 1)
    out.push_back({Severity::warning, diagnostic_code::multiplicity_gcd, m.name,
                   "gcd of orbit weights is " + g.get_str() + "; the degree character has image " +
                       g.get_str() + "Z"});
  return out;
}

}  // namespace chowfiber
