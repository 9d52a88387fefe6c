#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace derangekit {

// Malformed JSON text. Distinct from SchemaError so callers can tell "not
// JSON at all" from "JSON with the wrong shape".
class SyntaxError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Structurally well-formed JSON that does not fit the constraint-file
// schema (missing/mistyped/unknown fields, non-increasing arrays).
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A parsed system that violates a model invariant.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sorted set of distinct integers >= 1; models a set of domain positions
/// (an X_i) or codomain values (a Y_i).
struct Block {
  std::vector<int> elements;

  Block() = default;
  Block(std::initializer_list<int> xs) : elements(xs) {}
  explicit Block(std::vector<int> xs) : elements(std::move(xs)) {}

  std::size_t size() const { return elements.size(); }
  int max() const { return elements.back(); }

  bool well_formed() const {
    if (elements.empty()) return false;
    if (elements.front() < 1) return false;
    for (std::size_t i = 1; i < elements.size(); ++i)
      if (elements[i] <= elements[i - 1]) return false;
    return true;
  }

  bool contains(int v) const {
    return std::binary_search(elements.begin(), elements.end(), v);
  }

  bool operator==(const Block&) const = default;
};

enum class Relation {
  ContainmentForbidden,   // f(X) a subset of Y is forbidden
  ImageEqualityForbidden  // f(X) equal to Y as a set is forbidden
};

enum class FunctionClass { AllFunctions, Injections };

struct Constraint {
  Block domain_block;  // X, positions in [m]
  Block codomain_set;  // Y, values in [n]
  Relation relation = Relation::ContainmentForbidden;

  bool operator==(const Constraint&) const = default;
};

/// A family of forbidden block conditions on functions [m] -> [n].
struct ConstraintSystem {
  int m = 0;
  int n = 1;
  std::vector<Constraint> constraints;
  FunctionClass function_class = FunctionClass::AllFunctions;

  std::size_t k() const { return constraints.size(); }

  bool operator==(const ConstraintSystem&) const = default;
};

struct Violation {
  int constraint_index;  // -1 for system-level violations
  std::string message;
};

struct ValidationResult {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }

  std::string to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < violations.size(); ++i) {
      if (i) os << "; ";
      if (violations[i].constraint_index >= 0)
        os << "constraint " << violations[i].constraint_index << ": ";
      os << violations[i].message;
    }
    return os.str();
  }
};

/// Total invariant check: never throws, reports every violation it finds
/// together with the offending constraint index.
inline ValidationResult validate(const ConstraintSystem& sys) {
  ValidationResult res;
  auto flag = [&](int idx, std::string msg) {
    res.violations.push_back({idx, std::move(msg)});
  };

  if (sys.m < 0) flag(-1, "m must be nonnegative");
  if (sys.n < 1) flag(-1, "n must be at least 1");

  bool uses_containment = false, uses_equality = false;
  for (std::size_t i = 0; i < sys.constraints.size(); ++i) {
    const Constraint& c = sys.constraints[i];
    int idx = static_cast<int>(i);
    if (!c.domain_block.well_formed()) {
      flag(idx, "domain block must be a nonempty strictly increasing list of integers >= 1");
    } else if (c.domain_block.max() > sys.m) {
      flag(idx, "domain block exceeds m");
    }
    if (!c.codomain_set.well_formed()) {
      flag(idx, "codomain set must be a nonempty strictly increasing list of integers >= 1");
    } else if (c.codomain_set.max() > sys.n) {
      flag(idx, "codomain set exceeds n");
    }
    (c.relation == Relation::ContainmentForbidden ? uses_containment
                                                  : uses_equality) = true;
  }

  if (uses_containment && uses_equality)
    flag(-1, "mixed relation kinds in one system");

  // Domain blocks must be pairwise disjoint.
  {
    std::set<int> seen;
    for (std::size_t i = 0; i < sys.constraints.size(); ++i) {
      for (int v : sys.constraints[i].domain_block.elements) {
        if (!seen.insert(v).second) {
          std::ostringstream os;
          os << "domain blocks overlap at " << v;
          flag(static_cast<int>(i), os.str());
        }
      }
    }
  }

  if (sys.function_class == FunctionClass::Injections) {
    if (sys.m > sys.n) flag(-1, "m exceeds n for injections");
    if (uses_equality) {
      std::set<int> seen;
      for (std::size_t i = 0; i < sys.constraints.size(); ++i) {
        const Constraint& c = sys.constraints[i];
        if (c.domain_block.size() != c.codomain_set.size())
          flag(static_cast<int>(i),
               "injection image-equality constraints need |X| = |Y|");
        for (int v : c.codomain_set.elements) {
          if (!seen.insert(v).second) {
            std::ostringstream os;
            os << "codomain sets overlap at " << v;
            flag(static_cast<int>(i), os.str());
          }
        }
      }
    }
  }

  return res;
}

/// Throws ValidationError unless `sys` satisfies every invariant.
inline void require_valid(const ConstraintSystem& sys) {
  ValidationResult res = validate(sys);
  if (!res.ok()) throw ValidationError(res.to_string());
}

namespace detail {

inline std::vector<int> parse_index_array(const nlohmann::json& arr,
                                          const char* name) {
  if (!arr.is_array()) throw SchemaError(std::string(name) + " must be an array");
  std::vector<int> out;
  out.reserve(arr.size());
  for (const auto& v : arr) {
    if (!v.is_number_integer())
      throw SchemaError(std::string(name) + " must contain only integers");
    out.push_back(v.get<int>());
  }
  for (std::size_t i = 1; i < out.size(); ++i)
    if (out[i] <= out[i - 1])
      throw SchemaError(std::string("block not strictly increasing in ") + name);
  return out;
}

inline void reject_unknown_fields(const nlohmann::json& obj,
                                  std::initializer_list<const char*> known) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : known) ok = ok || it.key() == k;
    if (!ok) throw SchemaError("unknown field \"" + it.key() + "\"");
  }
}

}  // namespace detail

/// Parses and validates a constraint file. Throws SyntaxError for
/// malformed JSON, SchemaError for shape problems, ValidationError when
/// the parsed system breaks a model invariant.
inline ConstraintSystem parse_constraint_system(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SyntaxError(e.what());
  }
  if (!doc.is_object()) throw SchemaError("document must be a JSON object");
  detail::reject_unknown_fields(doc, {"m", "n", "class", "constraints"});
  for (const char* field : {"m", "n", "class", "constraints"})
    if (!doc.contains(field))
      throw SchemaError(std::string("missing field \"") + field + "\"");
  if (!doc["m"].is_number_integer()) throw SchemaError("m must be an integer");
  if (!doc["n"].is_number_integer()) throw SchemaError("n must be an integer");
  if (!doc["class"].is_string()) throw SchemaError("class must be a string");
  if (!doc["constraints"].is_array())
    throw SchemaError("constraints must be an array");

  ConstraintSystem sys;
  sys.m = doc["m"].get<int>();
  sys.n = doc["n"].get<int>();
  const std::string cls = doc["class"].get<std::string>();
  if (cls == "functions")
    sys.function_class = FunctionClass::AllFunctions;
  else if (cls == "injections")
    sys.function_class = FunctionClass::Injections;
  else
    throw SchemaError("class must be \"functions\" or \"injections\"");

  for (const auto& jc : doc["constraints"]) {
    if (!jc.is_object()) throw SchemaError("constraint must be an object");
    detail::reject_unknown_fields(jc, {"x", "y", "relation"});
    for (const char* field : {"x", "y", "relation"})
      if (!jc.contains(field))
        throw SchemaError(std::string("constraint missing field \"") + field + "\"");
    Constraint c;
    c.domain_block = Block(detail::parse_index_array(jc["x"], "x"));
    c.codomain_set = Block(detail::parse_index_array(jc["y"], "y"));
    if (!jc["relation"].is_string())
      throw SchemaError("relation must be a string");
    const std::string rel = jc["relation"].get<std::string>();
    if (rel == "containment")
      c.relation = Relation::ContainmentForbidden;
    else if (rel == "equality")
      c.relation = Relation::ImageEqualityForbidden;
    else
      throw SchemaError("relation must be \"containment\" or \"equality\"");
    sys.constraints.push_back(std::move(c));
  }

  require_valid(sys);
  return sys;
}

/// Canonical serialization; parse(serialize(s)) reproduces s exactly.
inline std::string serialize_constraint_system(const ConstraintSystem& sys) {
  nlohmann::json doc;
  doc["m"] = sys.m;
  doc["n"] = sys.n;
  doc["class"] =
      sys.function_class == FunctionClass::AllFunctions ? "functions" : "injections";
  doc["constraints"] = nlohmann::json::array();
  for (const Constraint& c : sys.constraints) {
    nlohmann::json jc;
    jc["x"] = c.domain_block.elements;
    jc["y"] = c.codomain_set.elements;
    jc["relation"] =
        c.relation == Relation::ContainmentForbidden ? "containment" : "equality";
    doc["constraints"].push_back(std::move(jc));
  }
  return doc.dump(2);
}

}  // namespace derangekit
