#pragma once

// JSON file formats for semigroups, measures, pseudometrics, window
// functions and ambit witnesses. Elements and rationals are written as
// strings in canonical form; object keys keep canonical element order so
// that writing a parsed canonical document reproduces it byte for byte.

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ambit/ambit.hpp"
#include "ambit/measure.hpp"
#include "ambit/rational.hpp"
#include "ambit/semigroup.hpp"
#include "ambit/uniform.hpp"

namespace ambit::io {

using Json = nlohmann::ordered_json;

namespace detail {

[[noreturn]] inline void fail(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::ParseError, where + ": " + what);
}

inline const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing field '") + key + "'");
  return *it;
}

inline std::string key_path(const std::string& where, const std::string& key) {
  return where.empty() ? key : where + "." + key;
}

}  // namespace detail

inline Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return Json::parse(buffer.str());
  } catch (const nlohmann::json::parse_error& e) {
    // byte offset -> line number
    const std::string text = buffer.str();
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<long>(upto), '\n');
    throw Error(ErrorKind::ParseError,
                path.string() + ":" + std::to_string(line) + ": " + e.what());
  }
}

inline void write_json_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::ParseError, "cannot write " + path.string());
  out << j.dump(2) << '\n';
}

// --- rationals and elements -------------------------------------------------

inline Json rational_to_json(const Rational& r) { return format_rational(r); }

inline Rational rational_from_json(const Json& j, const std::string& where) {
  try {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
  } catch (const Error& e) {
    detail::fail(where, e.what());
  }
  detail::fail(where, "expected a rational string \"p/q\"");
}

inline Json element_to_json(const Semigroup& s, const Element& x) { return s.format(x); }

inline Element element_from_json(const Semigroup& s, const Json& j, const std::string& where) {
  try {
    if (j.is_string()) return s.parse(j.get<std::string>());
    if ((j.is_number_unsigned() || (j.is_number_integer() && j.get<std::int64_t>() >= 0)) &&
        s.kind() != SemigroupKind::FreeWords && s.kind() != SemigroupKind::CayleyTable) {
      Element e = Element::index(j.get<std::uint64_t>());
      s.require(e);
      return e;
    }
  } catch (const Error& e) {
    detail::fail(where, e.what());
  }
  detail::fail(where, "expected an element of " + s.describe());
}

inline Json window_to_json(const Semigroup& s, const Window& w) {
  Json out = Json::array();
  for (const auto& x : w) out.push_back(element_to_json(s, x));
  return out;
}

inline Window window_from_json(const Semigroup& s, const Json& j, const std::string& where) {
  if (!j.is_array()) detail::fail(where, "expected an array of elements");
  std::vector<Element> elems;
  for (std::size_t i = 0; i < j.size(); ++i)
    elems.push_back(element_from_json(s, j[i], where + "[" + std::to_string(i) + "]"));
  try {
    return Window(std::move(elems));
  } catch (const Error& e) {
    detail::fail(where, e.what());
  }
}

// --- semigroups -------------------------------------------------------------

inline Json semigroup_to_json(const Semigroup& s) {
  Json j;
  auto size_field = [&](Json& out) {
    if (auto n = s.size()) out["size"] = *n;
    else out["size"] = "countable";
  };
  switch (s.kind()) {
    case SemigroupKind::CayleyTable:
      j["kind"] = "cayley";
      j["elements"] = s.labels();
      j["table"] = s.table();
      break;
    case SemigroupKind::FreeWords:
      j["kind"] = "free";
      j["generators"] = s.generators();
      break;
    case SemigroupKind::NatPlus: j["kind"] = "nat-plus"; break;
    case SemigroupKind::NatTimes: j["kind"] = "nat-times"; break;
    case SemigroupKind::LeftZero:
      j["kind"] = "left-zero";
      size_field(j);
      break;
    case SemigroupKind::RightZero:
      j["kind"] = "right-zero";
      size_field(j);
      break;
  }
  return j;
}

inline Semigroup semigroup_from_json(const Json& j, const std::string& where = "semigroup") {
  const std::string kind = [&] {
    const Json& k = detail::field(j, "kind", where);
    if (!k.is_string()) detail::fail(where + ".kind", "expected a string");
    return k.get<std::string>();
  }();
  auto carrier_size = [&]() -> std::optional<std::size_t> {
    auto it = j.find("size");
    if (it == j.end() || (it->is_string() && *it == "countable")) return std::nullopt;
    if (!it->is_number_unsigned() || it->get<std::size_t>() == 0)
      detail::fail(where + ".size", "expected a positive integer or \"countable\"");
    return it->get<std::size_t>();
  };
  try {
    if (kind == "cayley") {
      const Json& rows = detail::field(j, "table", where);
      if (!rows.is_array()) detail::fail(where + ".table", "expected an array of rows");
      CayleyData table;
      for (const auto& row : rows) {
        if (!row.is_array()) detail::fail(where + ".table", "expected an array of rows");
        std::vector<std::size_t> r;
        for (const auto& v : row) {
          if (!v.is_number_unsigned()) detail::fail(where + ".table", "entries must be indices");
          r.push_back(v.get<std::size_t>());
        }
        table.push_back(std::move(r));
      }
      std::vector<std::string> labels;
      if (auto it = j.find("elements"); it != j.end()) {
        if (!it->is_array()) detail::fail(where + ".elements", "expected an array of labels");
        for (const auto& l : *it) {
          if (!l.is_string()) detail::fail(where + ".elements", "labels must be strings");
          labels.push_back(l.get<std::string>());
        }
      }
      return Semigroup::cayley(std::move(labels), std::move(table));
    }
    if (kind == "free") {
      const Json& g = detail::field(j, "generators", where);
      if (!g.is_array()) detail::fail(where + ".generators", "expected an array of symbols");
      std::vector<std::string> gens;
      for (const auto& x : g) {
        if (!x.is_string()) detail::fail(where + ".generators", "symbols must be strings");
        gens.push_back(x.get<std::string>());
      }
      return Semigroup::free_words(std::move(gens));
    }
    if (kind == "nat-plus") return Semigroup::nat_plus();
    if (kind == "nat-times") return Semigroup::nat_times();
    if (kind == "left-zero") return Semigroup::left_zero(carrier_size());
    if (kind == "right-zero") return Semigroup::right_zero(carrier_size());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError) throw;
    // construction-time invariant failures (e.g. non-associative tables)
    // keep their kind; the message gains the document location
    throw Error(e.kind(), where + ": " + e.message());
  }
  detail::fail(where + ".kind", "unknown semigroup kind '" + kind + "'");
}

/// free2, nat-plus, nat-times, left-zero[:n], right-zero[:n], cyclic:n.
inline std::optional<Semigroup> builtin_semigroup(const std::string& name) {
  auto sized = [&](const std::string& prefix) -> std::optional<std::optional<std::size_t>> {
    if (name == prefix) return std::optional<std::size_t>{};
    if (name.rfind(prefix + ":", 0) != 0) return std::nullopt;
    const std::string arg = name.substr(prefix.size() + 1);
    if (arg == "countable") return std::optional<std::size_t>{};
    if (arg.empty() || arg.find_first_not_of("0123456789") != std::string::npos || arg.size() > 9)
      throw Error(ErrorKind::ParseError, "bad size in builtin '" + name + "'");
    return std::optional<std::size_t>{std::stoul(arg)};
  };
  if (name == "free2") return Semigroup::free_words({"a", "b"});
  if (name == "nat-plus") return Semigroup::nat_plus();
  if (name == "nat-times") return Semigroup::nat_times();
  if (auto n = sized("left-zero")) return Semigroup::left_zero(*n);
  if (auto n = sized("right-zero")) return Semigroup::right_zero(*n);
  if (auto n = sized("cyclic"); n && *n) return Semigroup::cyclic_group(**n);
  return std::nullopt;
}

/// A builtin name or a path to a semigroup document.
inline Semigroup load_semigroup(const std::string& spec,
                                const std::filesystem::path& base_dir = {}) {
  if (auto s = builtin_semigroup(spec)) return *s;
  std::filesystem::path path(spec);
  if (path.is_relative() && !base_dir.empty() && std::filesystem::exists(base_dir / path))
    path = base_dir / path;
  return semigroup_from_json(read_json_file(path), path.string());
}

// --- measures ---------------------------------------------------------------

struct MeasureDocument {
  Json semigroup_ref;  // builtin name or inline document
  MolecularMeasure measure;
  std::vector<std::string> warnings;
};

/// Builtin names stay names; file references become inline documents so
/// outputs do not depend on the directory they are written to.
inline Json semigroup_reference(const Semigroup& s, const Json& original) {
  if (original.is_string() && builtin_semigroup(original.get<std::string>()) == s) return original;
  return semigroup_to_json(s);
}

inline MeasureDocument measure_from_json(const Json& j, const std::filesystem::path& base_dir = {},
                                         const std::string& where = "measure") {
  const Json& ref = detail::field(j, "semigroup", where);
  Semigroup s = [&] {
    if (ref.is_string()) return load_semigroup(ref.get<std::string>(), base_dir);
    return semigroup_from_json(ref, where + ".semigroup");
  }();
  const Json& terms = detail::field(j, "terms", where);
  if (!terms.is_array()) detail::fail(where + ".terms", "expected an array of [elem, coeff]");
  std::vector<MolecularMeasure::Term> parsed;
  std::vector<std::string> warnings;
  std::set<Element> seen;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string at = where + ".terms[" + std::to_string(i) + "]";
    const Json& t = terms[i];
    if (!t.is_array() || t.size() != 2) detail::fail(at, "expected [elem, coeff]");
    Element x = element_from_json(s, t[0], at + "[0]");
    if (!seen.insert(x).second)
      warnings.push_back(at + ": duplicate support element " + s.format(x) + " coalesced");
    parsed.emplace_back(std::move(x), rational_from_json(t[1], at + "[1]"));
  }
  Json canonical_ref = semigroup_reference(s, ref);
  return MeasureDocument{std::move(canonical_ref),
                         MolecularMeasure(share(std::move(s)), std::move(parsed)),
                         std::move(warnings)};
}

inline Json measure_to_json(const MolecularMeasure& mu, const Json& semigroup_ref) {
  Json j;
  j["semigroup"] = semigroup_ref;
  Json terms = Json::array();
  for (const auto& [x, c] : mu.terms())
    terms.push_back(Json::array({element_to_json(mu.semigroup(), x), rational_to_json(c)}));
  j["terms"] = std::move(terms);
  return j;
}

inline MeasureDocument load_measure(const std::filesystem::path& path) {
  return measure_from_json(read_json_file(path), path.parent_path(), path.string());
}

// --- pseudometrics and window functions --------------------------------------

inline Pseudometric pseudometric_from_json(const Semigroup& s, const Json& j,
                                           const std::string& where = "metric") {
  const Json& kind = detail::field(j, "kind", where);
  if (kind == "discrete") return Pseudometric::discrete();
  if (kind != "table") detail::fail(where + ".kind", "expected \"discrete\" or \"table\"");
  Window w = window_from_json(s, detail::field(j, "window", where), where + ".window");
  const Json& rows = detail::field(j, "matrix", where);
  if (!rows.is_array()) throw Error(ErrorKind::MalformedMatrix, where + ".matrix: expected rows");
  DistanceMatrix m;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].is_array())
      throw Error(ErrorKind::MalformedMatrix, where + ".matrix: expected rows");
    std::vector<Rational> row;
    for (std::size_t k = 0; k < rows[i].size(); ++k)
      row.push_back(rational_from_json(
          rows[i][k], where + ".matrix[" + std::to_string(i) + "][" + std::to_string(k) + "]"));
    m.push_back(std::move(row));
  }
  return Pseudometric::table(std::move(w), std::move(m));
}

inline Json pseudometric_to_json(const Semigroup& s, const Pseudometric& d) {
  Json j;
  if (d.is_discrete()) {
    j["kind"] = "discrete";
    return j;
  }
  j["kind"] = "table";
  j["window"] = window_to_json(s, d.window());
  Json rows = Json::array();
  for (const auto& r : d.matrix()) {
    Json row = Json::array();
    for (const auto& v : r) row.push_back(rational_to_json(v));
    rows.push_back(std::move(row));
  }
  j["matrix"] = std::move(rows);
  return j;
}

inline std::map<Element, Rational> values_from_json(const Semigroup& s, const Json& j,
                                                    const std::string& where) {
  if (!j.is_object()) detail::fail(where, "expected an object of element -> rational");
  std::map<Element, Rational> out;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string at = detail::key_path(where, it.key());
    Element x = element_from_json(s, Json(it.key()), at);
    if (!out.emplace(std::move(x), rational_from_json(it.value(), at)).second)
      detail::fail(at, "duplicate element");
  }
  return out;
}

/// Keys in the order of `order`, then any remaining keys canonically.
inline Json values_to_json(const Semigroup& s, const std::map<Element, Rational>& values,
                           const Window& order) {
  Json j = Json::object();
  for (const auto& x : order)
    if (auto it = values.find(x); it != values.end())
      j[s.format(x)] = rational_to_json(it->second);
  for (const auto& [x, v] : values)
    if (!order.contains(x)) j[s.format(x)] = rational_to_json(v);
  return j;
}

inline WindowFunction window_function_from_json(const Semigroup& s, const Json& j,
                                                const std::string& where = "function") {
  auto values = values_from_json(s, detail::field(j, "values", where), where + ".values");
  Window w = [&] {
    if (auto it = j.find("window"); it != j.end())
      return window_from_json(s, *it, where + ".window");
    std::vector<Element> keys;
    for (const auto& [x, v] : values) keys.push_back(x);
    return Window(std::move(keys));
  }();
  std::optional<Rational> def = Rational(0);
  if (auto it = j.find("default"); it != j.end()) {
    if (it->is_null()) def.reset();
    else def = rational_from_json(*it, where + ".default");
  }
  try {
    return WindowFunction(std::move(w), std::move(values), std::move(def));
  } catch (const Error& e) {
    detail::fail(where, e.what());
  }
}

inline Json window_function_to_json(const Semigroup& s, const WindowFunction& f) {
  Json j;
  j["window"] = window_to_json(s, f.window());
  j["values"] = values_to_json(s, f.values(), f.window());
  j["default"] = f.default_value() ? rational_to_json(*f.default_value()) : Json(nullptr);
  return j;
}

// --- witnesses --------------------------------------------------------------

inline Json witness_to_json(const Semigroup& s, const AmbitWitness& w) {
  Json j;
  Json nbs = Json::array();
  for (const auto& nb : w.neighborhoods) {
    Json u;
    u["F"] = window_to_json(s, nb.window());
    u["h"] = values_to_json(s, nb.target().values(), nb.window());
    u["eps"] = rational_to_json(nb.epsilon());
    nbs.push_back(std::move(u));
  }
  j["neighborhoods"] = std::move(nbs);
  Json sel = Json::array();
  for (const auto& x : w.selections) sel.push_back(element_to_json(s, x));
  j["selections"] = std::move(sel);
  Json f;
  f["values"] = values_to_json(s, w.f.values(), w.f.window());
  f["default"] = w.f.default_value() ? rational_to_json(*w.f.default_value()) : Json(nullptr);
  j["f"] = std::move(f);
  return j;
}

/// Reads a witness as stored; it is not re-derived, so verify_ambit sees
/// exactly what the file claims.
inline AmbitWitness witness_from_json(const Semigroup& s, const Json& j,
                                      const std::string& where = "witness") {
  AmbitWitness w{{}, {}, WindowFunction::constant(0)};
  const Json& nbs = detail::field(j, "neighborhoods", where);
  if (!nbs.is_array()) detail::fail(where + ".neighborhoods", "expected an array");
  for (std::size_t i = 0; i < nbs.size(); ++i) {
    const std::string at = where + ".neighborhoods[" + std::to_string(i) + "]";
    Window f = window_from_json(s, detail::field(nbs[i], "F", at), at + ".F");
    auto h = values_from_json(s, detail::field(nbs[i], "h", at), at + ".h");
    Rational eps = rational_from_json(detail::field(nbs[i], "eps", at), at + ".eps");
    for (const auto& [x, v] : h)
      if (!f.contains(x)) detail::fail(at + ".h", "value keyed outside F");
    try {
      w.neighborhoods.emplace_back(std::move(f), std::move(h), std::move(eps));
    } catch (const Error& e) {
      detail::fail(at, e.what());
    }
  }
  const Json& sel = detail::field(j, "selections", where);
  if (!sel.is_array()) detail::fail(where + ".selections", "expected an array");
  for (std::size_t i = 0; i < sel.size(); ++i)
    w.selections.push_back(
        element_from_json(s, sel[i], where + ".selections[" + std::to_string(i) + "]"));
  const Json& fj = detail::field(j, "f", where);
  auto values = values_from_json(s, detail::field(fj, "values", where + ".f"), where + ".f.values");
  std::vector<Element> order;
  for (auto it = fj["values"].begin(); it != fj["values"].end(); ++it)
    order.push_back(s.parse(it.key()));
  std::optional<Rational> def = Rational(0);
  if (auto it = fj.find("default"); it != fj.end()) {
    if (it->is_null()) def.reset();
    else def = rational_from_json(*it, where + ".f.default");
  }
  w.f = WindowFunction(Window(std::move(order)), std::move(values), std::move(def));
  return w;
}

}  // namespace ambit::io
