#include "ctx/model_io.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace ctx {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const char* where) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key()))
      throw DocumentError(std::string("unknown field '") + it.key() + "' in " +
                          where);
}

std::vector<std::string> string_list(const json& j, const char* what) {
  if (!j.is_array()) throw DocumentError(std::string(what) + " must be an array");
  std::vector<std::string> out;
  for (const auto& v : j) {
    if (!v.is_string())
      throw DocumentError(std::string(what) + " must contain strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

Semiring parse_semiring(const std::string& s) {
  if (s == "boolean") return Semiring::Boolean;
  if (s == "nonneg") return Semiring::NonNegRational;
  if (s == "signed") return Semiring::SignedRational;
  throw DocumentError("unknown semiring '" + s + "'");
}

std::vector<std::string> split_key(const std::string& key) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : key) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

Document read_document(std::istream& in, bool strict) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw DocumentError(std::string("JSON parse error: ") + e.what());
  }
  if (!doc.is_object()) throw DocumentError("document must be a JSON object");
  if (strict)
    reject_unknown(doc,
                   {"format", "measurements", "outcomes", "contexts",
                    "semiring", "tables", "metadata"},
                   "document");
  if (!doc.contains("format") || !doc["format"].is_string())
    throw DocumentError("missing mandatory 'format' field");
  if (doc["format"].get<std::string>() != kDocumentFormat)
    throw DocumentError("unsupported format '" +
                        doc["format"].get<std::string>() + "', expected '" +
                        kDocumentFormat + "'");
  for (const char* field : {"measurements", "outcomes", "contexts"})
    if (!doc.contains(field))
      throw DocumentError(std::string("missing '") + field + "' field");

  const auto measurements = string_list(doc["measurements"], "measurements");
  const auto outcomes = string_list(doc["outcomes"], "outcomes");
  if (!doc["contexts"].is_array())
    throw DocumentError("'contexts' must be an array");
  std::vector<std::vector<std::string>> contexts;
  for (const auto& c : doc["contexts"])
    contexts.push_back(string_list(c, "context"));

  Document out;
  try {
    out.scenario = Scenario::make(measurements, outcomes, contexts);
  } catch (const std::invalid_argument& e) {
    throw DocumentError(e.what());
  }

  const bool has_model = doc.contains("semiring") || doc.contains("tables");
  if (!has_model) return out;
  if (!doc.contains("semiring") || !doc.contains("tables"))
    throw DocumentError("model documents need both 'semiring' and 'tables'");
  if (!doc["semiring"].is_string())
    throw DocumentError("'semiring' must be a string");
  const Semiring semiring = parse_semiring(doc["semiring"].get<std::string>());
  if (!doc["tables"].is_array())
    throw DocumentError("'tables' must be an array");

  const Scenario& sc = *out.scenario;
  std::vector<std::optional<std::vector<Rational>>> weights(sc.context_count());

  for (const auto& entry : doc["tables"]) {
    if (!entry.is_object()) throw DocumentError("table entries must be objects");
    if (strict) reject_unknown(entry, {"context", "weights"}, "table entry");
    if (!entry.contains("context") || !entry.contains("weights"))
      throw DocumentError("table entries need 'context' and 'weights'");
    const auto labels = string_list(entry["context"], "table context");

    // locate the cover element (set equality), remember the given order
    std::vector<int> given;
    for (const auto& label : labels) {
      const int m = sc.measurement_index(label);
      if (m < 0) throw DocumentError("table context uses unknown label " + label);
      given.push_back(m);
    }
    std::vector<int> sorted = given;
    std::sort(sorted.begin(), sorted.end());
    std::size_t context_idx = sc.context_count();
    for (std::size_t c = 0; c < sc.context_count(); ++c)
      if (sc.cover()[c] == sorted) {
        context_idx = c;
        break;
      }
    if (context_idx == sc.context_count())
      throw DocumentError("table context is not a cover element");
    if (weights[context_idx])
      throw DocumentError("duplicate table for one context");

    std::vector<Rational> w(sc.section_count(sorted), Rational(0));
    if (!entry["weights"].is_object())
      throw DocumentError("'weights' must be an object");
    for (auto it = entry["weights"].begin(); it != entry["weights"].end(); ++it) {
      const auto parts = split_key(it.key());
      if (parts.size() != given.size())
        throw DocumentError("weight key '" + it.key() +
                            "' does not match the context length");
      // outcomes arrive in the *given* measurement order
      std::vector<int> outs(sorted.size());
      for (std::size_t i = 0; i < parts.size(); ++i) {
        const int o = sc.outcome_index(parts[i]);
        if (o < 0)
          throw DocumentError("weight key '" + it.key() +
                              "' uses unknown outcome " + parts[i]);
        const auto pos = std::find(sorted.begin(), sorted.end(), given[i]);
        outs[pos - sorted.begin()] = o;
      }
      if (!it.value().is_string())
        throw DocumentError("weights must be \"p/q\" strings");
      Rational r;
      try {
        r = parse_rational(it.value().get<std::string>());
      } catch (const std::invalid_argument& e) {
        throw DocumentError(e.what());
      }
      w[sc.section_index(sorted, outs)] = std::move(r);
    }
    weights[context_idx] = std::move(w);
  }

  std::vector<Distribution> tables;
  for (std::size_t c = 0; c < sc.context_count(); ++c) {
    if (!weights[c]) throw DocumentError("missing table for a cover context");
    try {
      tables.push_back(Distribution::make_raw(semiring, sc.cover()[c],
                                              sc.outcome_count(),
                                              std::move(*weights[c])));
    } catch (const std::invalid_argument& e) {
      throw DocumentError(e.what());
    }
  }
  // documents may legitimately carry signalling or unnormalized families
  out.model = EmpiricalModel::make_raw(out.scenario, std::move(tables));
  return out;
}

Document read_document_text(const std::string& text, bool strict) {
  std::istringstream in(text);
  return read_document(in, strict);
}

Document read_document_file(const std::string& path, bool strict) {
  std::ifstream in(path);
  if (!in) throw DocumentError("cannot open " + path);
  return read_document(in, strict);
}

namespace {

json scenario_json(const Scenario& sc) {
  json doc;
  doc["format"] = kDocumentFormat;
  doc["measurements"] = sc.measurements();
  doc["outcomes"] = sc.outcomes();
  json contexts = json::array();
  for (const auto& c : sc.cover()) {
    json ctx = json::array();
    for (int m : c) ctx.push_back(sc.measurements()[m]);
    contexts.push_back(std::move(ctx));
  }
  doc["contexts"] = std::move(contexts);
  return doc;
}

}  // namespace

std::string write_scenario(const Scenario& scenario) {
  return scenario_json(scenario).dump(2) + "\n";
}

std::string write_model(const EmpiricalModel& model) {
  const Scenario& sc = model.scenario();
  json doc = scenario_json(sc);
  doc["semiring"] = to_string(model.semiring());
  json tables = json::array();
  for (std::size_t c = 0; c < sc.context_count(); ++c) {
    json entry;
    json ctx = json::array();
    for (int m : sc.cover()[c]) ctx.push_back(sc.measurements()[m]);
    entry["context"] = std::move(ctx);
    json w = json::object();
    const auto& table = model.table(c);
    for (std::uint64_t s = 0; s < table.size(); ++s) {
      const Rational v = table.weight(s);
      if (v == 0) continue;
      const auto outs = sc.section_outcomes(sc.cover()[c], s);
      std::string key;
      for (std::size_t i = 0; i < outs.size(); ++i) {
        if (i) key += ',';
        key += sc.outcomes()[outs[i]];
      }
      w[key] = to_string(v);
    }
    entry["weights"] = std::move(w);
    tables.push_back(std::move(entry));
  }
  doc["tables"] = std::move(tables);
  return doc.dump(2) + "\n";
}

}  // namespace ctx
