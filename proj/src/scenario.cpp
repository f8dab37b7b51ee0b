#include "ctxkit/scenario.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ctxkit {

std::size_t MeasurementScenario::tuple_rank_of_name(int context,
                                                    const std::string& name) const {
  std::vector<int> tuple;
  std::stringstream ss(name);
  std::string part;
  while (std::getline(ss, part, ',')) tuple.push_back(outcome_index(part));
  if (tuple.size() != contexts.at(std::size_t(context)).size())
    throw std::invalid_argument("tuple '" + name + "' has wrong length for context " +
                                std::to_string(context));
  return tuple_rank(tuple);
}

void MeasurementScenario::check() const {
  if (outcomes.empty()) throw std::invalid_argument("scenario has no outcomes");
  if (contexts.empty()) throw std::invalid_argument("scenario has no contexts");
  std::vector<bool> seen(labels.size(), false);
  for (const auto& ctx : contexts) {
    if (ctx.empty()) throw std::invalid_argument("scenario has an empty context");
    for (int lbl : ctx) {
      if (lbl < 0 || std::size_t(lbl) >= labels.size())
        throw std::invalid_argument("context references label index out of range");
      seen[std::size_t(lbl)] = true;
    }
  }
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (!seen[i])
      throw std::invalid_argument("label " + labels[i] + " appears in no context");
  for (std::size_t a = 0; a < contexts.size(); ++a) {
    for (std::size_t b = 0; b < contexts.size(); ++b) {
      if (a == b) continue;
      bool subset = true;
      for (int lbl : contexts[a])
        if (std::find(contexts[b].begin(), contexts[b].end(), lbl) ==
            contexts[b].end()) {
          subset = false;
          break;
        }
      if (subset)
        throw std::invalid_argument("context " + std::to_string(a) +
                                    " is contained in context " + std::to_string(b) +
                                    "; the cover must be an antichain");
    }
  }
}

namespace {

using nlohmann::json;

EmpiricalModel from_json(const json& j) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    if (k != "labels" && k != "outcomes" && k != "contexts" && k != "tables")
      throw std::invalid_argument("unknown key in model file: " + k);
  }
  EmpiricalModel m;
  m.scenario.labels = j.at("labels").get<std::vector<std::string>>();
  m.scenario.outcomes = j.at("outcomes").get<std::vector<std::string>>();
  for (const auto& ctx : j.at("contexts")) {
    std::vector<int> c;
    for (const auto& name : ctx)
      c.push_back(m.scenario.label_index(name.get<std::string>()));
    m.scenario.contexts.push_back(std::move(c));
  }
  m.scenario.check();
  m.tables.assign(m.scenario.contexts.size(), {});
  const auto& tables = j.at("tables");
  for (auto it = tables.begin(); it != tables.end(); ++it) {
    std::size_t c = std::stoul(it.key());
    if (c >= m.scenario.contexts.size())
      throw std::invalid_argument("table key " + it.key() +
                                  " is not a valid context index");
    std::vector<double> table(m.scenario.tuple_count(int(c)), 0.0);
    for (auto jt = it.value().begin(); jt != it.value().end(); ++jt)
      table[m.scenario.tuple_rank_of_name(int(c), jt.key())] =
          jt.value().get<double>();
    m.tables[c] = std::move(table);
  }
  for (std::size_t c = 0; c < m.tables.size(); ++c)
    if (m.tables[c].empty())
      throw std::invalid_argument("missing table for context " + std::to_string(c));
  return m;
}

}  // namespace

EmpiricalModel parse_model_json(const std::string& text) {
  return from_json(json::parse(text));
}

EmpiricalModel load_model_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  return from_json(j);
}

std::string model_to_json(const EmpiricalModel& model) {
  json j;
  j["labels"] = model.scenario.labels;
  j["outcomes"] = model.scenario.outcomes;
  json ctxs = json::array();
  for (const auto& ctx : model.scenario.contexts) {
    json c = json::array();
    for (int lbl : ctx) c.push_back(model.scenario.labels[std::size_t(lbl)]);
    ctxs.push_back(c);
  }
  j["contexts"] = ctxs;
  json tables = json::object();
  for (std::size_t c = 0; c < model.tables.size(); ++c) {
    json t = json::object();
    for (std::size_t r = 0; r < model.tables[c].size(); ++r)
      t[model.scenario.tuple_name(int(c), r)] = model.tables[c][r];
    tables[std::to_string(c)] = t;
  }
  j["tables"] = tables;
  return j.dump(2);
}

ExactEmpiricalModel to_exact(const EmpiricalModel& model) {
  ExactEmpiricalModel out;
  out.scenario = model.scenario;
  out.tolerance = model.tolerance;
  out.tables.reserve(model.tables.size());
  for (const auto& table : model.tables) {
    std::vector<Rational> t;
    t.reserve(table.size());
    for (double v : table) t.push_back(Rational::from_double(v));
    out.tables.push_back(std::move(t));
  }
  return out;
}

EmpiricalModel to_double(const ExactEmpiricalModel& model) {
  EmpiricalModel out;
  out.scenario = model.scenario;
  out.tolerance = model.tolerance;
  out.tables.reserve(model.tables.size());
  for (const auto& table : model.tables) {
    std::vector<double> t;
    t.reserve(table.size());
    for (const Rational& v : table) t.push_back(v.to_double());
    out.tables.push_back(std::move(t));
  }
  return out;
}

}  // namespace ctxkit
