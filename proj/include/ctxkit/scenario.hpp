#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "ctxkit/rational.hpp"

namespace ctxkit {

/// A measurement scenario: the label set, the maximal context cover and the
/// common outcome set. Contexts store indices into `labels` and keep the
/// order in which the scenario file lists them; outcome tuples are read
/// positionally against that order.
struct MeasurementScenario {
  std::vector<std::string> labels;
  std::vector<std::vector<int>> contexts;
  std::vector<std::string> outcomes;

  int label_index(const std::string& name) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == name) return int(i);
    throw std::invalid_argument("unknown measurement label: " + name);
  }
  int outcome_index(const std::string& name) const {
    for (std::size_t i = 0; i < outcomes.size(); ++i)
      if (outcomes[i] == name) return int(i);
    throw std::invalid_argument("unknown outcome symbol: " + name);
  }

  std::size_t tuple_count(int context) const {
    std::size_t n = 1;
    for (std::size_t k = 0; k < contexts.at(context).size(); ++k) n *= outcomes.size();
    return n;
  }

  /// Mixed-radix rank of an outcome tuple; the first label in the context is
  /// the most significant digit.
  std::size_t tuple_rank(const std::vector<int>& tuple) const {
    std::size_t r = 0;
    for (int o : tuple) r = r * outcomes.size() + std::size_t(o);
    return r;
  }
  std::vector<int> tuple_unrank(int context, std::size_t rank) const {
    std::vector<int> t(contexts.at(context).size());
    for (std::size_t k = t.size(); k-- > 0;) {
      t[k] = int(rank % outcomes.size());
      rank /= outcomes.size();
    }
    return t;
  }
  std::string tuple_name(int context, std::size_t rank) const {
    auto t = tuple_unrank(context, rank);
    std::string s;
    for (std::size_t k = 0; k < t.size(); ++k) {
      if (k) s += ',';
      s += outcomes[std::size_t(t[k])];
    }
    return s;
  }
  std::size_t tuple_rank_of_name(int context, const std::string& name) const;

  /// Structural invariants: every label covered, no context nested in
  /// another, non-empty outcome and context sets. Throws on violation.
  void check() const;
};

/// Per-context probability tables over joint outcomes, the universal input
/// object. `tables[c][r]` is the probability of the rank-r outcome tuple in
/// context c.
template <typename Scalar>
struct EmpiricalModelT {
  MeasurementScenario scenario;
  std::vector<std::vector<Scalar>> tables;
  double tolerance = 1e-9;
};

using EmpiricalModel = EmpiricalModelT<double>;
using ExactEmpiricalModel = EmpiricalModelT<Rational>;

struct Violation {
  int context;  // -1 when not tied to one context
  std::string message;
};

namespace detail {
inline double to_plain(double x) { return x; }
inline double to_plain(const Rational& x) { return x.to_double(); }
}  // namespace detail

/// Violations are data, not errors: an empty report means the model satisfies
/// every invariant within its tolerance.
template <typename Scalar>
std::vector<Violation> validate_model(const EmpiricalModelT<Scalar>& model) {
  std::vector<Violation> out;
  const auto& sc = model.scenario;
  try {
    sc.check();
  } catch (const std::exception& e) {
    out.push_back({-1, e.what()});
    return out;
  }
  if (model.tables.size() != sc.contexts.size()) {
    out.push_back({-1, "expected one table per context, got " +
                           std::to_string(model.tables.size()) + " for " +
                           std::to_string(sc.contexts.size()) + " contexts"});
    return out;
  }
  for (std::size_t c = 0; c < sc.contexts.size(); ++c) {
    if (model.tables[c].size() != sc.tuple_count(int(c))) {
      out.push_back({int(c), "context " + std::to_string(c) + " table has " +
                                 std::to_string(model.tables[c].size()) +
                                 " entries, expected " +
                                 std::to_string(sc.tuple_count(int(c)))});
      continue;
    }
    Scalar sum{0};
    bool range_ok = true;
    for (const Scalar& p : model.tables[c]) {
      sum += p;
      double v = detail::to_plain(p);
      if (v < -model.tolerance || v > 1.0 + model.tolerance) range_ok = false;
    }
    if (!range_ok)
      out.push_back({int(c), "context " + std::to_string(c) +
                                 " has an entry outside [0,1]"});
    if (std::abs(detail::to_plain(sum) - 1.0) > model.tolerance)
      out.push_back({int(c), "context " + std::to_string(c) + " sums to " +
                                 std::to_string(detail::to_plain(sum)) +
                                 ", not 1"});
  }
  return out;
}

/// Restriction e_{C|target}: sums the distribution of context `context` over
/// the labels outside `target`. `target` must be a subset of the context; the
/// result is indexed by tuple rank over `target` in the order given.
template <typename Scalar>
std::vector<Scalar> marginalize(const EmpiricalModelT<Scalar>& model, int context,
                                const std::vector<int>& target) {
  const auto& sc = model.scenario;
  const auto& ctx = sc.contexts.at(std::size_t(context));
  std::vector<int> pos;  // position of each target label inside the context
  for (int lbl : target) {
    auto it = std::find(ctx.begin(), ctx.end(), lbl);
    if (it == ctx.end())
      throw std::invalid_argument("marginalize: label " +
                                  sc.labels.at(std::size_t(lbl)) +
                                  " not in context " + std::to_string(context));
    pos.push_back(int(it - ctx.begin()));
  }
  std::size_t m = 1;
  for (std::size_t k = 0; k < target.size(); ++k) m *= sc.outcomes.size();
  std::vector<Scalar> out(m, Scalar{0});
  const auto& table = model.tables.at(std::size_t(context));
  for (std::size_t r = 0; r < table.size(); ++r) {
    auto tuple = sc.tuple_unrank(context, r);
    std::size_t tr = 0;
    for (int p : pos) tr = tr * sc.outcomes.size() + std::size_t(tuple[std::size_t(p)]);
    out[tr] += table[r];
  }
  return out;
}

/// Maximum over context pairs and shared-label assignments of the marginal
/// mismatch |e_{C|C∩C'} - e_{C'|C∩C'}|. Zero means the model satisfies the
/// compatibility (consistent-connectedness) condition.
template <typename Scalar>
double signalling_deficit(const EmpiricalModelT<Scalar>& model) {
  const auto& sc = model.scenario;
  double worst = 0.0;
  for (std::size_t c1 = 0; c1 < sc.contexts.size(); ++c1) {
    for (std::size_t c2 = c1 + 1; c2 < sc.contexts.size(); ++c2) {
      std::vector<int> shared;
      for (int lbl : sc.contexts[c1])
        if (std::find(sc.contexts[c2].begin(), sc.contexts[c2].end(), lbl) !=
            sc.contexts[c2].end())
          shared.push_back(lbl);
      if (shared.empty()) continue;
      auto m1 = marginalize(model, int(c1), shared);
      auto m2 = marginalize(model, int(c2), shared);
      for (std::size_t r = 0; r < m1.size(); ++r)
        worst = std::max(worst, std::abs(detail::to_plain(m1[r] - m2[r])));
    }
  }
  return worst;
}

/// Support table of a model: the tuple ranks with probability above the
/// threshold, per context.
struct PossibilisticModel {
  MeasurementScenario scenario;
  std::vector<std::set<std::size_t>> supports;
};

template <typename Scalar>
PossibilisticModel to_possibilistic(const EmpiricalModelT<Scalar>& model,
                                    double threshold = 0.0) {
  if (threshold < 0) throw std::invalid_argument("to_possibilistic: threshold < 0");
  PossibilisticModel out;
  out.scenario = model.scenario;
  out.supports.resize(model.tables.size());
  for (std::size_t c = 0; c < model.tables.size(); ++c) {
    for (std::size_t r = 0; r < model.tables[c].size(); ++r)
      if (detail::to_plain(model.tables[c][r]) > threshold) out.supports[c].insert(r);
    if (out.supports[c].empty())
      throw std::runtime_error("to_possibilistic: context " + std::to_string(c) +
                               " has empty support at threshold " +
                               std::to_string(threshold));
  }
  return out;
}

/// JSON scenario/model exchange format. Top-level keys: "labels",
/// "outcomes", "contexts", "tables"; table keys are decimal context indices,
/// tuple keys comma-joined outcome symbols. Unknown keys are rejected.
EmpiricalModel load_model_json(const std::string& path);
EmpiricalModel parse_model_json(const std::string& text);
std::string model_to_json(const EmpiricalModel& model);

/// Exact-mode view of a double model: entries converted to the nearest small
/// rational (denominator <= 2^20), for hand-entered tables.
ExactEmpiricalModel to_exact(const EmpiricalModel& model);
EmpiricalModel to_double(const ExactEmpiricalModel& model);

}  // namespace ctxkit
