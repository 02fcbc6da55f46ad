#include "negaffirm/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <set>
#include <unordered_map>

#include "negaffirm/errors.hpp"

namespace negaffirm {

namespace {

std::string fold_label(std::string_view label) {
  std::string out(label);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

double parse_numeric_label(const std::string& label) {
  try {
    std::size_t consumed = 0;
    double value = std::stod(label, &consumed);
    if (consumed != label.size()) throw std::invalid_argument(label);
    return value;
  } catch (const std::exception&) {
    throw SchemaError("label is not numeric: \"" + label + "\"");
  }
}

// chi-square(1) survival function.
double chi2_sf(double x) { return std::erfc(std::sqrt(x / 2.0)); }

double binomial_coefficient(std::size_t n, std::size_t k) {
  return std::exp(std::lgamma(static_cast<double>(n) + 1.0) -
                  std::lgamma(static_cast<double>(k) + 1.0) -
                  std::lgamma(static_cast<double>(n - k) + 1.0));
}

struct GroupOutcome {
  std::map<EditKind, bool> correct_by_kind;
};

std::map<std::string, GroupOutcome> collect_groups(std::span<const PredictionRecord> records) {
  std::map<std::string, GroupOutcome> groups;
  for (const PredictionRecord& record : records) {
    if (!record.group_id || !record.edit_kind) {
      throw MalformedGroupError("record \"" + record.example_id +
                                "\" lacks group_id or edit_kind");
    }
    GroupOutcome& group = groups[*record.group_id];
    auto [it, inserted] = group.correct_by_kind.emplace(*record.edit_kind, record.correct());
    if (!inserted) {
      throw MalformedGroupError("group \"" + *record.group_id + "\" has duplicate " +
                                to_string(*record.edit_kind) + " records");
    }
  }
  return groups;
}

}  // namespace

bool PredictionRecord::correct() const { return fold_label(predicted) == fold_label(gold); }

const char* to_string(ConsistencyScope scope) {
  switch (scope) {
    case ConsistencyScope::All:
      return "all";
    case ConsistencyScope::Par:
      return "par";
    case ConsistencyScope::Sco:
      return "sco";
    case ConsistencyScope::Aff:
      return "aff";
  }
  return "all";
}

double accuracy(std::span<const PredictionRecord> records) {
  if (records.empty()) {
    throw EmptyInputError("accuracy over empty record set");
  }
  std::size_t correct = 0;
  for (const PredictionRecord& record : records) {
    if (record.correct()) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(records.size());
}

ConsistencyResult group_consistency(std::span<const PredictionRecord> records,
                                    ConsistencyScope scope) {
  std::vector<EditKind> required{EditKind::Original};
  switch (scope) {
    case ConsistencyScope::All:
      required.push_back(EditKind::Paraphrase);
      required.push_back(EditKind::Scope);
      required.push_back(EditKind::Affirmative);
      break;
    case ConsistencyScope::Par:
      required.push_back(EditKind::Paraphrase);
      break;
    case ConsistencyScope::Sco:
      required.push_back(EditKind::Scope);
      break;
    case ConsistencyScope::Aff:
      required.push_back(EditKind::Affirmative);
      break;
  }

  ConsistencyResult result;
  for (const auto& [group_id, group] : collect_groups(records)) {
    bool complete = true;
    bool consistent = true;
    for (EditKind kind : required) {
      auto it = group.correct_by_kind.find(kind);
      if (it == group.correct_by_kind.end()) {
        complete = false;
        break;
      }
      consistent = consistent && it->second;
    }
    if (!complete) {
      ++result.incomplete_groups;
      continue;
    }
    ++result.eligible_groups;
    if (consistent) ++result.consistent_groups;
  }
  result.value = result.eligible_groups == 0
                     ? 0.0
                     : static_cast<double>(result.consistent_groups) /
                           static_cast<double>(result.eligible_groups);
  return result;
}

double macro_f1(std::span<const PredictionRecord> records) {
  if (records.empty()) {
    throw EmptyInputError("macro_f1 over empty record set");
  }
  std::set<std::string> classes;
  for (const PredictionRecord& record : records) {
    classes.insert(fold_label(record.gold));
  }
  double sum = 0.0;
  for (const std::string& cls : classes) {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
    for (const PredictionRecord& record : records) {
      bool gold_is = fold_label(record.gold) == cls;
      bool pred_is = fold_label(record.predicted) == cls;
      if (gold_is && pred_is) ++tp;
      if (!gold_is && pred_is) ++fp;
      if (gold_is && !pred_is) ++fn;
    }
    double denom = static_cast<double>(2 * tp + fp + fn);
    sum += denom == 0.0 ? 0.0 : 2.0 * static_cast<double>(tp) / denom;
  }
  return sum / static_cast<double>(classes.size());
}

double pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw AlignmentError("correlation inputs differ in length");
  }
  if (xs.size() < 2) {
    throw EmptyInputError("correlation needs at least 2 points");
  }
  const double n = static_cast<double>(xs.size());
  double mean_x = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  double mean_y = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double dx = xs[i] - mean_x;
    double dy = ys[i] - mean_y;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw UndefinedCorrelationError("correlation of a constant vector is undefined");
  }
  return sxy / std::sqrt(sxx * syy);
}

std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&values](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size(), 0.0);
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    double mean_rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) {
      ranks[order[k]] = mean_rank;
    }
    i = j + 1;
  }
  return ranks;
}

double spearman(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw AlignmentError("correlation inputs differ in length");
  }
  std::vector<double> rx = average_ranks(xs);
  std::vector<double> ry = average_ranks(ys);
  return pearson(rx, ry);
}

McNemarResult mcnemar(std::span<const PredictionRecord> run_a,
                      std::span<const PredictionRecord> run_b) {
  std::unordered_map<std::string, bool> correct_b;
  correct_b.reserve(run_b.size());
  for (const PredictionRecord& record : run_b) {
    correct_b[record.example_id] = record.correct();
  }
  if (run_a.size() != run_b.size()) {
    throw AlignmentError("runs cover different numbers of examples");
  }
  McNemarResult result;
  for (const PredictionRecord& record : run_a) {
    auto it = correct_b.find(record.example_id);
    if (it == correct_b.end()) {
      throw AlignmentError("example \"" + record.example_id + "\" missing from second run");
    }
    bool a = record.correct();
    bool b = it->second;
    if (a && !b) ++result.b;
    if (!a && b) ++result.c;
  }

  const std::size_t n = result.b + result.c;
  if (n < 25) {
    result.method = McNemarMethod::Exact;
    result.statistic = std::nullopt;
    if (n == 0) {
      result.p_value = 1.0;  // no discordant pairs, no evidence either way
    } else {
      double tail = 0.0;
      std::size_t k_max = std::min(result.b, result.c);
      for (std::size_t k = 0; k <= k_max; ++k) {
        tail += binomial_coefficient(n, k);
      }
      result.p_value = std::min(1.0, 2.0 * tail * std::pow(0.5, static_cast<double>(n)));
    }
  } else {
    result.method = McNemarMethod::ChiSquare;
    double diff = std::abs(static_cast<double>(result.b) - static_cast<double>(result.c));
    double adjusted = std::max(0.0, diff - 1.0);
    double statistic = adjusted * adjusted / static_cast<double>(n);
    result.statistic = statistic;
    result.p_value = chi2_sf(statistic);
  }
  return result;
}

EvalReport stratified_report(NluTask task, std::span<const PredictionRecord> records) {
  EvalReport report;
  report.n = records.size();
  if (!records.empty()) {
    report.accuracy = accuracy(records);
  }

  auto headline = [task](const std::vector<PredictionRecord>& subset) -> StratumMetrics {
    StratumMetrics metrics;
    metrics.n = subset.size();
    if (subset.empty()) return metrics;
    try {
      if (task == NluTask::StsB) {
        std::vector<double> gold;
        std::vector<double> pred;
        for (const PredictionRecord& record : subset) {
          gold.push_back(parse_numeric_label(record.gold));
          pred.push_back(parse_numeric_label(record.predicted));
        }
        metrics.value = pearson(pred, gold);
        metrics.spearman_value = spearman(pred, gold);
      } else {
        metrics.value = macro_f1(subset);
      }
    } catch (const UndefinedCorrelationError&) {
      metrics.value = std::nullopt;
      metrics.spearman_value = std::nullopt;
    } catch (const EmptyInputError&) {
      metrics.value = std::nullopt;
    }
    return metrics;
  };

  auto filter = [&records](auto&& keep) {
    std::vector<PredictionRecord> out;
    for (const PredictionRecord& record : records) {
      if (keep(record)) out.push_back(record);
    }
    return out;
  };

  std::vector<PredictionRecord> all(records.begin(), records.end());
  report.per_stratum["overall"] = headline(all);
  report.per_stratum["without_negation"] = headline(
      filter([](const PredictionRecord& r) { return r.has_negation && !*r.has_negation; }));
  report.per_stratum["with_negation"] = headline(
      filter([](const PredictionRecord& r) { return r.has_negation && *r.has_negation; }));
  report.per_stratum["important"] = headline(filter([](const PredictionRecord& r) {
    return r.importance && *r.importance == NegationImportance::Important;
  }));
  report.per_stratum["unimportant"] = headline(filter([](const PredictionRecord& r) {
    return r.importance && *r.importance == NegationImportance::Unimportant;
  }));
  return report;
}

}  // namespace negaffirm
