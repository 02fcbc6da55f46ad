#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "negaffirm/corpus.hpp"

namespace negaffirm {

// One model prediction joined with its gold label and stratification keys.
struct PredictionRecord {
  std::string example_id;
  std::optional<std::string> group_id;
  std::optional<EditKind> edit_kind;
  std::string predicted;
  std::string gold;
  std::optional<bool> has_negation;
  std::optional<NegationImportance> importance;

  bool correct() const;
};

enum class ConsistencyScope { All, Par, Sco, Aff };

const char* to_string(ConsistencyScope scope);

struct ConsistencyResult {
  double value = 0.0;
  std::size_t eligible_groups = 0;
  std::size_t consistent_groups = 0;
  std::size_t incomplete_groups = 0;  // diagnostics: excluded from the denominator
};

enum class McNemarMethod { Exact, ChiSquare };

struct McNemarResult {
  std::size_t b = 0;  // A correct, B wrong
  std::size_t c = 0;  // A wrong, B correct
  McNemarMethod method = McNemarMethod::Exact;
  std::optional<double> statistic;
  double p_value = 1.0;
};

struct StratumMetrics {
  std::size_t n = 0;
  std::optional<double> value;           // headline metric; absent when the stratum is empty
  std::optional<double> spearman_value;  // second headline value, regression tasks only
};

struct EvalReport {
  double accuracy = 0.0;
  std::size_t n = 0;
  std::optional<ConsistencyResult> consistency_all;
  std::optional<ConsistencyResult> consistency_par;
  std::optional<ConsistencyResult> consistency_sco;
  std::optional<ConsistencyResult> consistency_aff;
  std::map<std::string, StratumMetrics> per_stratum;
  std::optional<McNemarResult> mcnemar;
};

double accuracy(std::span<const PredictionRecord> records);

// A group counts as consistent when the original and the scoped edits are all
// correct; groups missing a required member are excluded and tallied.
ConsistencyResult group_consistency(std::span<const PredictionRecord> records,
                                    ConsistencyScope scope);

// Unweighted mean of per-class F1 over the classes appearing in gold.
double macro_f1(std::span<const PredictionRecord> records);

double pearson(std::span<const double> xs, std::span<const double> ys);
double spearman(std::span<const double> xs, std::span<const double> ys);

// Exact two-sided binomial below 25 discordant pairs, chi-square with
// continuity correction otherwise.
McNemarResult mcnemar(std::span<const PredictionRecord> run_a,
                      std::span<const PredictionRecord> run_b);

// The task's headline metric overall and per stratum (without negation, with
// negation, important, unimportant). Empty strata report no value.
EvalReport stratified_report(NluTask task, std::span<const PredictionRecord> records);

// Average ranks with ties sharing the mean rank (1-based).
std::vector<double> average_ranks(std::span<const double> values);

}  // namespace negaffirm
