#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "negaffirm/analysis.hpp"
#include "negaffirm/corpus.hpp"
#include "negaffirm/cue_lexicon.hpp"
#include "negaffirm/errors.hpp"
#include "negaffirm/metrics.hpp"
#include "negaffirm/mock_service.hpp"
#include "negaffirm/pipeline.hpp"
#include "negaffirm/sentence_split.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using namespace negaffirm;

// All output files go through a temp-file-plus-rename so a failed run never
// leaves a partial artifact behind.
void write_atomic(const std::string& path, const std::string& content) {
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw ConfigError("cannot open output file: " + tmp.string());
    }
    out << content;
    if (!out) {
      throw ConfigError("failed writing output file: " + tmp.string());
    }
  }
  fs::rename(tmp, target);
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("cannot open input file: " + path);
  }
  return in;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in = open_input(path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

std::map<std::string, std::string> read_predictions(const std::string& path) {
  std::ifstream in = open_input(path);
  std::map<std::string, std::string> predictions;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::exception& e) {
      throw ParseError(line_no, std::string("invalid JSON: ") + e.what());
    }
    if (!obj.contains("example_id") || !obj.contains("predicted")) {
      throw ParseError(line_no, "prediction needs \"example_id\" and \"predicted\"");
    }
    std::string id = obj["example_id"].is_string() ? obj["example_id"].get<std::string>()
                                                   : obj["example_id"].dump();
    std::string predicted = obj["predicted"].is_string() ? obj["predicted"].get<std::string>()
                                                         : obj["predicted"].dump();
    if (predictions.contains(id)) {
      throw AlignmentError("duplicate prediction for example \"" + id + "\"");
    }
    predictions.emplace(std::move(id), std::move(predicted));
  }
  return predictions;
}

json consistency_json(const ConsistencyResult& result) {
  return {
      {"value", result.value},
      {"eligible_groups", result.eligible_groups},
      {"consistent_groups", result.consistent_groups},
      {"incomplete_groups", result.incomplete_groups},
  };
}

json mcnemar_json(const McNemarResult& result) {
  json obj = {
      {"b", result.b},
      {"c", result.c},
      {"method", result.method == McNemarMethod::Exact ? "exact" : "chi_square"},
      {"p_value", result.p_value},
  };
  if (result.statistic) {
    obj["statistic"] = *result.statistic;
  } else {
    obj["statistic"] = nullptr;
  }
  return obj;
}

json strata_json(const EvalReport& report) {
  json strata = json::object();
  for (const auto& [name, metrics] : report.per_stratum) {
    json cell = {{"n", metrics.n}};
    cell["value"] = metrics.value ? json(*metrics.value) : json(nullptr);
    if (metrics.spearman_value) {
      cell["spearman"] = *metrics.spearman_value;
    }
    strata[name] = std::move(cell);
  }
  return strata;
}

struct CommonOptions {
  std::string lexicon_path;
  std::string in_path;
  std::string out_path;
};

// Joins predictions onto gold records by example id; ids are row indices.
template <typename GetGold>
std::vector<PredictionRecord> join_predictions(std::size_t record_count,
                                               const std::map<std::string, std::string>& preds,
                                               GetGold&& get_gold) {
  if (preds.size() != record_count) {
    throw AlignmentError("predictions cover " + std::to_string(preds.size()) +
                         " examples, gold has " + std::to_string(record_count));
  }
  std::vector<PredictionRecord> records;
  records.reserve(record_count);
  for (std::size_t i = 0; i < record_count; ++i) {
    std::string id = std::to_string(i);
    auto it = preds.find(id);
    if (it == preds.end()) {
      throw AlignmentError("no prediction for example \"" + id + "\"");
    }
    PredictionRecord record = get_gold(i);
    record.example_id = id;
    record.predicted = it->second;
    records.push_back(std::move(record));
  }
  return records;
}

int run_detect(const CommonOptions& options) {
  CueLexicon lexicon = load_lexicon_file(options.lexicon_path);
  json report = json::array();
  std::size_t line_no = 0;
  for (const std::string& line : read_lines(options.in_path)) {
    ++line_no;
    json matches = json::array();
    for (const CueMatch& match : detect_cues(lexicon, line)) {
      matches.push_back({
          {"cue", match.cue.surface},
          {"kind", to_string(match.cue.kind)},
          {"first_token", match.first_token},
          {"last_token", match.last_token},
          {"start", match.start},
          {"end", match.end},
      });
    }
    report.push_back({{"line", line_no}, {"text", line}, {"matches", matches}});
  }
  write_atomic(options.out_path, report.dump(2) + "\n");
  return 0;
}

int run_extract_edited(const CommonOptions& options) {
  std::ifstream in = open_input(options.in_path);
  std::vector<CondaqaRecord> records = parse_condaqa(in);
  std::ostringstream out;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const CondaqaRecord& record = records[i];
    std::string edited = extract_edited_sentence(record.original_passage,
                                                 record.negated_sentence,
                                                 record.edited_passage);
    json obj = {
        {"id", std::to_string(i)},
        {"group_id", record.group_id},
        {"edit_type", to_string(record.edit_kind)},
        {"edited_sentence", edited},
    };
    out << obj.dump() << '\n';
  }
  write_atomic(options.out_path, out.str());
  return 0;
}

int run_gold_affirmative(const CommonOptions& options) {
  CueLexicon lexicon = load_lexicon_file(options.lexicon_path);
  std::ifstream in = open_input(options.in_path);
  std::vector<CondaqaRecord> records = parse_condaqa(in);
  std::ostringstream out;
  std::size_t paraphrase_edits = 0;
  std::size_t gold_count = 0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const CondaqaRecord& record = records[i];
    if (record.edit_kind != EditKind::Paraphrase) continue;
    ++paraphrase_edits;
    std::optional<AffirmativeInterpretation> gold = derive_gold_affirmative(lexicon, record);
    if (gold) ++gold_count;
    json obj = {
        {"id", std::to_string(i)},
        {"group_id", record.group_id},
        {"gold", gold ? json(gold->text) : json(nullptr)},
    };
    out << obj.dump() << '\n';
  }
  write_atomic(options.out_path, out.str());
  json summary = {
      {"paraphrase_edits", paraphrase_edits},
      {"gold_count", gold_count},
      {"gold_rate", paraphrase_edits == 0
                        ? json(nullptr)
                        : json(static_cast<double>(gold_count) /
                               static_cast<double>(paraphrase_edits))},
  };
  std::cout << summary.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Affirmative-interpretation augmentation and evaluation toolkit"};
  app.require_subcommand(1);
  app.set_config("--config")->configurable(false);

  CommonOptions common;
  std::string task = "condaqa";
  std::string strategy_expr = "p+q";
  std::string endpoint_url;
  std::string split = "train";
  std::string compare_path;
  std::string fixtures_path;
  std::string separator = "</s>";
  int num_candidates = 5;
  int parallelism = 1;
  int port = 8080;
  long seed = 0;
  bool analyze_augmented = false;

  auto add_lexicon = [&](CLI::App* cmd, bool required = true) {
    auto* opt = cmd->add_option("--lexicon", common.lexicon_path, "Cue lexicon TSV")
                    ->envname("NEGAFFIRM_LEXICON");
    if (required) opt->required();
  };
  auto add_io = [&](CLI::App* cmd) {
    cmd->add_option("--in", common.in_path, "Input file")->required()->envname("NEGAFFIRM_IN");
    cmd->add_option("--out", common.out_path, "Output file")->required()->envname("NEGAFFIRM_OUT");
  };

  CLI::App* detect = app.add_subcommand("detect", "Locate negation cues, one text per line");
  add_lexicon(detect);
  add_io(detect);

  CLI::App* augment = app.add_subcommand("augment", "Compose augmented input representations");
  add_lexicon(augment);
  add_io(augment);
  augment->add_option("--task", task, "condaqa|commonsenseqa|stsb|qnli|wic|wsc")
      ->required()
      ->envname("NEGAFFIRM_TASK");
  augment->add_option("--strategy", strategy_expr, "e.g. p+q+a_cg")
      ->envname("NEGAFFIRM_STRATEGY");
  augment->add_option("--endpoint", endpoint_url, "Generation service base URL")
      ->envname("NEGAFFIRM_ENDPOINT");
  augment->add_option("--n", num_candidates, "Paraphrase candidates per request")
      ->envname("NEGAFFIRM_N");
  augment->add_option("--separator", separator, "Separator token between parts")
      ->envname("NEGAFFIRM_SEPARATOR");
  augment->add_option("--split", split, "train|test (gold parts are train-only)")
      ->envname("NEGAFFIRM_SPLIT");
  augment->add_option("--parallelism", parallelism, "Concurrent generation requests")
      ->envname("NEGAFFIRM_PARALLELISM");
  augment->add_option("--seed", seed, "Run seed recorded for reproducibility")
      ->envname("NEGAFFIRM_SEED");

  CLI::App* extract = app.add_subcommand("extract-edited", "Extract edited sentences from CondaQA");
  add_io(extract);

  CLI::App* gold = app.add_subcommand("gold-affirmative",
                                      "Derive gold interpretations from paraphrase edits");
  add_lexicon(gold);
  add_io(gold);

  CLI::App* evaluate = app.add_subcommand("evaluate", "Score predictions against gold");
  add_lexicon(evaluate, false);
  add_io(evaluate);
  evaluate->add_option("--task", task, "condaqa|commonsenseqa|stsb|qnli|wic|wsc")->required();
  std::string pred_path;
  evaluate->add_option("--pred", pred_path, "Predictions JSONL {example_id, predicted}")
      ->required();
  evaluate->add_option("--compare", compare_path,
                       "Second predictions JSONL for a McNemar comparison");

  CLI::App* analyze = app.add_subcommand("analyze", "Cue statistics or augmentation coverage");
  add_lexicon(analyze);
  add_io(analyze);
  analyze->add_flag("--augmented", analyze_augmented,
                    "Input is augmented JSONL (coverage report)");

  CLI::App* mock = app.add_subcommand("mock-serve", "Serve the fixture-backed mock generator");
  mock->add_option("--fixtures", fixtures_path, "Fixtures JSON (text -> candidates)")
      ->envname("NEGAFFIRM_FIXTURES");
  mock->add_option("--port", port, "Listen port")->envname("NEGAFFIRM_PORT");

  CLI11_PARSE(app, argc, argv);

  try {
    if (detect->parsed()) {
      return run_detect(common);
    }

    if (augment->parsed()) {
      AugmentOptions options;
      options.strategy = parse_strategy(strategy_expr);
      options.separator = separator;
      options.parallelism = parallelism;
      if (split != "train" && split != "test") {
        throw ConfigError("--split must be train or test");
      }
      for (StrategyPart part : options.strategy.appended_parts()) {
        bool gold_part = part == StrategyPart::A_G || part == StrategyPart::A_G_or_HB ||
                         part == StrategyPart::A_G_or_CG;
        if (gold_part && split == "test") {
          throw ConfigError("gold interpretations are not available at prediction time");
        }
      }
      if (!endpoint_url.empty()) {
        GenerationEndpoint endpoint;
        endpoint.base_url = endpoint_url;
        endpoint.num_candidates = num_candidates;
        options.endpoint = endpoint;
      }
      CueLexicon lexicon = load_lexicon_file(common.lexicon_path);
      std::ifstream in = open_input(common.in_path);
      std::vector<AugmentedRow> rows;
      if (task == "condaqa") {
        rows = augment_condaqa(parse_condaqa(in), lexicon, options);
      } else {
        NluTask nlu_task = nlu_task_from_string(task);
        rows = augment_nlu(parse_nlu(nlu_task, in, lexicon), lexicon, options);
      }
      std::ostringstream out;
      write_augmented_jsonl(out, rows);
      write_atomic(common.out_path, out.str());
      return 0;
    }

    if (extract->parsed()) {
      return run_extract_edited(common);
    }

    if (gold->parsed()) {
      return run_gold_affirmative(common);
    }

    if (evaluate->parsed()) {
      std::map<std::string, std::string> preds = read_predictions(pred_path);
      json report = json::object();
      std::vector<PredictionRecord> records;
      if (task == "condaqa") {
        std::ifstream in = open_input(common.in_path);
        std::vector<CondaqaRecord> gold_records = parse_condaqa(in);
        records = join_predictions(gold_records.size(), preds, [&](std::size_t i) {
          PredictionRecord record;
          record.group_id = gold_records[i].group_id;
          record.edit_kind = gold_records[i].edit_kind;
          record.gold = gold_records[i].answer;
          return record;
        });
        report["accuracy"] = accuracy(records);
        report["n"] = records.size();
        report["consistency"] = {
            {"all", consistency_json(group_consistency(records, ConsistencyScope::All))},
            {"par", consistency_json(group_consistency(records, ConsistencyScope::Par))},
            {"sco", consistency_json(group_consistency(records, ConsistencyScope::Sco))},
            {"aff", consistency_json(group_consistency(records, ConsistencyScope::Aff))},
        };
      } else {
        NluTask nlu_task = nlu_task_from_string(task);
        CueLexicon lexicon = common.lexicon_path.empty()
                                 ? CueLexicon{}
                                 : load_lexicon_file(common.lexicon_path);
        std::ifstream in = open_input(common.in_path);
        std::vector<NluRecord> gold_records = parse_nlu(nlu_task, in, lexicon);
        records = join_predictions(gold_records.size(), preds, [&](std::size_t i) {
          PredictionRecord record;
          record.gold = gold_records[i].label;
          record.has_negation = gold_records[i].has_negation;
          record.importance = gold_records[i].importance;
          return record;
        });
        EvalReport eval = stratified_report(nlu_task, records);
        report["accuracy"] = eval.accuracy;
        report["n"] = eval.n;
        report["strata"] = strata_json(eval);
      }
      if (!compare_path.empty()) {
        std::map<std::string, std::string> other = read_predictions(compare_path);
        std::vector<PredictionRecord> records_b = records;
        for (PredictionRecord& record : records_b) {
          auto it = other.find(record.example_id);
          if (it == other.end()) {
            throw AlignmentError("no comparison prediction for example \"" +
                                 record.example_id + "\"");
          }
          record.predicted = it->second;
        }
        if (other.size() != records_b.size()) {
          throw AlignmentError("comparison predictions do not match the example set");
        }
        report["mcnemar"] = mcnemar_json(mcnemar(records, records_b));
      }
      write_atomic(common.out_path, report.dump(2) + "\n");
      return 0;
    }

    if (analyze->parsed()) {
      CueLexicon lexicon = load_lexicon_file(common.lexicon_path);
      json report = json::object();
      if (analyze_augmented) {
        std::ifstream in = open_input(common.in_path);
        std::vector<AugmentedRow> rows = read_augmented_jsonl(in);
        InterpretationStats stats = coverage_report(applied_interpretations(rows));
        report["n"] = stats.n;
        report["negation_rate"] =
            stats.negation_rate ? json(*stats.negation_rate) : json(nullptr);
        report["fallback_rate"] = stats.fallback_rate;
        report["skipped_fraction"] = stats.skipped_fraction;
        json per_source = json::object();
        for (const auto& [source, source_stats] : stats.per_source) {
          per_source[source] = {
              {"n", source_stats.n},
              {"negation_rate", source_stats.negation_rate ? json(*source_stats.negation_rate)
                                                           : json(nullptr)},
          };
        }
        report["per_source"] = per_source;
      } else {
        std::vector<std::string> texts = read_lines(common.in_path);
        CueHistogram histogram = cue_histogram(lexicon, texts);
        report["n"] = texts.size();
        report["negation_rate"] =
            texts.empty() ? json(nullptr) : json(negation_rate(lexicon, texts));
        json counts = json::object();
        for (const auto& [surface, count] : histogram.counts) counts[surface] = count;
        json by_kind = json::object();
        for (const auto& [kind, count] : histogram.by_kind) by_kind[to_string(kind)] = count;
        report["cues"] = counts;
        report["by_kind"] = by_kind;
      }
      write_atomic(common.out_path, report.dump(2) + "\n");
      return 0;
    }

    if (mock->parsed()) {
      MockGenerationService service;
      if (!fixtures_path.empty()) {
        service.load_fixtures_file(fixtures_path);
      }
      std::cerr << "mock generation service listening on 127.0.0.1:" << port << "\n";
      service.serve_blocking(port);
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
