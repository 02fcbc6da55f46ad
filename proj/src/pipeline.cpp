#include "negaffirm/pipeline.hpp"

#include <atomic>
#include <exception>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <thread>

#include <nlohmann/json.hpp>

#include "negaffirm/errors.hpp"

namespace negaffirm {

namespace {

using nlohmann::json;

bool strategy_needs(const AugmentationStrategy& strategy, StrategyPart part) {
  for (StrategyPart p : strategy.appended_parts()) {
    if (p == part) return true;
  }
  return false;
}

bool strategy_needs_endpoint(const AugmentationStrategy& strategy) {
  for (StrategyPart part : strategy.appended_parts()) {
    switch (part) {
      case StrategyPart::S_CG:
      case StrategyPart::A_HB:
      case StrategyPart::A_CG:
      case StrategyPart::A_G_or_HB:
      case StrategyPart::A_G_or_CG:
        return true;
      default:
        break;
    }
  }
  return false;
}

// Per-record context the workers operate on.
struct WorkItem {
  std::string id;
  std::vector<std::string> segments;
  std::string label;
  std::optional<std::string> target_sentence;  // absent: nothing to interpret
  std::optional<AffirmativeInterpretation> gold;
};

AugmentedRow process_item(const WorkItem& item, const CueLexicon& lexicon,
                          const AugmentOptions& options) {
  AugmentedRow row;
  row.id = item.id;
  row.label = item.label;
  row.strategy = options.strategy.name();

  std::map<StrategyPart, std::string> interps;
  std::map<StrategyPart, AppliedPart> details;
  bool skipped = !item.target_sentence.has_value();

  auto put = [&](StrategyPart part, AppliedPart detail) {
    interps[part] = detail.text;
    details[part] = std::move(detail);
  };

  if (!skipped) {
    const std::string& target = *item.target_sentence;
    const AugmentationStrategy& strategy = options.strategy;

    if (item.gold) {
      put(StrategyPart::A_G,
          AppliedPart{StrategyPart::A_G, item.gold->text, InterpretationSource::Gold,
                      item.gold->has_negation, false});
    }
    if (strategy_needs(strategy, StrategyPart::S)) {
      put(StrategyPart::S, AppliedPart{StrategyPart::S, target, std::nullopt, true, false});
    }

    bool need_hb = strategy_needs(strategy, StrategyPart::A_HB) ||
                   (strategy_needs(strategy, StrategyPart::A_G_or_HB) && !item.gold);
    bool need_cg = strategy_needs(strategy, StrategyPart::A_CG) ||
                   (strategy_needs(strategy, StrategyPart::A_G_or_CG) && !item.gold);
    bool need_scg = strategy_needs(strategy, StrategyPart::S_CG);
    if (need_hb || need_cg || need_scg) {
      if (!options.endpoint) {
        throw ConfigError("strategy \"" + strategy.name() + "\" needs a generation endpoint");
      }
      if (need_hb) {
        AffirmativeInterpretation hb = affirmative_hb(*options.endpoint, lexicon, target);
        put(StrategyPart::A_HB, AppliedPart{StrategyPart::A_HB, hb.text, hb.source,
                                            hb.has_negation, hb.is_fallback});
      }
      if (need_cg) {
        AffirmativeInterpretation cg = affirmative_cg(*options.endpoint, lexicon, target);
        put(StrategyPart::A_CG, AppliedPart{StrategyPart::A_CG, cg.text, cg.source,
                                            cg.has_negation, cg.is_fallback});
      }
      if (need_scg) {
        ParaphraseCandidate first = first_paraphrase_unfiltered(*options.endpoint, target);
        put(StrategyPart::S_CG,
            AppliedPart{StrategyPart::S_CG, first.text, std::nullopt,
                        contains_negation(lexicon, first.text), false});
      }
    }

    // Plain a_g with no gold available: the record gets no augmentation.
    if (strategy_needs(strategy, StrategyPart::A_G) && !item.gold) {
      skipped = true;
    }
  }

  AugmentedExample example =
      build_augmented_input(item.segments, options.strategy, interps, options.separator, skipped);
  row.input = example.input_text;
  row.skipped = example.skipped;
  for (const auto& [part, text] : example.applied) {
    auto it = details.find(part);
    if (it != details.end()) {
      row.applied.push_back(it->second);
    } else {
      row.applied.push_back(AppliedPart{part, text, std::nullopt, false, false});
    }
  }
  return row;
}

std::vector<AugmentedRow> run_items(const std::vector<WorkItem>& items, const CueLexicon& lexicon,
                                    const AugmentOptions& options) {
  std::vector<AugmentedRow> rows(items.size());
  const int workers =
      std::max(1, std::min<int>(options.parallelism, static_cast<int>(items.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < items.size(); ++i) {
      rows[i] = process_item(items[i], lexicon, options);
    }
    return rows;
  }

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    threads.emplace_back([&] {
      while (true) {
        std::size_t i = next.fetch_add(1);
        if (i >= items.size()) return;
        try {
          rows[i] = process_item(items[i], lexicon, options);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          next.store(items.size());
          return;
        }
      }
    });
  }
  for (std::thread& thread : threads) thread.join();
  if (first_error) std::rethrow_exception(first_error);
  return rows;
}

}  // namespace

std::vector<AugmentedRow> augment_condaqa(const std::vector<CondaqaRecord>& records,
                                          const CueLexicon& lexicon,
                                          const AugmentOptions& options) {
  if (strategy_needs_endpoint(options.strategy) && !options.endpoint) {
    throw ConfigError("strategy \"" + options.strategy.name() +
                      "\" needs a generation endpoint");
  }
  // Gold interpretations come from the group's paraphrase edit, so any record
  // in the group can use them. First eligible edit per group wins.
  std::map<std::string, AffirmativeInterpretation> gold_by_group;
  for (const CondaqaRecord& record : records) {
    if (gold_by_group.count(record.group_id)) continue;
    if (auto gold = derive_gold_affirmative(lexicon, record)) {
      gold_by_group.emplace(record.group_id, std::move(*gold));
    }
  }
  std::vector<WorkItem> items;
  items.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    const CondaqaRecord& record = records[i];
    WorkItem item;
    item.id = std::to_string(i);
    item.segments = {record.edited_passage, record.question};
    item.label = record.answer;
    // Interpretations are generated from the sentence of the passage the
    // model actually sees: the extracted edited sentence for edits, the
    // negated sentence itself for originals.
    std::string target = record.edit_kind == EditKind::Original
                             ? record.negated_sentence
                             : extract_edited_sentence(record.original_passage,
                                                       record.negated_sentence,
                                                       record.edited_passage);
    if (contains_negation(lexicon, target)) {
      item.target_sentence = std::move(target);
      auto it = gold_by_group.find(record.group_id);
      if (it != gold_by_group.end()) item.gold = it->second;
    }
    items.push_back(std::move(item));
  }
  return run_items(items, lexicon, options);
}

std::vector<AugmentedRow> augment_nlu(const std::vector<NluRecord>& records,
                                      const CueLexicon& lexicon,
                                      const AugmentOptions& options) {
  for (StrategyPart part : options.strategy.appended_parts()) {
    if (part == StrategyPart::A_G || part == StrategyPart::A_G_or_HB ||
        part == StrategyPart::A_G_or_CG) {
      throw ConfigError("gold interpretations exist only for CondaQA paraphrase edits");
    }
  }
  if (strategy_needs_endpoint(options.strategy) && !options.endpoint) {
    throw ConfigError("strategy \"" + options.strategy.name() +
                      "\" needs a generation endpoint");
  }
  std::vector<WorkItem> items;
  items.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    const NluRecord& record = records[i];
    WorkItem item;
    item.id = std::to_string(i);
    item.segments = record.segments;
    item.label = record.label;
    if (auto target = find_target_sentence(lexicon, record.segments)) {
      item.target_sentence = target->second;
    }
    items.push_back(std::move(item));
  }
  return run_items(items, lexicon, options);
}

void write_augmented_jsonl(std::ostream& out, const std::vector<AugmentedRow>& rows) {
  for (const AugmentedRow& row : rows) {
    json applied = json::array();
    for (const AppliedPart& part : row.applied) {
      json entry = {
          {"part", to_string(part.part)},
          {"text", part.text},
          {"has_negation", part.has_negation},
          {"is_fallback", part.is_fallback},
      };
      if (part.source) {
        entry["source"] = to_string(*part.source);
      }
      applied.push_back(std::move(entry));
    }
    json obj = {
        {"id", row.id},         {"input", row.input},     {"label", row.label},
        {"strategy", row.strategy}, {"applied", applied}, {"skipped", row.skipped},
    };
    out << obj.dump() << '\n';
  }
}

std::vector<AugmentedRow> read_augmented_jsonl(std::istream& in) {
  std::vector<AugmentedRow> rows;
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
    AugmentedRow row;
    try {
      row.id = obj.at("id").get<std::string>();
      row.input = obj.at("input").get<std::string>();
      row.label = obj.at("label").get<std::string>();
      row.strategy = obj.at("strategy").get<std::string>();
      row.skipped = obj.at("skipped").get<bool>();
      for (const auto& entry : obj.at("applied")) {
        AppliedPart part;
        part.text = entry.at("text").get<std::string>();
        part.has_negation = entry.at("has_negation").get<bool>();
        part.is_fallback = entry.at("is_fallback").get<bool>();
        AugmentationStrategy parsed = parse_strategy(entry.at("part").get<std::string>());
        part.part = parsed.parts.front();
        if (entry.contains("source")) {
          std::string source = entry["source"].get<std::string>();
          if (source == "HB") part.source = InterpretationSource::HB;
          if (source == "CG") part.source = InterpretationSource::CG;
          if (source == "Gold") part.source = InterpretationSource::Gold;
        }
        row.applied.push_back(std::move(part));
      }
    } catch (const json::exception& e) {
      throw ParseError(line_no, std::string("bad augmented record: ") + e.what());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<AppliedInterpretation> applied_interpretations(const std::vector<AugmentedRow>& rows) {
  std::vector<AppliedInterpretation> out;
  for (const AugmentedRow& row : rows) {
    if (row.skipped) {
      AppliedInterpretation entry;
      entry.skipped = true;
      out.push_back(std::move(entry));
      continue;
    }
    for (const AppliedPart& part : row.applied) {
      if (!part.source) continue;  // plain S / S_CG parts are not interpretations
      AppliedInterpretation entry;
      entry.text = part.text;
      entry.source = *part.source;
      entry.has_negation = part.has_negation;
      entry.is_fallback = part.is_fallback;
      out.push_back(std::move(entry));
    }
  }
  return out;
}

}  // namespace negaffirm
