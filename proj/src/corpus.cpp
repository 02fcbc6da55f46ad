#include "negaffirm/corpus.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <sstream>

#include <nlohmann/json.hpp>

#include "negaffirm/errors.hpp"
#include "negaffirm/sentence_split.hpp"

namespace negaffirm {

namespace {

using nlohmann::json;

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

// Accepts both this tool's field names and the released CondaQA spellings.
std::optional<std::string> pick_field(const json& obj,
                                      std::initializer_list<const char*> keys) {
  for (const char* key : keys) {
    auto it = obj.find(key);
    if (it != obj.end()) {
      if (it->is_string()) return it->get<std::string>();
      return it->dump();
    }
  }
  return std::nullopt;
}

std::string require_field(const json& obj, const char* canonical,
                          std::initializer_list<const char*> keys, std::size_t line_no) {
  std::optional<std::string> value = pick_field(obj, keys);
  if (!value) {
    throw ParseError(line_no, std::string("missing field \"") + canonical + "\"");
  }
  return *std::move(value);
}

std::vector<std::string> split_tsv(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return fields;
}

bool parse_bool(const std::string& value, std::size_t line_no) {
  std::string v = lower(value);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ParseError(line_no, "not a boolean: \"" + value + "\"");
}

}  // namespace

const char* to_string(EditKind kind) {
  switch (kind) {
    case EditKind::Original:
      return "original";
    case EditKind::Paraphrase:
      return "paraphrase";
    case EditKind::Scope:
      return "scope";
    case EditKind::Affirmative:
      return "affirmative";
  }
  return "original";
}

EditKind edit_kind_from_string(std::string_view name) {
  std::string v = lower(name);
  if (v == "original") return EditKind::Original;
  if (v == "paraphrase") return EditKind::Paraphrase;
  if (v == "scope") return EditKind::Scope;
  if (v == "affirmative") return EditKind::Affirmative;
  throw SchemaError("unknown edit kind: \"" + std::string(name) + "\"");
}

const char* to_string(NluTask task) {
  switch (task) {
    case NluTask::CommonsenseQA:
      return "commonsenseqa";
    case NluTask::StsB:
      return "stsb";
    case NluTask::Qnli:
      return "qnli";
    case NluTask::WiC:
      return "wic";
    case NluTask::Wsc:
      return "wsc";
  }
  return "stsb";
}

NluTask nlu_task_from_string(std::string_view name) {
  std::string v = lower(name);
  if (v == "commonsenseqa") return NluTask::CommonsenseQA;
  if (v == "stsb" || v == "sts-b") return NluTask::StsB;
  if (v == "qnli") return NluTask::Qnli;
  if (v == "wic") return NluTask::WiC;
  if (v == "wsc") return NluTask::Wsc;
  throw ConfigError("unknown task: \"" + std::string(name) + "\"");
}

std::size_t segment_count(NluTask task) {
  switch (task) {
    case NluTask::CommonsenseQA:
      return 6;  // question + 5 answer choices
    case NluTask::StsB:
    case NluTask::Qnli:
    case NluTask::WiC:
      return 2;
    case NluTask::Wsc:
      return 1;
  }
  return 2;
}

const char* to_string(NegationImportance importance) {
  switch (importance) {
    case NegationImportance::Important:
      return "important";
    case NegationImportance::Unimportant:
      return "unimportant";
    case NegationImportance::None:
      return "none";
    case NegationImportance::Unknown:
      return "unknown";
  }
  return "unknown";
}

NegationImportance importance_from_string(std::string_view name) {
  std::string v = lower(name);
  if (v == "important") return NegationImportance::Important;
  if (v == "unimportant") return NegationImportance::Unimportant;
  if (v == "none" || v.empty()) return NegationImportance::None;
  if (v == "unknown") return NegationImportance::Unknown;
  throw SchemaError("unknown importance: \"" + std::string(name) + "\"");
}

const char* to_string(StrategyPart part) {
  switch (part) {
    case StrategyPart::P:
      return "p";
    case StrategyPart::Q:
      return "q";
    case StrategyPart::S:
      return "s";
    case StrategyPart::S_CG:
      return "s_cg";
    case StrategyPart::A_HB:
      return "a_hb";
    case StrategyPart::A_CG:
      return "a_cg";
    case StrategyPart::A_G:
      return "a_g";
    case StrategyPart::A_G_or_HB:
      return "a_g_or_hb";
    case StrategyPart::A_G_or_CG:
      return "a_g_or_cg";
  }
  return "p";
}

std::vector<StrategyPart> AugmentationStrategy::appended_parts() const {
  std::vector<StrategyPart> out;
  for (StrategyPart part : parts) {
    if (part != StrategyPart::P && part != StrategyPart::Q) out.push_back(part);
  }
  return out;
}

std::string AugmentationStrategy::name() const {
  std::string out;
  for (StrategyPart part : parts) {
    if (!out.empty()) out += '+';
    out += to_string(part);
  }
  return out;
}

AugmentationStrategy parse_strategy(std::string_view expr) {
  AugmentationStrategy strategy;
  std::string lowered = lower(expr);
  std::size_t start = 0;
  bool seen_appended = false;
  int exclusive = 0;
  while (start <= lowered.size()) {
    std::size_t plus = lowered.find('+', start);
    std::string token = lowered.substr(start, plus == std::string::npos ? plus : plus - start);
    if (token.empty()) {
      throw ConfigError("empty part in strategy: \"" + std::string(expr) + "\"");
    }
    StrategyPart part;
    if (token == "p") {
      part = StrategyPart::P;
    } else if (token == "q") {
      part = StrategyPart::Q;
    } else if (token == "s") {
      part = StrategyPart::S;
    } else if (token == "s_cg") {
      part = StrategyPart::S_CG;
    } else if (token == "a_hb") {
      part = StrategyPart::A_HB;
    } else if (token == "a_cg") {
      part = StrategyPart::A_CG;
    } else if (token == "a_g") {
      part = StrategyPart::A_G;
    } else if (token == "a_g_or_hb") {
      part = StrategyPart::A_G_or_HB;
    } else if (token == "a_g_or_cg") {
      part = StrategyPart::A_G_or_CG;
    } else {
      throw ConfigError("unknown strategy part: \"" + token + "\"");
    }
    if (part == StrategyPart::P || part == StrategyPart::Q) {
      if (seen_appended) {
        throw ConfigError("base parts must precede appended parts in \"" +
                          std::string(expr) + "\"");
      }
    } else {
      seen_appended = true;
      if (part == StrategyPart::A_G_or_HB || part == StrategyPart::A_G_or_CG) {
        if (++exclusive > 1) {
          throw ConfigError("at most one a_g_or_* part is allowed");
        }
      }
    }
    strategy.parts.push_back(part);
    if (plus == std::string::npos) break;
    start = plus + 1;
  }
  if (strategy.parts.empty()) {
    throw ConfigError("empty strategy expression");
  }
  return strategy;
}

std::vector<CondaqaRecord> parse_condaqa(std::istream& in) {
  std::vector<CondaqaRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::exception& e) {
      throw ParseError(line_no, std::string("invalid JSON: ") + e.what());
    }
    if (!obj.is_object()) {
      throw ParseError(line_no, "record is not a JSON object");
    }
    CondaqaRecord record;
    record.group_id = require_field(obj, "group_id", {"group_id", "PassageID", "passage_id"}, line_no);
    record.original_passage = normalize_whitespace(
        require_field(obj, "original_passage", {"original_passage", "original passage"}, line_no));
    record.negated_sentence = normalize_whitespace(
        require_field(obj, "sentence", {"sentence", "original_sentence", "original sentence"}, line_no));
    record.cue = normalize_whitespace(
        require_field(obj, "cue", {"cue", "original_cue", "original cue"}, line_no));
    record.edited_passage = normalize_whitespace(
        require_field(obj, "edited_passage", {"edited_passage", "edited passage"}, line_no));
    try {
      record.edit_kind = edit_kind_from_string(
          require_field(obj, "edit_type", {"edit_type", "edit type"}, line_no));
    } catch (const SchemaError& e) {
      throw ParseError(line_no, e.what());
    }
    record.question = normalize_whitespace(require_field(obj, "question", {"question"}, line_no));
    record.answer = require_field(obj, "answer", {"answer", "label"}, line_no);

    if (record.original_passage.find(record.negated_sentence) == std::string::npos) {
      throw ParseError(line_no, "negated sentence is not contained in the original passage");
    }
    if (record.edit_kind == EditKind::Original &&
        record.edited_passage != record.original_passage) {
      throw ParseError(line_no, "original-edit record has a differing edited passage");
    }
    records.push_back(std::move(record));
  }
  return records;
}

std::string extract_edited_sentence(std::string_view original_passage,
                                    std::string_view negated_sentence,
                                    std::string_view edited_passage) {
  const std::string needle = normalize_whitespace(negated_sentence);
  const std::vector<std::string> original = split_sentence_texts(original_passage);
  std::size_t index = original.size();
  for (std::size_t i = 0; i < original.size(); ++i) {
    if (normalize_whitespace(original[i]).find(needle) != std::string::npos) {
      index = i;
      break;
    }
  }
  if (index == original.size()) {
    throw AlignmentError("negated sentence not found in the original passage");
  }
  const std::vector<std::string> edited = split_sentence_texts(edited_passage);
  if (index >= edited.size()) {
    throw IndexOutOfRangeError("edited passage has " + std::to_string(edited.size()) +
                               " sentences, need index " + std::to_string(index));
  }
  return edited[index];
}

std::optional<AffirmativeInterpretation> derive_gold_affirmative(const CueLexicon& lexicon,
                                                                 const CondaqaRecord& record) {
  if (record.edit_kind != EditKind::Paraphrase) {
    return std::nullopt;
  }
  std::string edited = extract_edited_sentence(record.original_passage, record.negated_sentence,
                                               record.edited_passage);
  if (contains_negation(lexicon, edited)) {
    return std::nullopt;
  }
  return AffirmativeInterpretation{std::move(edited), InterpretationSource::Gold, false, false,
                                   record.negated_sentence};
}

std::vector<NluRecord> parse_nlu(NluTask task, std::istream& in, const CueLexicon& lexicon) {
  std::vector<NluRecord> records;
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::size_t> segment_columns;
  std::size_t label_column = std::string::npos;
  std::size_t negation_column = std::string::npos;
  std::size_t importance_column = std::string::npos;
  std::size_t header_width = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields = split_tsv(line);
    if (line_no == 1) {
      header_width = fields.size();
      for (std::size_t c = 0; c < fields.size(); ++c) {
        std::string name = lower(normalize_whitespace(fields[c]));
        if (name == "label") {
          label_column = c;
        } else if (name == "has_negation") {
          negation_column = c;
        } else if (name == "importance") {
          importance_column = c;
        } else {
          segment_columns.push_back(c);
        }
      }
      if (label_column == std::string::npos) {
        throw ParseError(line_no, "header has no \"label\" column");
      }
      if (segment_columns.size() != segment_count(task)) {
        throw ParseError(line_no, std::string("task ") + to_string(task) + " needs " +
                                      std::to_string(segment_count(task)) +
                                      " segment columns, header has " +
                                      std::to_string(segment_columns.size()));
      }
      continue;
    }
    if (fields.size() != header_width) {
      throw ParseError(line_no, "row has " + std::to_string(fields.size()) +
                                    " columns, header has " + std::to_string(header_width));
    }
    NluRecord record;
    record.task = task;
    for (std::size_t c : segment_columns) {
      record.segments.push_back(normalize_whitespace(fields[c]));
    }
    record.label = normalize_whitespace(fields[label_column]);
    if (negation_column != std::string::npos) {
      record.has_negation = parse_bool(fields[negation_column], line_no);
    } else {
      record.has_negation = std::any_of(
          record.segments.begin(), record.segments.end(),
          [&lexicon](const std::string& s) { return contains_negation(lexicon, s); });
    }
    if (importance_column != std::string::npos) {
      try {
        record.importance = importance_from_string(normalize_whitespace(fields[importance_column]));
      } catch (const SchemaError& e) {
        throw ParseError(line_no, e.what());
      }
    } else {
      record.importance = record.has_negation ? NegationImportance::Unknown
                                              : NegationImportance::None;
    }
    if (!record.has_negation && (record.importance == NegationImportance::Important ||
                                 record.importance == NegationImportance::Unimportant)) {
      throw ParseError(line_no, "importance set on a record without negation");
    }
    records.push_back(std::move(record));
  }
  if (line_no == 0) {
    return records;  // empty stream, no header required
  }
  return records;
}

std::optional<std::pair<std::size_t, std::string>> find_target_sentence(
    const CueLexicon& lexicon, const std::vector<std::string>& segments) {
  for (std::size_t i = 0; i < segments.size(); ++i) {
    for (const std::string& sentence : split_sentence_texts(segments[i])) {
      if (contains_negation(lexicon, sentence)) {
        return std::make_pair(i, sentence);
      }
    }
  }
  return std::nullopt;
}

AugmentedExample build_augmented_input(const std::vector<std::string>& segments,
                                       const AugmentationStrategy& strategy,
                                       const std::map<StrategyPart, std::string>& interps,
                                       const std::string& separator,
                                       bool skipped) {
  AugmentedExample example;
  std::string input;
  for (const std::string& segment : segments) {
    if (!input.empty()) input += separator;
    input += segment;
  }
  example.skipped = skipped;
  if (skipped) {
    example.input_text = std::move(input);
    return example;
  }
  for (StrategyPart part : strategy.appended_parts()) {
    const std::string* text = nullptr;
    StrategyPart resolved = part;
    auto lookup = [&interps](StrategyPart p) -> const std::string* {
      auto it = interps.find(p);
      return it == interps.end() ? nullptr : &it->second;
    };
    if (part == StrategyPart::A_G_or_HB) {
      if ((text = lookup(StrategyPart::A_G)) != nullptr) {
        resolved = StrategyPart::A_G;
      } else if ((text = lookup(StrategyPart::A_HB)) != nullptr) {
        resolved = StrategyPart::A_HB;
      }
    } else if (part == StrategyPart::A_G_or_CG) {
      if ((text = lookup(StrategyPart::A_G)) != nullptr) {
        resolved = StrategyPart::A_G;
      } else if ((text = lookup(StrategyPart::A_CG)) != nullptr) {
        resolved = StrategyPart::A_CG;
      }
    } else {
      text = lookup(part);
    }
    if (text == nullptr) {
      throw MissingPartError(std::string("no text for strategy part \"") + to_string(part) +
                             "\"");
    }
    input += separator;
    input += *text;
    example.applied.emplace_back(resolved, *text);
  }
  example.input_text = std::move(input);
  return example;
}

}  // namespace negaffirm
