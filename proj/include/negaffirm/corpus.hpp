#pragma once

#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "negaffirm/affirmative.hpp"
#include "negaffirm/cue_lexicon.hpp"

namespace negaffirm {

enum class EditKind { Original, Paraphrase, Scope, Affirmative };

const char* to_string(EditKind kind);
EditKind edit_kind_from_string(std::string_view name);

// One CondaQA row. For edit_kind == Original the edited passage equals the
// original passage.
struct CondaqaRecord {
  std::string group_id;
  std::string original_passage;
  std::string negated_sentence;
  std::string cue;
  std::string edited_passage;
  EditKind edit_kind = EditKind::Original;
  std::string question;
  std::string answer;
};

enum class NluTask { CommonsenseQA, StsB, Qnli, WiC, Wsc };

const char* to_string(NluTask task);
NluTask nlu_task_from_string(std::string_view name);
std::size_t segment_count(NluTask task);

enum class NegationImportance { Important, Unimportant, None, Unknown };

const char* to_string(NegationImportance importance);
NegationImportance importance_from_string(std::string_view name);

struct NluRecord {
  NluTask task = NluTask::StsB;
  std::vector<std::string> segments;
  std::string label;
  bool has_negation = false;
  NegationImportance importance = NegationImportance::Unknown;
};

// The pieces an input representation is assembled from.
enum class StrategyPart { P, Q, S, S_CG, A_HB, A_CG, A_G, A_G_or_HB, A_G_or_CG };

const char* to_string(StrategyPart part);

// An ordered input representation, e.g. [P, Q, A_HB]. Base parts (P, Q, or a
// task's own segments) come before any appended part.
struct AugmentationStrategy {
  std::vector<StrategyPart> parts;

  std::vector<StrategyPart> appended_parts() const;
  std::string name() const;
};

AugmentationStrategy parse_strategy(std::string_view expr);

struct AugmentedExample {
  std::string input_text;
  std::vector<std::pair<StrategyPart, std::string>> applied;
  bool skipped = false;
};

// --- CondaQA ---

std::vector<CondaqaRecord> parse_condaqa(std::istream& in);

// Locates the original sentence containing the negated sentence and returns
// the edited-passage sentence at the same index.
std::string extract_edited_sentence(std::string_view original_passage,
                                    std::string_view negated_sentence,
                                    std::string_view edited_passage);

// Gold interpretations exist only for paraphrase edits whose edited sentence
// carries no cue.
std::optional<AffirmativeInterpretation> derive_gold_affirmative(const CueLexicon& lexicon,
                                                                 const CondaqaRecord& record);

// --- NLU ---

std::vector<NluRecord> parse_nlu(NluTask task, std::istream& in, const CueLexicon& lexicon);

// First sentence with a cue, scanning segments then sentences in order.
std::optional<std::pair<std::size_t, std::string>> find_target_sentence(
    const CueLexicon& lexicon, const std::vector<std::string>& segments);

// --- Composition ---

// Joins base segments with the separator, then appends each strategy part's
// text after a separator. A skipped example (no negation found upstream) gets
// the unaugmented composition byte for byte.
AugmentedExample build_augmented_input(const std::vector<std::string>& segments,
                                       const AugmentationStrategy& strategy,
                                       const std::map<StrategyPart, std::string>& interps,
                                       const std::string& separator,
                                       bool skipped = false);

}  // namespace negaffirm
