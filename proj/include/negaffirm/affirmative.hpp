#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "negaffirm/cue_lexicon.hpp"

namespace negaffirm {

enum class InterpretationSource { HB, CG, Gold };

const char* to_string(InterpretationSource source);

// One service paraphrase, in service order.
struct ParaphraseCandidate {
  std::string text;
  std::size_t rank = 0;

  bool operator==(const ParaphraseCandidate&) const = default;
};

// A paraphrase accepted for augmentation. has_negation is re-checked against
// the lexicon at construction time; is_fallback marks a rank-0 candidate kept
// because every candidate contained negation.
struct AffirmativeInterpretation {
  std::string text;
  InterpretationSource source = InterpretationSource::HB;
  bool has_negation = false;
  bool is_fallback = false;
  std::string origin_sentence;
};

struct SelectionOutcome {
  std::optional<ParaphraseCandidate> selected;
  bool all_negated = false;
};

// The lowest-rank candidate without a negation cue; absent (all_negated) when
// every candidate has one. Throws EmptyInputError on an empty list.
SelectionOutcome select_affirmative(const CueLexicon& lexicon,
                                    const std::vector<ParaphraseCandidate>& candidates);

}  // namespace negaffirm
