#include "negaffirm/affirmative.hpp"

#include "negaffirm/errors.hpp"

namespace negaffirm {

const char* to_string(InterpretationSource source) {
  switch (source) {
    case InterpretationSource::HB:
      return "HB";
    case InterpretationSource::CG:
      return "CG";
    case InterpretationSource::Gold:
      return "Gold";
  }
  return "HB";
}

SelectionOutcome select_affirmative(const CueLexicon& lexicon,
                                    const std::vector<ParaphraseCandidate>& candidates) {
  if (candidates.empty()) {
    throw EmptyInputError("select_affirmative: no candidates");
  }
  for (const ParaphraseCandidate& candidate : candidates) {
    if (!contains_negation(lexicon, candidate.text)) {
      return SelectionOutcome{candidate, false};
    }
  }
  return SelectionOutcome{std::nullopt, true};
}

}  // namespace negaffirm
