#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "negaffirm/analysis.hpp"
#include "negaffirm/corpus.hpp"
#include "negaffirm/generation.hpp"

namespace negaffirm {

struct AugmentOptions {
  AugmentationStrategy strategy;
  std::string separator = "</s>";
  std::optional<GenerationEndpoint> endpoint;
  int parallelism = 1;
};

// One applied appended part, with provenance flags when it came from a
// generation service or the gold edits.
struct AppliedPart {
  StrategyPart part = StrategyPart::S;
  std::string text;
  std::optional<InterpretationSource> source;
  bool has_negation = false;
  bool is_fallback = false;
};

struct AugmentedRow {
  std::string id;
  std::string input;
  std::string label;
  std::string strategy;
  std::vector<AppliedPart> applied;
  bool skipped = false;
};

// Composes the strategy's input representation for every record. Records
// whose target sentence carries no negation (or, for a_g, have no gold
// interpretation) keep the unaugmented input with skipped = true.
std::vector<AugmentedRow> augment_condaqa(const std::vector<CondaqaRecord>& records,
                                          const CueLexicon& lexicon,
                                          const AugmentOptions& options);

std::vector<AugmentedRow> augment_nlu(const std::vector<NluRecord>& records,
                                      const CueLexicon& lexicon,
                                      const AugmentOptions& options);

void write_augmented_jsonl(std::ostream& out, const std::vector<AugmentedRow>& rows);
std::vector<AugmentedRow> read_augmented_jsonl(std::istream& in);

// Flattens an augmentation run for coverage_report: one entry per applied
// interpretation plus one per skipped row.
std::vector<AppliedInterpretation> applied_interpretations(const std::vector<AugmentedRow>& rows);

}  // namespace negaffirm
