#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "negaffirm/corpus.hpp"
#include "negaffirm/cue_lexicon.hpp"

namespace negaffirm {

struct SourceStats {
  std::size_t n = 0;
  std::optional<double> negation_rate;
};

struct InterpretationStats {
  std::size_t n = 0;
  std::optional<double> negation_rate;  // absent over an empty applied set
  double fallback_rate = 0.0;
  double skipped_fraction = 0.0;
  std::map<std::string, SourceStats> per_source;
};

struct CueHistogram {
  std::map<std::string, std::size_t> counts;
  std::map<CueKind, std::size_t> by_kind;

  std::size_t total() const;
};

// Fraction of texts that contain at least one cue.
double negation_rate(const CueLexicon& lexicon, std::span<const std::string> texts);

CueHistogram cue_histogram(const CueLexicon& lexicon, std::span<const std::string> texts);

// Audits an augmentation run: how often nothing was appended, how often the
// fallback fired, and how much negation the applied interpretations retain.
struct AppliedInterpretation {
  std::string text;
  InterpretationSource source = InterpretationSource::HB;
  bool has_negation = false;
  bool is_fallback = false;
  bool skipped = false;
};

InterpretationStats coverage_report(std::span<const AppliedInterpretation> applied);

}  // namespace negaffirm
