#include "negaffirm/analysis.hpp"

#include "negaffirm/errors.hpp"

namespace negaffirm {

std::size_t CueHistogram::total() const {
  std::size_t sum = 0;
  for (const auto& [surface, count] : counts) sum += count;
  return sum;
}

double negation_rate(const CueLexicon& lexicon, std::span<const std::string> texts) {
  if (texts.empty()) {
    throw EmptyInputError("negation_rate over empty text set");
  }
  std::size_t negated = 0;
  for (const std::string& text : texts) {
    if (contains_negation(lexicon, text)) ++negated;
  }
  return static_cast<double>(negated) / static_cast<double>(texts.size());
}

CueHistogram cue_histogram(const CueLexicon& lexicon, std::span<const std::string> texts) {
  CueHistogram histogram;
  for (const std::string& text : texts) {
    for (const CueMatch& match : detect_cues(lexicon, text)) {
      ++histogram.counts[match.cue.surface];
      ++histogram.by_kind[match.cue.kind];
    }
  }
  return histogram;
}

InterpretationStats coverage_report(std::span<const AppliedInterpretation> applied) {
  InterpretationStats stats;
  std::size_t skipped = 0;
  std::size_t negated = 0;
  std::size_t fallback = 0;
  std::map<std::string, std::pair<std::size_t, std::size_t>> per_source;  // n, negated
  for (const AppliedInterpretation& item : applied) {
    if (item.skipped) {
      ++skipped;
      continue;
    }
    ++stats.n;
    if (item.has_negation) ++negated;
    if (item.is_fallback) ++fallback;
    auto& [n, neg] = per_source[to_string(item.source)];
    ++n;
    if (item.has_negation) ++neg;
  }
  if (!applied.empty()) {
    stats.skipped_fraction = static_cast<double>(skipped) / static_cast<double>(applied.size());
  }
  if (stats.n > 0) {
    stats.negation_rate = static_cast<double>(negated) / static_cast<double>(stats.n);
    stats.fallback_rate = static_cast<double>(fallback) / static_cast<double>(stats.n);
  }
  for (const auto& [source, counts] : per_source) {
    SourceStats source_stats;
    source_stats.n = counts.first;
    source_stats.negation_rate =
        static_cast<double>(counts.second) / static_cast<double>(counts.first);
    stats.per_source[source] = source_stats;
  }
  return stats;
}

}  // namespace negaffirm
