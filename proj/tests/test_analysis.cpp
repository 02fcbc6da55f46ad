#include <doctest.h>

#include <random>

#include "negaffirm/analysis.hpp"
#include "negaffirm/errors.hpp"
#include "test_paths.hpp"

using namespace negaffirm;

namespace {

CueLexicon shipped_lexicon() { return load_lexicon_file(source_path("data/cues.tsv")); }

}  // namespace

TEST_CASE("negation_rate counts texts with at least one cue") {
  CueLexicon lex = shipped_lexicon();
  std::vector<std::string> texts = {
      "He did not go.",
      "All fine here.",
      "Nothing was found, nothing at all.",
      "Sunny day.",
  };
  CHECK(negation_rate(lex, texts) == doctest::Approx(0.5));

  std::vector<std::string> empty;
  CHECK_THROWS_AS(negation_rate(lex, empty), EmptyInputError);
}

TEST_CASE("negation_rate counts a multiply-cued text once") {
  CueLexicon lex = shipped_lexicon();
  std::vector<std::string> texts = {"No, he did not go, never."};
  CHECK(negation_rate(lex, texts) == doctest::Approx(1.0));
}

TEST_CASE("cue_histogram tallies surfaces and kinds") {
  CueLexicon lex = shipped_lexicon();
  std::vector<std::string> texts = {
      "He did not go. No one came.",
      "The bill stays unpaid and he is no longer here.",
      "Not today.",
  };
  CueHistogram hist = cue_histogram(lex, texts);
  CHECK(hist.counts.at("not") == 2);
  CHECK(hist.counts.at("no one") == 1);
  CHECK(hist.counts.at("no longer") == 1);
  CHECK(hist.counts.at("unpaid") == 1);
  CHECK(hist.by_kind.at(CueKind::Affixal) == 1);
  CHECK(hist.by_kind.at(CueKind::Multiword) == 2);
  CHECK(hist.total() == 5);

  std::vector<std::string> clean = {"Sunny day."};
  CHECK(cue_histogram(lex, clean).total() == 0);
}

TEST_CASE("cue_histogram total equals the sum over kinds") {
  CueLexicon lex = shipped_lexicon();
  std::mt19937 rng(616);
  std::vector<std::string> vocabulary = {"not", "no", "never", "lack", "unpaid",
                                         "cat", "sat", "mat", "one", "longer"};
  std::uniform_int_distribution<std::size_t> word_dist(0, vocabulary.size() - 1);
  for (int iter = 0; iter < 200; ++iter) {
    std::vector<std::string> texts;
    for (int t = 0; t < 5; ++t) {
      std::string text;
      for (int w = 0; w < 8; ++w) {
        if (!text.empty()) text += ' ';
        text += vocabulary[word_dist(rng)];
      }
      texts.push_back(text);
    }
    CueHistogram hist = cue_histogram(lex, texts);
    std::size_t by_surface = 0;
    for (const auto& [surface, count] : hist.counts) by_surface += count;
    std::size_t by_kind = 0;
    for (const auto& [kind, count] : hist.by_kind) by_kind += count;
    CHECK(hist.total() == by_surface);
    CHECK(hist.total() == by_kind);

    // Every histogram entry is a lexicon surface, and per-text detection sums
    // to the same total.
    std::size_t detected = 0;
    for (const std::string& text : texts) detected += detect_cues(lex, text).size();
    CHECK(hist.total() == detected);
    for (const auto& [surface, count] : hist.counts) {
      CHECK(lex.contains_surface(surface));
      CHECK(count > 0);
    }
  }
}

TEST_CASE("coverage_report on a mixed applied set") {
  std::vector<AppliedInterpretation> applied = {
      {"clean text", InterpretationSource::CG, false, false, false},
      {"still not clean", InterpretationSource::CG, true, true, false},
      {"gold text", InterpretationSource::Gold, false, false, false},
      {"", InterpretationSource::HB, false, false, true},  // skipped row
  };
  InterpretationStats stats = coverage_report(applied);
  CHECK(stats.n == 3);  // applied entries; the skipped row is excluded
  CHECK(stats.skipped_fraction == doctest::Approx(0.25));
  // Rates are over the applied (non-skipped) entries.
  REQUIRE(stats.negation_rate.has_value());
  CHECK(*stats.negation_rate == doctest::Approx(1.0 / 3.0));
  CHECK(stats.fallback_rate == doctest::Approx(1.0 / 3.0));
  CHECK(stats.per_source.at("CG").n == 2);
  REQUIRE(stats.per_source.at("CG").negation_rate.has_value());
  CHECK(*stats.per_source.at("CG").negation_rate == doctest::Approx(0.5));
  CHECK(stats.per_source.at("Gold").n == 1);
  CHECK(*stats.per_source.at("Gold").negation_rate == doctest::Approx(0.0));
}

TEST_CASE("coverage_report with everything skipped") {
  std::vector<AppliedInterpretation> applied = {
      {"", InterpretationSource::HB, false, false, true},
      {"", InterpretationSource::HB, false, false, true},
  };
  InterpretationStats stats = coverage_report(applied);
  CHECK(stats.skipped_fraction == doctest::Approx(1.0));
  CHECK_FALSE(stats.negation_rate.has_value());
  CHECK(stats.per_source.empty());
}

TEST_CASE("coverage_report on empty input") {
  std::vector<AppliedInterpretation> applied;
  InterpretationStats stats = coverage_report(applied);
  CHECK(stats.n == 0);
  CHECK(stats.skipped_fraction == doctest::Approx(0.0));
  CHECK_FALSE(stats.negation_rate.has_value());
}

TEST_CASE("coverage_report per-source counts partition the applied entries") {
  std::mt19937 rng(90210);
  std::bernoulli_distribution coin(0.5);
  std::uniform_int_distribution<int> source_dist(0, 2);
  for (int iter = 0; iter < 200; ++iter) {
    std::vector<AppliedInterpretation> applied;
    int n = static_cast<int>(rng() % 20);
    for (int i = 0; i < n; ++i) {
      AppliedInterpretation entry;
      entry.skipped = coin(rng);
      if (!entry.skipped) {
        entry.text = "t" + std::to_string(i);
        entry.source = static_cast<InterpretationSource>(source_dist(rng));
        entry.has_negation = coin(rng);
        entry.is_fallback = coin(rng);
      }
      applied.push_back(entry);
    }
    InterpretationStats stats = coverage_report(applied);
    std::size_t applied_count = 0;
    std::size_t negated = 0;
    for (const auto& entry : applied) {
      if (entry.skipped) continue;
      ++applied_count;
      if (entry.has_negation) ++negated;
    }
    std::size_t per_source_total = 0;
    for (const auto& [name, source_stats] : stats.per_source) per_source_total += source_stats.n;
    CHECK(per_source_total == applied_count);
    if (applied_count == 0) {
      CHECK_FALSE(stats.negation_rate.has_value());
    } else {
      REQUIRE(stats.negation_rate.has_value());
      CHECK(*stats.negation_rate ==
            doctest::Approx(static_cast<double>(negated) / applied_count).epsilon(1e-12));
    }
  }
}
