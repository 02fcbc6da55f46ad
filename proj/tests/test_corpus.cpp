#include <doctest.h>

#include <fstream>
#include <sstream>

#include "negaffirm/corpus.hpp"
#include "negaffirm/errors.hpp"
#include "test_paths.hpp"

using namespace negaffirm;

namespace {

CueLexicon shipped_lexicon() { return load_lexicon_file(source_path("data/cues.tsv")); }

std::vector<CondaqaRecord> sample_records() {
  std::ifstream in(fixture_path("condaqa_sample.jsonl"), std::ios::binary);
  REQUIRE(in.good());
  return parse_condaqa(in);
}

}  // namespace

TEST_CASE("parse_condaqa reads the sample records") {
  auto records = sample_records();
  REQUIRE(records.size() == 3);
  CHECK(records[0].cue == "lack");
  CHECK(records[0].edit_kind == EditKind::Paraphrase);
  CHECK(records[0].answer == "Yes");
  CHECK(records[0].group_id == "g1");
  CHECK(records[2].edit_kind == EditKind::Original);
}

TEST_CASE("parse_condaqa empty stream") {
  std::istringstream in("");
  CHECK(parse_condaqa(in).empty());
}

TEST_CASE("parse_condaqa reports missing fields with the line number") {
  std::istringstream in(
      R"({"group_id":"g","original_passage":"No rain fell.","sentence":"No rain fell.","cue":"no","edited_passage":"Rain fell.","edit_type":"affirmative","answer":"Yes"})"
      "\n");
  CHECK_THROWS_WITH_AS(parse_condaqa(in), "line 1: missing field \"question\"", ParseError);
}

TEST_CASE("parse_condaqa rejects invalid JSON") {
  std::istringstream in("{not json}\n");
  CHECK_THROWS_AS(parse_condaqa(in), ParseError);
}

TEST_CASE("parse_condaqa enforces sentence containment") {
  std::istringstream in(
      R"({"group_id":"g","original_passage":"Rain fell.","sentence":"No snow fell.","cue":"no","edited_passage":"Rain fell.","edit_type":"original","question":"q","answer":"a"})"
      "\n");
  CHECK_THROWS_AS(parse_condaqa(in), ParseError);
}

TEST_CASE("extract_edited_sentence reproduces the CondaQA sample") {
  auto records = sample_records();
  std::string edited = extract_edited_sentence(
      records[0].original_passage, records[0].negated_sentence, records[0].edited_passage);
  CHECK(edited ==
        "At the junction of a p-type and an n-type semiconductor there forms a depletion "
        "region where current conduction is inhibited by the absence of mobile charge "
        "carriers.");
}

TEST_CASE("extract_edited_sentence identity edit returns the containing sentence") {
  std::string passage = "First part here. No rain fell today. Last part here.";
  CHECK(extract_edited_sentence(passage, "No rain fell today.", passage) ==
        "No rain fell today.");
}

TEST_CASE("extract_edited_sentence error paths") {
  std::string passage = "First part. No rain fell. Last part.";
  CHECK_THROWS_AS(extract_edited_sentence(passage, "Missing sentence.", passage),
                  AlignmentError);
  CHECK_THROWS_AS(extract_edited_sentence(passage, "Last part.", "Only one sentence."),
                  IndexOutOfRangeError);
}

TEST_CASE("derive_gold_affirmative rejects edits that keep negation") {
  // The sample paraphrase swaps "lack" for "absence", which is still a cue.
  auto records = sample_records();
  CueLexicon lex = shipped_lexicon();
  CHECK_FALSE(derive_gold_affirmative(lex, records[0]).has_value());
}

TEST_CASE("derive_gold_affirmative accepts a cue-free paraphrase") {
  auto records = sample_records();
  CueLexicon lex = shipped_lexicon();
  auto gold = derive_gold_affirmative(lex, records[1]);
  REQUIRE(gold.has_value());
  CHECK(gold->source == InterpretationSource::Gold);
  CHECK_FALSE(gold->has_negation);
  CHECK(gold->text ==
        "The island became vacant by the 1980s because of the automation of the lighthouse.");
}

TEST_CASE("derive_gold_affirmative ignores non-paraphrase edits") {
  auto records = sample_records();
  CueLexicon lex = shipped_lexicon();
  CHECK_FALSE(derive_gold_affirmative(lex, records[2]).has_value());
}

TEST_CASE("find_target_sentence scans segments then sentences") {
  CueLexicon lex = shipped_lexicon();
  CHECK_FALSE(find_target_sentence(
                  lex, {"Room and board.", "He nailed boards across the windows."})
                  .has_value());
  CHECK_FALSE(find_target_sentence(
                  lex, {"Dane was killed in a horse-riding accident when Nikola was five.",
                        "What happened to Dane?"})
                  .has_value());
  auto target = find_target_sentence(
      lex, {"All fine here. He did not come. Also fine. He no longer writes.", "A question?"});
  REQUIRE(target.has_value());
  CHECK(target->first == 0);
  CHECK(target->second == "He did not come.");
}

TEST_CASE("find_target_sentence is stable under appending cue-free segments") {
  CueLexicon lex = shipped_lexicon();
  std::vector<std::string> segments = {"He did not come.", "A question?"};
  auto before = find_target_sentence(lex, segments);
  segments.push_back("Nice weather today.");
  auto after = find_target_sentence(lex, segments);
  REQUIRE(before.has_value());
  REQUIRE(after.has_value());
  CHECK(before->first == after->first);
  CHECK(before->second == after->second);
}

TEST_CASE("parse_strategy accepts table row names") {
  CHECK(parse_strategy("p+q").name() == "p+q");
  CHECK(parse_strategy("P+Q+A_CG").name() == "p+q+a_cg");
  CHECK(parse_strategy("p+q+a_g_or_hb").parts.back() == StrategyPart::A_G_or_HB);
  CHECK_THROWS_AS(parse_strategy("p+q+bogus"), ConfigError);
  CHECK_THROWS_AS(parse_strategy("p+q+a_g_or_hb+a_g_or_cg"), ConfigError);
  CHECK_THROWS_AS(parse_strategy("a_hb+p+q"), ConfigError);
  CHECK_THROWS_AS(parse_strategy(""), ConfigError);
}

TEST_CASE("build_augmented_input composes base and appended parts") {
  AugmentationStrategy base = parse_strategy("p+q");
  auto example = build_augmented_input({"P text", "Q text"}, base, {}, "</s>");
  CHECK(example.input_text == "P text</s>Q text");
  CHECK_FALSE(example.skipped);
  CHECK(example.applied.empty());

  AugmentationStrategy with_hb = parse_strategy("p+q+a_hb");
  auto augmented = build_augmented_input({"P text", "Q text"}, with_hb,
                                         {{StrategyPart::A_HB, "X"}}, "</s>");
  CHECK(augmented.input_text == "P text</s>Q text</s>X");
  REQUIRE(augmented.applied.size() == 1);

  AugmentationStrategy both = parse_strategy("p+q+a_hb+a_cg");
  auto two = build_augmented_input(
      {"P", "Q"}, both, {{StrategyPart::A_HB, "H"}, {StrategyPart::A_CG, "C"}}, "|");
  CHECK(two.input_text == "P|Q|H|C");
}

TEST_CASE("build_augmented_input resolves a_g_or_hb") {
  AugmentationStrategy strategy = parse_strategy("p+q+a_g_or_hb");
  auto with_gold = build_augmented_input(
      {"P", "Q"}, strategy, {{StrategyPart::A_G, "G"}, {StrategyPart::A_HB, "H"}}, "|");
  CHECK(with_gold.input_text == "P|Q|G");
  CHECK(with_gold.applied[0].first == StrategyPart::A_G);

  auto without_gold =
      build_augmented_input({"P", "Q"}, strategy, {{StrategyPart::A_HB, "H"}}, "|");
  CHECK(without_gold.input_text == "P|Q|H");
}

TEST_CASE("build_augmented_input skipped keeps the base bytes") {
  AugmentationStrategy strategy = parse_strategy("p+q+a_hb");
  auto example = build_augmented_input({"P", "Q"}, strategy, {}, "|", true);
  CHECK(example.input_text == "P|Q");
  CHECK(example.skipped);
  CHECK(example.applied.empty());
}

TEST_CASE("build_augmented_input missing part") {
  AugmentationStrategy strategy = parse_strategy("p+q+a_hb");
  CHECK_THROWS_AS(build_augmented_input({"P", "Q"}, strategy, {}, "|"), MissingPartError);
}

TEST_CASE("parse_nlu reads STS-B rows") {
  CueLexicon lex = shipped_lexicon();
  std::ifstream in(fixture_path("stsb_sample.tsv"), std::ios::binary);
  auto records = parse_nlu(NluTask::StsB, in, lex);
  REQUIRE(records.size() == 3);
  CHECK(records[0].segments.size() == 2);
  CHECK(records[0].label == "3.75");
  CHECK_FALSE(records[0].has_negation);
  CHECK(records[1].has_negation);  // "did not cause"
}

TEST_CASE("parse_nlu honors metadata columns") {
  CueLexicon lex = shipped_lexicon();
  std::ifstream in(fixture_path("wic_sample.tsv"), std::ios::binary);
  auto records = parse_nlu(NluTask::WiC, in, lex);
  REQUIRE(records.size() == 2);
  CHECK(records[0].importance == NegationImportance::None);
  CHECK(records[1].has_negation);
  CHECK(records[1].importance == NegationImportance::Unimportant);
}

TEST_CASE("parse_nlu rejects a wrong segment count") {
  CueLexicon lex;
  std::istringstream in("question\tlabel\nWhat happened?\tentailment\n");
  CHECK_THROWS_AS(parse_nlu(NluTask::Qnli, in, lex), ParseError);
}

TEST_CASE("parse_nlu rejects a short row") {
  CueLexicon lex;
  std::istringstream in("s1\ts2\tlabel\nonly one field\n");
  CHECK_THROWS_AS(parse_nlu(NluTask::Qnli, in, lex), ParseError);
}
