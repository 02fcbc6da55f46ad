#include <doctest.h>

#include <fstream>

#include "negaffirm/corpus.hpp"
#include "negaffirm/sentence_split.hpp"
#include "test_paths.hpp"

using namespace negaffirm;

TEST_CASE("boundary needs whitespace plus an uppercase letter") {
  auto spans = split_sentence_texts("A b. C d.");
  REQUIRE(spans.size() == 2);
  CHECK(spans[0] == "A b.");
  CHECK(spans[1] == "C d.");

  CHECK(split_sentence_texts("A value of 3.75 is high.").size() == 1);
  CHECK(split_sentence_texts("he left. she stayed.").size() == 1);
}

TEST_CASE("abbreviations suppress boundaries") {
  CHECK(split_sentence_texts("Mr. Smith left.").size() == 1);
  CHECK(split_sentence_texts("See Dr. Who at St. Mary's.").size() == 1);
  CHECK(split_sentence_texts("Cues, e.g. Not, are flagged. Next one.").size() == 2);
}

TEST_CASE("question and exclamation marks terminate") {
  auto spans = split_sentence_texts("Did he go? He did! End.");
  REQUIRE(spans.size() == 3);
  CHECK(spans[0] == "Did he go?");
}

TEST_CASE("empty and whitespace-only text") {
  CHECK(split_sentences("").empty());
  CHECK(split_sentences("   \n ").empty());
}

TEST_CASE("spans cover the text with only whitespace between them") {
  std::string text = "  One two. Three four! Last bit";
  auto spans = split_sentences(text);
  REQUIRE(spans.size() == 3);
  std::size_t cursor = 0;
  for (const SentenceSpan& span : spans) {
    for (std::size_t i = cursor; i < span.start; ++i) {
      CHECK(std::isspace(static_cast<unsigned char>(text[i])));
    }
    CHECK(span.start < span.end);
    cursor = span.end;
  }
}

TEST_CASE("CondaQA sample passage splits into three sentences") {
  std::ifstream in(fixture_path("condaqa_sample.jsonl"), std::ios::binary);
  REQUIRE(in.good());
  auto records = parse_condaqa(in);
  REQUIRE(!records.empty());
  auto spans = split_sentence_texts(records[0].original_passage);
  REQUIRE(spans.size() == 3);
  CHECK(spans[1].starts_with("At the junction"));
  CHECK(split_sentence_texts(records[0].edited_passage).size() == 3);
}

TEST_CASE("normalize_whitespace collapses runs and trims") {
  CHECK(normalize_whitespace("  a \t b\nc  ") == "a b c");
  CHECK(normalize_whitespace("") == "");
  CHECK(normalize_whitespace("plain") == "plain");
}
