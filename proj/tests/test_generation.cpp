#include <doctest.h>

#include <httplib.h>

#include <random>

#include "negaffirm/errors.hpp"
#include "negaffirm/generation.hpp"
#include "negaffirm/mock_service.hpp"
#include "test_paths.hpp"

using namespace negaffirm;

namespace {

CueLexicon shipped_lexicon() { return load_lexicon_file(source_path("data/cues.tsv")); }

GenerationEndpoint endpoint_for(const MockGenerationService& service, GenerationMode mode) {
  GenerationEndpoint endpoint;
  endpoint.base_url = service.base_url();
  endpoint.mode = mode;
  endpoint.max_retries = 1;
  return endpoint;
}

}  // namespace

TEST_CASE("select_affirmative picks the first cue-free candidate") {
  CueLexicon lex = shipped_lexicon();
  std::vector<ParaphraseCandidate> candidates = {
      {"The lightning did not cause any damage.", 0},
      {"The lightning did not cause any significant and permanent damage.", 1},
      {"The lightning strikes caused serious permanent damage.", 2},
      {"Lightning strikes caused short-term damage.", 3},
  };
  SelectionOutcome outcome = select_affirmative(lex, candidates);
  REQUIRE(outcome.selected.has_value());
  CHECK(outcome.selected->rank == 2);
  CHECK(outcome.selected->text == "The lightning strikes caused serious permanent damage.");
  CHECK_FALSE(outcome.all_negated);
}

TEST_CASE("select_affirmative all-negated and singleton cases") {
  CueLexicon lex = shipped_lexicon();
  std::vector<ParaphraseCandidate> negated;
  for (std::size_t i = 0; i < 5; ++i) {
    negated.push_back({"There is no way, option " + std::to_string(i) + ".", i});
  }
  SelectionOutcome none = select_affirmative(lex, negated);
  CHECK_FALSE(none.selected.has_value());
  CHECK(none.all_negated);

  SelectionOutcome one = select_affirmative(lex, {{"All is well.", 0}});
  REQUIRE(one.selected.has_value());
  CHECK(one.selected->rank == 0);

  CHECK_THROWS_AS(select_affirmative(lex, {}), EmptyInputError);
}

TEST_CASE("select_affirmative property: minimal cue-free rank wins") {
  CueLexicon lex = shipped_lexicon();
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> count_dist(1, 8);
  std::bernoulli_distribution negated_dist(0.5);
  for (int iter = 0; iter < 2000; ++iter) {
    std::vector<ParaphraseCandidate> candidates;
    int first_clean = -1;
    int count = count_dist(rng);
    for (int i = 0; i < count; ++i) {
      bool with_cue = negated_dist(rng);
      std::string text = with_cue ? "He did not go, run " + std::to_string(i)
                                  : "He went away, run " + std::to_string(i);
      if (!with_cue && first_clean < 0) first_clean = i;
      candidates.push_back({text, static_cast<std::size_t>(i)});
    }
    SelectionOutcome outcome = select_affirmative(lex, candidates);
    if (first_clean < 0) {
      CHECK(outcome.all_negated);
      CHECK_FALSE(outcome.selected.has_value());
    } else {
      REQUIRE(outcome.selected.has_value());
      CHECK(outcome.selected->rank == static_cast<std::size_t>(first_clean));
    }
  }
}

TEST_CASE("selection ignores candidates after the selected rank") {
  CueLexicon lex = shipped_lexicon();
  std::vector<ParaphraseCandidate> candidates = {
      {"He refused to go.", 0},
      {"He stayed home.", 1},
  };
  SelectionOutcome before = select_affirmative(lex, candidates);
  candidates.push_back({"He did not go at all.", 2});
  SelectionOutcome after = select_affirmative(lex, candidates);
  REQUIRE(before.selected.has_value());
  REQUIRE(after.selected.has_value());
  CHECK(before.selected->rank == after.selected->rank);
  CHECK(before.selected->text == after.selected->text);
}

TEST_CASE("mock service round-trips the wire contract") {
  MockGenerationService service;
  service.set_fixture("He did not go.", {"c0", "c1", "c2", "c3", "c4"});
  service.start();

  GenerationEndpoint endpoint = endpoint_for(service, GenerationMode::CG);
  auto candidates = request_paraphrases(endpoint, "He did not go.");
  REQUIRE(candidates.size() == 5);
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    CHECK(candidates[i].rank == i);
    CHECK(candidates[i].text == "c" + std::to_string(i));
  }
}

TEST_CASE("mock service truncates to the requested n") {
  MockGenerationService service;
  service.set_fixture("s", {"a", "b", "c"});
  service.start();
  GenerationEndpoint endpoint = endpoint_for(service, GenerationMode::CG);
  endpoint.num_candidates = 2;
  CHECK(request_paraphrases(endpoint, "s").size() == 2);
}

TEST_CASE("empty candidate list raises an empty-generation error") {
  MockGenerationService service;
  service.set_fixture("He did not go.", {});
  service.start();
  GenerationEndpoint endpoint = endpoint_for(service, GenerationMode::CG);
  CHECK_THROWS_AS(request_paraphrases(endpoint, "He did not go."), EmptyGenerationError);
}

TEST_CASE("non-2xx status raises a service error with status and body") {
  httplib::Server server;
  server.Post("/generate", [](const httplib::Request&, httplib::Response& res) {
    res.status = 503;
    res.set_content("overloaded", "text/plain");
  });
  int port = server.bind_to_any_port("127.0.0.1");
  std::thread thread([&server] { server.listen_after_bind(); });
  server.wait_until_ready();

  GenerationEndpoint endpoint;
  endpoint.base_url = "http://127.0.0.1:" + std::to_string(port);
  endpoint.max_retries = 0;
  try {
    request_paraphrases(endpoint, "text");
    FAIL("expected ServiceError");
  } catch (const ServiceError& e) {
    CHECK(e.status() == 503);
    CHECK(e.body() == "overloaded");
  }
  server.stop();
  thread.join();
}

TEST_CASE("unreachable endpoint fails after the retry budget") {
  GenerationEndpoint endpoint;
  endpoint.base_url = "http://127.0.0.1:1";  // nothing listens here
  endpoint.max_retries = 1;
  endpoint.timeout = std::chrono::milliseconds(200);
  CHECK_THROWS_AS(request_paraphrases(endpoint, "text"), EndpointUnreachableError);
}

TEST_CASE("request_paraphrases rejects an empty sentence") {
  GenerationEndpoint endpoint;
  endpoint.base_url = "http://127.0.0.1:1";
  CHECK_THROWS_AS(request_paraphrases(endpoint, ""), EmptyInputError);
}

TEST_CASE("affirmative_hb keeps the single output and re-checks negation") {
  CueLexicon lex = shipped_lexicon();
  MockGenerationService service;
  service.load_fixtures_file(source_path("data/mock_fixtures_example.json"));
  service.start();
  GenerationEndpoint endpoint = endpoint_for(service, GenerationMode::HB);

  AffirmativeInterpretation vacant = affirmative_hb(
      endpoint, lex,
      "The island became completely uninhabited by 1980 with the automation of the lighthouse.");
  CHECK(vacant.text ==
        "The island became vacant by the 1980s because of the automation of the lighthouse.");
  CHECK_FALSE(vacant.has_negation);
  CHECK_FALSE(vacant.is_fallback);
  CHECK(vacant.source == InterpretationSource::HB);

  // Unknown input echoes, so the output still carries the negation.
  AffirmativeInterpretation echoed = affirmative_hb(endpoint, lex, "He did not sleep.");
  CHECK(echoed.text == "He did not sleep.");
  CHECK(echoed.has_negation);
}

TEST_CASE("affirmative_hb keeps a negated output verbatim") {
  CueLexicon lex = shipped_lexicon();
  MockGenerationService service;
  service.set_fixture("It is not rare to find pearls that measure as much as 14mm across.",
                      {"It is not uncommon to find pearls that measure as much as 14mm across."});
  service.start();
  GenerationEndpoint endpoint = endpoint_for(service, GenerationMode::HB);
  AffirmativeInterpretation out = affirmative_hb(
      endpoint, lex, "It is not rare to find pearls that measure as much as 14mm across.");
  CHECK(out.text == "It is not uncommon to find pearls that measure as much as 14mm across.");
  CHECK(out.has_negation);
}

TEST_CASE("affirmative_cg filters and falls back") {
  CueLexicon lex = shipped_lexicon();
  MockGenerationService service;
  service.set_fixture("It is not rare.",
                      {"It's not rare...", "The size of 14mm pearls is common."});
  std::vector<std::string> all_negated;
  for (int i = 0; i < 5; ++i) {
    all_negated.push_back("Still no luck, attempt " + std::to_string(i) + ".");
  }
  service.set_fixture("Nothing works.", all_negated);
  service.start();
  GenerationEndpoint endpoint = endpoint_for(service, GenerationMode::CG);

  AffirmativeInterpretation selected = affirmative_cg(endpoint, lex, "It is not rare.");
  CHECK(selected.text == "The size of 14mm pearls is common.");
  CHECK_FALSE(selected.has_negation);
  CHECK_FALSE(selected.is_fallback);
  CHECK(selected.source == InterpretationSource::CG);

  AffirmativeInterpretation fallback = affirmative_cg(endpoint, lex, "Nothing works.");
  CHECK(fallback.text == "Still no luck, attempt 0.");
  CHECK(fallback.has_negation);
  CHECK(fallback.is_fallback);
}

TEST_CASE("first_paraphrase_unfiltered ignores negation") {
  MockGenerationService service;
  service.set_fixture("src", {"He did not go.", "He stayed."});
  service.start();
  GenerationEndpoint endpoint = endpoint_for(service, GenerationMode::CG);
  ParaphraseCandidate first = first_paraphrase_unfiltered(endpoint, "src");
  CHECK(first.rank == 0);
  CHECK(first.text == "He did not go.");
}

TEST_CASE("mock responses are deterministic across calls") {
  CueLexicon lex = shipped_lexicon();
  MockGenerationService service;
  service.load_fixtures_file(source_path("data/mock_fixtures_example.json"));
  service.start();
  GenerationEndpoint endpoint = endpoint_for(service, GenerationMode::CG);
  std::string sentence = "The lightning strikes caused no serious permanent damage.";
  AffirmativeInterpretation first = affirmative_cg(endpoint, lex, sentence);
  AffirmativeInterpretation second = affirmative_cg(endpoint, lex, sentence);
  CHECK(first.text == second.text);
  CHECK(first.text == "The lightning strikes caused serious permanent damage.");
}
