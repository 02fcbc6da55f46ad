#include "negaffirm/generation.hpp"

#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "negaffirm/errors.hpp"

namespace negaffirm {

namespace {

using nlohmann::json;

// Splits "http://host:port/prefix" into client target and path prefix.
std::pair<std::string, std::string> split_url(const std::string& base_url) {
  std::size_t scheme = base_url.find("://");
  std::size_t path_start =
      base_url.find('/', scheme == std::string::npos ? 0 : scheme + 3);
  if (path_start == std::string::npos) {
    return {base_url, ""};
  }
  std::string prefix = base_url.substr(path_start);
  if (prefix == "/") prefix.clear();
  return {base_url.substr(0, path_start), prefix};
}

}  // namespace

std::vector<ParaphraseCandidate> request_paraphrases(const GenerationEndpoint& endpoint,
                                                     const std::string& sentence) {
  if (sentence.empty()) {
    throw EmptyInputError("request_paraphrases: empty sentence");
  }
  auto [host, prefix] = split_url(endpoint.base_url);
  httplib::Client client(host);
  client.set_connection_timeout(std::chrono::duration_cast<std::chrono::seconds>(endpoint.timeout));
  client.set_read_timeout(std::chrono::duration_cast<std::chrono::seconds>(endpoint.timeout));

  json body = {
      {"text", sentence},
      {"n", endpoint.mode == GenerationMode::HB ? 1 : endpoint.num_candidates},
      {"mode", endpoint.mode == GenerationMode::HB ? "affirmative" : "paraphrase"},
  };
  const std::string payload = body.dump();

  httplib::Result result;
  std::chrono::milliseconds backoff{100};
  for (int attempt = 0;; ++attempt) {
    result = client.Post(prefix + "/generate", payload, "application/json");
    if (result) break;
    if (attempt >= endpoint.max_retries) {
      throw EndpointUnreachableError("generation endpoint unreachable after " +
                                     std::to_string(attempt + 1) + " attempts: " +
                                     endpoint.base_url);
    }
    std::this_thread::sleep_for(backoff);
    backoff *= 2;
  }
  if (result->status != 200) {
    throw ServiceError(result->status, result->body);
  }

  json parsed;
  try {
    parsed = json::parse(result->body);
  } catch (const json::exception& e) {
    throw ServiceError(result->status, std::string("unparseable response: ") + e.what());
  }
  if (!parsed.contains("candidates") || !parsed["candidates"].is_array()) {
    throw ServiceError(result->status, "response missing \"candidates\" array");
  }
  std::vector<ParaphraseCandidate> candidates;
  for (const auto& item : parsed["candidates"]) {
    if (!item.is_string()) {
      throw ServiceError(result->status, "non-string candidate in response");
    }
    candidates.push_back(ParaphraseCandidate{item.get<std::string>(), candidates.size()});
  }
  if (candidates.empty()) {
    throw EmptyGenerationError("service returned no candidates for: " + sentence);
  }
  return candidates;
}

AffirmativeInterpretation affirmative_hb(const GenerationEndpoint& endpoint,
                                         const CueLexicon& lexicon,
                                         const std::string& sentence) {
  GenerationEndpoint hb = endpoint;
  hb.mode = GenerationMode::HB;
  std::vector<ParaphraseCandidate> candidates = request_paraphrases(hb, sentence);
  const std::string& text = candidates.front().text;
  return AffirmativeInterpretation{text, InterpretationSource::HB,
                                   contains_negation(lexicon, text), false, sentence};
}

AffirmativeInterpretation affirmative_cg(const GenerationEndpoint& endpoint,
                                         const CueLexicon& lexicon,
                                         const std::string& sentence) {
  GenerationEndpoint cg = endpoint;
  cg.mode = GenerationMode::CG;
  std::vector<ParaphraseCandidate> candidates = request_paraphrases(cg, sentence);
  SelectionOutcome outcome = select_affirmative(lexicon, candidates);
  if (outcome.selected) {
    return AffirmativeInterpretation{outcome.selected->text, InterpretationSource::CG,
                                     false, false, sentence};
  }
  // Every candidate kept negation: retain rank 0, flagged.
  return AffirmativeInterpretation{candidates.front().text, InterpretationSource::CG,
                                   true, true, sentence};
}

ParaphraseCandidate first_paraphrase_unfiltered(const GenerationEndpoint& endpoint,
                                                const std::string& sentence) {
  GenerationEndpoint cg = endpoint;
  cg.mode = GenerationMode::CG;
  return request_paraphrases(cg, sentence).front();
}

}  // namespace negaffirm
