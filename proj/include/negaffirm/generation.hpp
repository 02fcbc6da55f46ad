#pragma once

#include <chrono>
#include <string>
#include <vector>

#include "negaffirm/affirmative.hpp"
#include "negaffirm/cue_lexicon.hpp"

namespace negaffirm {

enum class GenerationMode { HB, CG };

// An opaque paraphrase/affirmative generation service. In HB mode the service
// returns a single affirmative interpretation; in CG mode it returns
// num_candidates paraphrases which are then filtered for negation.
struct GenerationEndpoint {
  std::string base_url;
  GenerationMode mode = GenerationMode::CG;
  int num_candidates = 5;
  std::chrono::milliseconds timeout{5000};
  int max_retries = 3;
};

// POST {base_url}/generate with {"text","n","mode"}; candidates come back in
// rank order. Transient transport failures are retried with exponential
// backoff up to max_retries.
std::vector<ParaphraseCandidate> request_paraphrases(const GenerationEndpoint& endpoint,
                                                     const std::string& sentence);

// Single-output mode: the service response is kept verbatim, negated or not.
AffirmativeInterpretation affirmative_hb(const GenerationEndpoint& endpoint,
                                         const CueLexicon& lexicon,
                                         const std::string& sentence);

// Generate-and-filter mode: first cue-free candidate wins; when all
// candidates contain negation the rank-0 candidate is kept, flagged fallback.
AffirmativeInterpretation affirmative_cg(const GenerationEndpoint& endpoint,
                                         const CueLexicon& lexicon,
                                         const std::string& sentence);

// The rank-0 paraphrase with no negation filtering (the unfiltered baseline).
ParaphraseCandidate first_paraphrase_unfiltered(const GenerationEndpoint& endpoint,
                                                const std::string& sentence);

}  // namespace negaffirm
