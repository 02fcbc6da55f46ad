#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace negaffirm {

// A sentence span: byte offsets into the source text, end exclusive.
struct SentenceSpan {
  std::size_t start = 0;
  std::size_t end = 0;

  bool operator==(const SentenceSpan&) const = default;
};

// Rule-based segmentation: a boundary follows '.', '!' or '?' when the next
// non-space character is uppercase or the text ends, unless the word carrying
// the period is a known abbreviation (Mr., Dr., St., e.g., i.e., vs.).
// Spans cover the text with only whitespace between them.
std::vector<SentenceSpan> split_sentences(std::string_view text);

std::vector<std::string> split_sentence_texts(std::string_view text);

// Collapses whitespace runs to single spaces and trims the ends.
std::string normalize_whitespace(std::string_view text);

}  // namespace negaffirm
