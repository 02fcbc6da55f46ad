#include "negaffirm/sentence_split.hpp"

#include <array>
#include <cctype>

namespace negaffirm {

namespace {

constexpr std::array<std::string_view, 6> kAbbreviations = {
    "mr.", "dr.", "st.", "e.g.", "i.e.", "vs.",
};

bool is_terminator(char c) { return c == '.' || c == '!' || c == '?'; }

// The word carrying a period, lowercased, period(s) included ("e.g.").
std::string trailing_word(std::string_view text, std::size_t terminator_pos) {
  std::size_t begin = terminator_pos;
  while (begin > 0) {
    unsigned char c = text[begin - 1];
    if (std::isalnum(c) || c == '.') {
      --begin;
    } else {
      break;
    }
  }
  std::string word;
  for (std::size_t k = begin; k <= terminator_pos; ++k) {
    word.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(text[k]))));
  }
  return word;
}

bool is_abbreviation(std::string_view word) {
  for (std::string_view abbr : kAbbreviations) {
    if (word == abbr) return true;
  }
  return false;
}

}  // namespace

std::vector<SentenceSpan> split_sentences(std::string_view text) {
  std::vector<SentenceSpan> spans;
  const std::size_t n = text.size();
  std::size_t start = 0;
  // Skip leading whitespace of the first span.
  while (start < n && std::isspace(static_cast<unsigned char>(text[start]))) ++start;
  if (start == n) return spans;

  for (std::size_t i = start; i < n; ++i) {
    if (!is_terminator(text[i])) continue;
    if (text[i] == '.' && is_abbreviation(trailing_word(text, i))) continue;

    std::size_t next = i + 1;
    while (next < n && std::isspace(static_cast<unsigned char>(text[next]))) ++next;
    if (next == i + 1 && next < n) continue;  // no whitespace after the terminator
    bool at_end = next == n;
    if (at_end || std::isupper(static_cast<unsigned char>(text[next]))) {
      spans.push_back(SentenceSpan{start, i + 1});
      start = next;
      i = next == n ? n : next - 1;
    }
  }
  if (start < n) {
    std::size_t end = n;
    while (end > start && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
    if (end > start) spans.push_back(SentenceSpan{start, end});
  }
  return spans;
}

std::vector<std::string> split_sentence_texts(std::string_view text) {
  std::vector<std::string> out;
  for (const SentenceSpan& span : split_sentences(text)) {
    out.emplace_back(text.substr(span.start, span.end - span.start));
  }
  return out;
}

std::string normalize_whitespace(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending = false;
  for (unsigned char c : text) {
    if (std::isspace(c)) {
      pending = !out.empty();
      continue;
    }
    if (pending) {
      out.push_back(' ');
      pending = false;
    }
    out.push_back(static_cast<char>(c));
  }
  return out;
}

}  // namespace negaffirm
