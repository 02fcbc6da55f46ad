#pragma once

#include <cstddef>
#include <istream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace negaffirm {

enum class CueKind { SingleWord, Affixal, Multiword };

const char* to_string(CueKind kind);
CueKind cue_kind_from_string(std::string_view name);

// One entry of the negation-cue inventory. Surfaces are lowercase and
// internally single-spaced; a surface with a space is a multiword cue.
struct Cue {
  std::string surface;
  CueKind kind = CueKind::SingleWord;

  bool operator==(const Cue&) const = default;
};

// A token of the source text: lowercased text plus byte offsets into the
// original string (end exclusive).
struct Token {
  std::string text;
  std::size_t start = 0;
  std::size_t end = 0;

  bool operator==(const Token&) const = default;
};

// A located cue occurrence. Token indices are inclusive.
struct CueMatch {
  Cue cue;
  std::size_t first_token = 0;
  std::size_t last_token = 0;
  std::size_t start = 0;
  std::size_t end = 0;
};

// Immutable after load; detection is pure, so concurrent readers are fine.
class CueLexicon {
 public:
  CueLexicon() = default;

  // Adds one cue. The surface is lowercased and whitespace-normalized;
  // a duplicate (after normalization) throws DuplicateEntryError.
  void add(std::string surface, CueKind kind);
  void add(std::string surface);

  bool contains_surface(std::string_view surface) const;
  const Cue* find(std::string_view surface) const;

  std::size_t size() const { return cues_.size(); }
  bool empty() const { return cues_.empty(); }
  std::size_t max_len() const { return max_len_; }
  const std::vector<Cue>& cues() const { return cues_; }

 private:
  std::vector<Cue> cues_;
  std::unordered_map<std::string, std::size_t> index_;
  std::size_t max_len_ = 0;
};

// Parses the lexicon TSV format: one cue per line, optional second column
// single_word|affixal|multiword, '#' comments and blank lines ignored.
CueLexicon load_lexicon(std::istream& in);
CueLexicon load_lexicon_file(const std::string& path);

// Tokens are maximal runs of letters/digits with internal apostrophes and
// hyphens kept ("cannot", "o'clock"); everything else separates.
std::vector<Token> tokenize(std::string_view text);

// Greedy longest-match scan over whole tokens: at each position the widest
// window (up to max_len) wins and the scan resumes after it, so matches are
// non-overlapping and sorted.
std::vector<CueMatch> detect_cues(const CueLexicon& lexicon, std::string_view text);

bool contains_negation(const CueLexicon& lexicon, std::string_view text);

}  // namespace negaffirm
