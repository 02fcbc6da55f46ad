#include "negaffirm/cue_lexicon.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "negaffirm/errors.hpp"

namespace negaffirm {

namespace {

bool is_token_char(unsigned char c) { return std::isalnum(c) != 0; }

char ascii_lower(unsigned char c) { return static_cast<char>(std::tolower(c)); }

std::string normalize_surface(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  bool pending_space = false;
  for (unsigned char c : raw) {
    if (std::isspace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(ascii_lower(c));
  }
  return out;
}

std::size_t token_count(std::string_view surface) {
  return surface.empty() ? 0 : std::count(surface.begin(), surface.end(), ' ') + 1;
}

// Rejects continuation bytes without a lead byte and truncated sequences.
void check_utf8(const std::string& line, std::size_t line_no) {
  std::size_t i = 0;
  while (i < line.size()) {
    unsigned char c = line[i];
    std::size_t extra = 0;
    if (c < 0x80) {
      extra = 0;
    } else if ((c & 0xE0) == 0xC0) {
      extra = 1;
    } else if ((c & 0xF0) == 0xE0) {
      extra = 2;
    } else if ((c & 0xF8) == 0xF0) {
      extra = 3;
    } else {
      throw ParseError(line_no, "malformed UTF-8");
    }
    for (std::size_t k = 1; k <= extra; ++k) {
      if (i + k >= line.size() || (static_cast<unsigned char>(line[i + k]) & 0xC0) != 0x80) {
        throw ParseError(line_no, "malformed UTF-8");
      }
    }
    i += extra + 1;
  }
}

}  // namespace

const char* to_string(CueKind kind) {
  switch (kind) {
    case CueKind::SingleWord:
      return "single_word";
    case CueKind::Affixal:
      return "affixal";
    case CueKind::Multiword:
      return "multiword";
  }
  return "single_word";
}

CueKind cue_kind_from_string(std::string_view name) {
  if (name == "single_word") return CueKind::SingleWord;
  if (name == "affixal") return CueKind::Affixal;
  if (name == "multiword") return CueKind::Multiword;
  throw SchemaError("unknown cue kind: \"" + std::string(name) + "\"");
}

void CueLexicon::add(std::string surface, CueKind kind) {
  std::string normalized = normalize_surface(surface);
  if (normalized.empty()) {
    throw SchemaError("empty cue surface");
  }
  if (index_.contains(normalized)) {
    throw DuplicateEntryError(normalized);
  }
  // A spaced surface is multiword by definition, whatever the tag said.
  if (normalized.find(' ') != std::string::npos) {
    kind = CueKind::Multiword;
  } else if (kind == CueKind::Multiword) {
    kind = CueKind::SingleWord;
  }
  index_.emplace(normalized, cues_.size());
  max_len_ = std::max(max_len_, token_count(normalized));
  cues_.push_back(Cue{std::move(normalized), kind});
}

void CueLexicon::add(std::string surface) {
  std::string normalized = normalize_surface(surface);
  CueKind kind = normalized.find(' ') != std::string::npos ? CueKind::Multiword
                                                           : CueKind::SingleWord;
  add(std::move(normalized), kind);
}

bool CueLexicon::contains_surface(std::string_view surface) const {
  return index_.contains(std::string(surface));
}

const Cue* CueLexicon::find(std::string_view surface) const {
  auto it = index_.find(std::string(surface));
  return it == index_.end() ? nullptr : &cues_[it->second];
}

CueLexicon load_lexicon(std::istream& in) {
  CueLexicon lexicon;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    check_utf8(line, line_no);
    std::string_view view(line);
    if (view.empty() || view.front() == '#') continue;
    std::size_t tab = view.find('\t');
    std::string_view surface = view.substr(0, tab);
    if (normalize_surface(surface).empty()) continue;
    if (tab == std::string_view::npos) {
      lexicon.add(std::string(surface));
    } else {
      std::string_view kind_field = view.substr(tab + 1);
      while (!kind_field.empty() && std::isspace(static_cast<unsigned char>(kind_field.back()))) {
        kind_field.remove_suffix(1);
      }
      if (kind_field.empty()) {
        lexicon.add(std::string(surface));
      } else {
        lexicon.add(std::string(surface), cue_kind_from_string(kind_field));
      }
    }
  }
  return lexicon;
}

CueLexicon load_lexicon_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("cannot open lexicon file: " + path);
  }
  return load_lexicon(in);
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    if (!is_token_char(text[i])) {
      ++i;
      continue;
    }
    std::size_t start = i;
    std::size_t end = i + 1;
    while (end < n) {
      unsigned char c = text[end];
      if (is_token_char(c)) {
        ++end;
      } else if ((c == '\'' || c == '-') && end + 1 < n && is_token_char(text[end + 1])) {
        end += 2;  // internal apostrophe/hyphen stays inside the token
      } else {
        break;
      }
    }
    std::string lowered;
    lowered.reserve(end - start);
    for (std::size_t k = start; k < end; ++k) {
      lowered.push_back(ascii_lower(text[k]));
    }
    tokens.push_back(Token{std::move(lowered), start, end});
    i = end;
  }
  return tokens;
}

std::vector<CueMatch> detect_cues(const CueLexicon& lexicon, std::string_view text) {
  std::vector<CueMatch> matches;
  if (lexicon.empty()) return matches;
  const std::vector<Token> tokens = tokenize(text);
  const std::size_t n = tokens.size();
  std::size_t i = 0;
  while (i < n) {
    std::size_t hit_len = 0;
    const Cue* hit = nullptr;
    std::size_t widest = std::min(lexicon.max_len(), n - i);
    for (std::size_t len = widest; len >= 1; --len) {
      std::string window = tokens[i].text;
      for (std::size_t k = 1; k < len; ++k) {
        window += ' ';
        window += tokens[i + k].text;
      }
      if (const Cue* cue = lexicon.find(window)) {
        hit = cue;
        hit_len = len;
        break;
      }
    }
    if (hit != nullptr) {
      matches.push_back(CueMatch{*hit, i, i + hit_len - 1, tokens[i].start,
                                 tokens[i + hit_len - 1].end});
      i += hit_len;
    } else {
      ++i;
    }
  }
  return matches;
}

bool contains_negation(const CueLexicon& lexicon, std::string_view text) {
  return !detect_cues(lexicon, text).empty();
}

}  // namespace negaffirm
