#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "negaffirm/affirmative.hpp"
#include "negaffirm/analysis.hpp"
#include "negaffirm/corpus.hpp"
#include "negaffirm/cue_lexicon.hpp"
#include "negaffirm/errors.hpp"
#include "negaffirm/metrics.hpp"
#include "negaffirm/sentence_split.hpp"

namespace py = pybind11;
using namespace negaffirm;

namespace {

std::vector<PredictionRecord> make_records(const std::vector<std::string>& gold,
                                           const std::vector<std::string>& predicted) {
  if (gold.size() != predicted.size()) {
    throw AlignmentError("gold and predicted differ in length");
  }
  std::vector<PredictionRecord> records(gold.size());
  for (std::size_t i = 0; i < gold.size(); ++i) {
    records[i].example_id = std::to_string(i);
    records[i].gold = gold[i];
    records[i].predicted = predicted[i];
  }
  return records;
}

}  // namespace

PYBIND11_MODULE(_negaffirm, m) {
  m.doc() = "Negation cue detection, affirmative-interpretation augmentation, and evaluation";

  py::register_exception<Error>(m, "NegaffirmError");

  py::class_<Token>(m, "Token")
      .def_readonly("text", &Token::text)
      .def_readonly("start", &Token::start)
      .def_readonly("end", &Token::end)
      .def("__repr__", [](const Token& t) {
        return "Token('" + t.text + "', " + std::to_string(t.start) + ", " +
               std::to_string(t.end) + ")";
      });

  py::class_<CueMatch>(m, "CueMatch")
      .def_property_readonly("cue", [](const CueMatch& m_) { return m_.cue.surface; })
      .def_property_readonly("kind",
                             [](const CueMatch& m_) { return std::string(to_string(m_.cue.kind)); })
      .def_readonly("first_token", &CueMatch::first_token)
      .def_readonly("last_token", &CueMatch::last_token)
      .def_readonly("start", &CueMatch::start)
      .def_readonly("end", &CueMatch::end);

  py::class_<CueLexicon>(m, "CueLexicon")
      .def("__len__", &CueLexicon::size)
      .def_property_readonly("max_len", &CueLexicon::max_len)
      .def("surfaces", [](const CueLexicon& lex) {
        std::vector<std::string> out;
        for (const Cue& cue : lex.cues()) out.push_back(cue.surface);
        return out;
      });

  m.def("load_lexicon", &load_lexicon_file, py::arg("path"),
        "Load a cue lexicon from a TSV file");
  m.def(
      "load_lexicon_text",
      [](const std::string& text) {
        std::istringstream in(text);
        return load_lexicon(in);
      },
      py::arg("text"), "Load a cue lexicon from TSV content");

  m.def("tokenize", [](const std::string& text) { return tokenize(text); }, py::arg("text"));
  m.def(
      "detect_cues",
      [](const CueLexicon& lex, const std::string& text) { return detect_cues(lex, text); },
      py::arg("lexicon"), py::arg("text"));
  m.def(
      "contains_negation",
      [](const CueLexicon& lex, const std::string& text) {
        return contains_negation(lex, text);
      },
      py::arg("lexicon"), py::arg("text"));

  m.def(
      "split_sentences",
      [](const std::string& text) { return split_sentence_texts(text); }, py::arg("text"));
  m.def(
      "extract_edited_sentence",
      [](const std::string& original, const std::string& negated, const std::string& edited) {
        return extract_edited_sentence(original, negated, edited);
      },
      py::arg("original_passage"), py::arg("negated_sentence"), py::arg("edited_passage"));

  m.def(
      "select_affirmative",
      [](const CueLexicon& lex, const std::vector<std::string>& candidates)
          -> std::optional<std::pair<std::size_t, std::string>> {
        std::vector<ParaphraseCandidate> parsed;
        for (const std::string& text : candidates) {
          parsed.push_back(ParaphraseCandidate{text, parsed.size()});
        }
        SelectionOutcome outcome = select_affirmative(lex, parsed);
        if (!outcome.selected) return std::nullopt;
        return std::make_pair(outcome.selected->rank, outcome.selected->text);
      },
      py::arg("lexicon"), py::arg("candidates"),
      "Returns (rank, text) of the first cue-free candidate, or None");

  m.def(
      "accuracy",
      [](const std::vector<std::string>& gold, const std::vector<std::string>& predicted) {
        return accuracy(make_records(gold, predicted));
      },
      py::arg("gold"), py::arg("predicted"));
  m.def(
      "macro_f1",
      [](const std::vector<std::string>& gold, const std::vector<std::string>& predicted) {
        return macro_f1(make_records(gold, predicted));
      },
      py::arg("gold"), py::arg("predicted"));
  m.def(
      "pearson",
      [](const std::vector<double>& xs, const std::vector<double>& ys) {
        return pearson(xs, ys);
      },
      py::arg("xs"), py::arg("ys"));
  m.def(
      "spearman",
      [](const std::vector<double>& xs, const std::vector<double>& ys) {
        return spearman(xs, ys);
      },
      py::arg("xs"), py::arg("ys"));
  m.def(
      "mcnemar",
      [](const std::vector<std::string>& gold, const std::vector<std::string>& pred_a,
         const std::vector<std::string>& pred_b) {
        McNemarResult result = mcnemar(make_records(gold, pred_a), make_records(gold, pred_b));
        py::dict out;
        out["b"] = result.b;
        out["c"] = result.c;
        out["method"] = result.method == McNemarMethod::Exact ? "exact" : "chi_square";
        out["statistic"] = result.statistic ? py::object(py::float_(*result.statistic))
                                            : py::object(py::none());
        out["p_value"] = result.p_value;
        return out;
      },
      py::arg("gold"), py::arg("pred_a"), py::arg("pred_b"));
  m.def(
      "group_consistency",
      [](const std::vector<std::string>& gold, const std::vector<std::string>& predicted,
         const std::vector<std::string>& group_ids, const std::vector<std::string>& edit_kinds,
         const std::string& scope) {
        std::vector<PredictionRecord> records = make_records(gold, predicted);
        if (group_ids.size() != records.size() || edit_kinds.size() != records.size()) {
          throw AlignmentError("group_ids and edit_kinds must match the record count");
        }
        for (std::size_t i = 0; i < records.size(); ++i) {
          records[i].group_id = group_ids[i];
          records[i].edit_kind = edit_kind_from_string(edit_kinds[i]);
        }
        ConsistencyScope parsed = ConsistencyScope::All;
        if (scope == "all") {
          parsed = ConsistencyScope::All;
        } else if (scope == "par") {
          parsed = ConsistencyScope::Par;
        } else if (scope == "sco") {
          parsed = ConsistencyScope::Sco;
        } else if (scope == "aff") {
          parsed = ConsistencyScope::Aff;
        } else {
          throw ConfigError("scope must be one of all|par|sco|aff");
        }
        return group_consistency(records, parsed).value;
      },
      py::arg("gold"), py::arg("predicted"), py::arg("group_ids"), py::arg("edit_kinds"),
      py::arg("scope") = "all");
}
