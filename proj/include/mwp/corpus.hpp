#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mwp/rational.hpp"

namespace mwp {

enum class Tense { Past, Present, Future };
enum class Aspect { Perfect, Simple, Progressive };

const std::string& to_string(Tense t);
const std::string& to_string(Aspect a);
Tense tense_from_string(const std::string& s);
Aspect aspect_from_string(const std::string& s);

struct Token {
  std::string surface;
  std::string lemma;
  std::string pos;       // Penn-style: NN NNS NNP CD VB VBD VBZ VBN VBG MD DT JJ RB RBR PRP IN TO CC EX WRB PUNCT
  int head = 0;          // 1-based index of the head token, 0 for the root
  std::string relation;  // nsubj obj iobj nmod place tmod case det nummod amod advmod aux expl conj cc mark xcomp root punct
  std::optional<Tense> tense;    // main verbs only
  std::optional<Aspect> aspect;  // main verbs only
};

struct Sentence {
  std::vector<Token> tokens;
  bool is_question() const { return !tokens.empty() && tokens.back().surface == "?"; }
  std::string text() const;
};

struct Annotation {
  std::vector<Sentence> sentences;
  // Index of the question sentence (last sentence ending in "?"), -1 if none.
  int question_index() const;
};

// Checks the tree invariant per sentence: exactly one root, all head
// indices in range, no cycles; verbs carry valid tense/aspect pairs.
void validate(const Annotation& ann);

struct MWProblem {
  std::string id;
  std::string body;
  std::string question;
  Rational answer;
  std::optional<Annotation> annotation;

  std::string text() const { return body + " " + question; }
};

struct Dataset {
  std::string name;
  std::vector<MWProblem> problems;
};

// Dataset files are UTF-8 JSON lines with flat objects:
//   {"id":"p1","body":"...","question":"...?","answer":"22"}
// The answer is a decimal or fraction literal (string or plain number).
Dataset load_dataset(const std::string& path);
Dataset dataset_from_string(const std::string& text, const std::string& name);
void save_dataset(const Dataset& ds, const std::string& path);
std::string dataset_to_string(const Dataset& ds);

// Annotation files are CoNLL-style: one token per line with columns
//   index surface lemma pos head relation tense aspect
// ("_" for empty tense/aspect), blank line between sentences.
Annotation read_annotation(const std::string& path);
Annotation annotation_from_string(const std::string& text);
void write_annotation(const Annotation& ann, const std::string& path);
std::string annotation_to_string(const Annotation& ann);

}  // namespace mwp
