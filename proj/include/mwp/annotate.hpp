#pragma once

#include <string>
#include <vector>

#include "mwp/corpus.hpp"
#include "mwp/lexicon.hpp"

namespace mwp {

// Deterministic pattern annotator for the restricted corpus grammar:
// simple declarative/imperative MWP sentences, how-many/how-much
// questions, digits and number words, verbs from the bundled
// morphology table. Out-of-grammar text raises AnnotationError naming
// the sentence; callers may supply an external annotation file instead.
class Annotator {
 public:
  explicit Annotator(const Lexicon& lex) : lex_(lex) {}

  Annotation annotate(const MWProblem& problem) const;
  Annotation annotate_text(const std::string& text) const;

 private:
  const Lexicon& lex_;
};

}  // namespace mwp
