#include <doctest.h>

#include "test_support.hpp"

using namespace mwp;

namespace {

const Token& find_token(const Sentence& s, const std::string& surface) {
  for (const auto& t : s.tokens)
    if (t.surface == surface) return t;
  throw std::runtime_error("no token " + surface);
}

bool has_edge(const Sentence& s, const std::string& head, const std::string& child,
              const std::string& rel) {
  for (size_t i = 0; i < s.tokens.size(); ++i) {
    const Token& t = s.tokens[i];
    if (t.surface != child || t.relation != rel) continue;
    if (t.head == 0) return head.empty();
    if (s.tokens[t.head - 1].surface == head) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("declarative sentence: lemmas, tense and edges") {
  Annotation ann = test::pipeline().annotator().annotate_text("Tim bought 2 roses.");
  REQUIRE(ann.sentences.size() == 1);
  const Sentence& s = ann.sentences[0];
  const Token& bought = find_token(s, "bought");
  CHECK(bought.lemma == "buy");
  CHECK(bought.tense == Tense::Past);
  CHECK(bought.aspect == Aspect::Simple);
  CHECK(has_edge(s, "bought", "Tim", "nsubj"));
  CHECK(has_edge(s, "bought", "roses", "obj"));
  CHECK(has_edge(s, "roses", "2", "nummod"));
}

TEST_CASE("question pattern marks the asked entity") {
  Annotation ann = test::pipeline().annotator().annotate_text("How many flowers did Tim buy?");
  const Sentence& s = ann.sentences[0];
  CHECK(s.is_question());
  CHECK(has_edge(s, "flowers", "many", "amod"));
  CHECK(has_edge(s, "buy", "flowers", "obj"));
  CHECK(has_edge(s, "buy", "Tim", "nsubj"));
  CHECK(has_edge(s, "buy", "did", "aux"));
  CHECK(find_token(s, "buy").tense == Tense::Past);
}

TEST_CASE("a sentence with an unknown verb is out of grammar") {
  CHECK_THROWS_AS(test::pipeline().annotator().annotate_text("Tim zorked 3 blargs."),
                  AnnotationError);
}

TEST_CASE("conditional clause attaches below the main clause") {
  Annotation ann = test::pipeline().annotator().annotate_text(
      "If he rides a bicycle to school, it would save him 64 minutes.");
  const Sentence& s = ann.sentences[0];
  CHECK(has_edge(s, "save", "rides", "advcl"));
  CHECK(has_edge(s, "rides", "If", "mark"));
  CHECK(has_edge(s, "save", "would", "aux"));
  CHECK(has_edge(s, "save", "him", "iobj"));
  CHECK(has_edge(s, "save", "minutes", "obj"));
  CHECK(find_token(s, "save").tense == Tense::Future);
}

TEST_CASE("expletive sentences and measure phrases") {
  Annotation ann =
      test::pipeline().annotator().annotate_text("There are 30 red flowers in the garden.");
  const Sentence& s = ann.sentences[0];
  CHECK(has_edge(s, "are", "There", "expl"));
  CHECK(has_edge(s, "are", "flowers", "nsubj"));
  CHECK(has_edge(s, "flowers", "red", "amod"));
  CHECK(has_edge(s, "are", "garden", "place"));

  Annotation cups = test::pipeline().annotator().annotate_text("Sara bought 3 cups of coffee.");
  CHECK(has_edge(cups.sentences[0], "cups", "coffee", "nmod"));
}

TEST_CASE("tense and aspect come from verb morphology") {
  auto tense_of = [&](const std::string& text, const std::string& verb) {
    Annotation ann = test::pipeline().annotator().annotate_text(text);
    const Token& t = find_token(ann.sentences[0], verb);
    REQUIRE(t.tense.has_value());
    return std::make_pair(*t.tense, *t.aspect);
  };
  CHECK(tense_of("Tom has 5 marbles.", "has") == std::make_pair(Tense::Present, Aspect::Simple));
  CHECK(tense_of("Tom had 5 marbles.", "had") == std::make_pair(Tense::Past, Aspect::Simple));
  CHECK(tense_of("Tom had found 5 marbles.", "found") ==
        std::make_pair(Tense::Past, Aspect::Perfect));
  CHECK(tense_of("Tom is finding 5 marbles.", "finding") ==
        std::make_pair(Tense::Present, Aspect::Progressive));
  CHECK(tense_of("Tom will find 5 marbles.", "find") ==
        std::make_pair(Tense::Future, Aspect::Simple));
}

TEST_CASE("annotation is deterministic") {
  const auto& annotator = test::pipeline().annotator();
  for (const auto& p : test::worked_examples().problems) {
    Annotation a = annotator.annotate(p);
    Annotation b = annotator.annotate(p);
    CHECK(annotation_to_string(a) == annotation_to_string(b));
  }
}
