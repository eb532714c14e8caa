#include <doctest.h>

#include "test_support.hpp"

using namespace mwp;

TEST_CASE("load_dataset parses records with exact answers") {
  std::string text =
      R"({"id":"f1","body":"Mike takes 88 minutes to walk to school. If he rides a bicycle to school, it would save him 64 minutes.","question":"How much time did Mike save?","answer":"22"})"
      "\n";
  Dataset ds = dataset_from_string(text, "t");
  REQUIRE(ds.problems.size() == 1);
  CHECK(ds.problems[0].id == "f1");
  CHECK(ds.problems[0].answer == Rational(22));
}

TEST_CASE("empty dataset file loads as an empty dataset") {
  CHECK(dataset_from_string("", "t").problems.empty());
}

TEST_CASE("decimal answers are stored exactly") {
  std::string text = R"({"id":"a","body":"Tim bought 2 roses.","question":"How many roses did Tim buy?","answer":"2.5"})"
      "\n";
  Dataset ds = dataset_from_string(text, "t");
  CHECK(ds.problems[0].answer == Rational(5, 2));
}

TEST_CASE("dataset validation errors") {
  std::string dup =
      R"({"id":"a","body":"Tim bought 2 roses.","question":"How many?","answer":"2"})"
      "\n"
      R"({"id":"a","body":"Tim bought 3 roses.","question":"How many?","answer":"3"})"
      "\n";
  CHECK_THROWS_AS(dataset_from_string(dup, "t"), ValidationError);
  CHECK_THROWS_WITH_AS(dataset_from_string("{broken\n", "t"),
                       doctest::Contains("line 1"), ParseError);
  // question must end in '?'
  std::string noq = R"({"id":"a","body":"Tim bought 2 roses.","question":"count them.","answer":"2"})"
      "\n";
  CHECK_THROWS_AS(dataset_from_string(noq, "t"), ParseError);
  // body needs a numeric quantity token
  std::string nonum = R"({"id":"a","body":"Tim bought roses.","question":"How many roses?","answer":"2"})"
      "\n";
  CHECK_THROWS_AS(dataset_from_string(nonum, "t"), ParseError);
}

TEST_CASE("annotation round trip is the identity") {
  const auto& pipe = test::pipeline();
  for (const auto& p : test::micro_corpus().problems) {
    Annotation ann = pipe.annotator().annotate(p);
    Annotation back = annotation_from_string(annotation_to_string(ann));
    REQUIRE(back.sentences.size() == ann.sentences.size());
    for (size_t s = 0; s < ann.sentences.size(); ++s) {
      REQUIRE(back.sentences[s].tokens.size() == ann.sentences[s].tokens.size());
      for (size_t i = 0; i < ann.sentences[s].tokens.size(); ++i) {
        const Token& a = ann.sentences[s].tokens[i];
        const Token& b = back.sentences[s].tokens[i];
        CHECK(a.surface == b.surface);
        CHECK(a.lemma == b.lemma);
        CHECK(a.pos == b.pos);
        CHECK(a.head == b.head);
        CHECK(a.relation == b.relation);
        CHECK(a.tense == b.tense);
        CHECK(a.aspect == b.aspect);
      }
    }
  }
}

TEST_CASE("annotation invariants are validated on read") {
  // two roots in one sentence
  std::string two_roots =
      "1\tPack\tpack\tVB\t0\troot\tPresent\tSimple\n"
      "2\tcandies\tcandy\tNNS\t0\troot\t_\t_\n";
  CHECK_THROWS_AS(annotation_from_string(two_roots), ValidationError);
  // cycle in the dependency edges
  std::string cycle =
      "1\ta\ta\tNN\t2\tnsubj\t_\t_\n"
      "2\tb\tb\tNN\t1\tnsubj\t_\t_\n"
      "3\tc\tc\tVB\t0\troot\tPast\tSimple\n";
  CHECK_THROWS_AS(annotation_from_string(cycle), ValidationError);
  // tense label outside the three-value set
  std::string bad_tense = "1\truns\trun\tVBZ\t0\troot\tPluperfect\tSimple\n";
  CHECK_THROWS_AS(annotation_from_string(bad_tense), ValidationError);
}

TEST_CASE("hand-written annotation for the pack-candies sentence is accepted") {
  std::string text =
      "1\tPack\tpack\tVB\t0\troot\tPresent\tSimple\n"
      "2\t100\t100\tCD\t3\tnummod\t_\t_\n"
      "3\tcandies\tcandy\tNNS\t1\tobj\t_\t_\n"
      "4\tinto\tinto\tIN\t6\tcase\t_\t_\n"
      "5\t5\t5\tCD\t6\tnummod\t_\t_\n"
      "6\tboxes\tbox\tNNS\t1\tplace\t_\t_\n"
      "7\t.\t.\tPUNCT\t1\tpunct\t_\t_\n"
      "\n"
      "1\tHow\thow\tWRB\t2\tadvmod\t_\t_\n"
      "2\tmany\tmany\tJJ\t3\tamod\t_\t_\n"
      "3\tcandies\tcandy\tNNS\t4\tnsubj\t_\t_\n"
      "4\tare\tbe\tVBP\t0\troot\tPresent\tSimple\n"
      "5\tthere\tthere\tEX\t4\texpl\t_\t_\n"
      "6\tin\tin\tIN\t8\tcase\t_\t_\n"
      "7\teach\teach\tDT\t8\tdet\t_\t_\n"
      "8\tbox\tbox\tNN\t4\tnmod\t_\t_\n"
      "9\t?\t?\tPUNCT\t4\tpunct\t_\t_\n";
  Annotation ann = annotation_from_string(text);
  CHECK(ann.sentences.size() == 2);
  CHECK(ann.question_index() == 1);
  // the external annotation drives extraction just like the built-in one
  Extraction ex = extract_quantities(ann, test::pipeline().lexicon());
  REQUIRE(ex.quantities.size() == 2);
  CHECK(ex.quantities[0].value == Rational(100));
  CHECK(ex.quantities[0].entity == "candy");
  CHECK(ex.quantities[1].value == Rational(5));
  CHECK(ex.quantities[1].entity == "box");
}
