#include <doctest.h>

#include "test_support.hpp"

using namespace mwp;

namespace {

MWProblem flowers_problem() {
  MWProblem p;
  p.id = "flowers";
  p.body = "Tim has 10 yellow flowers and 12 red flowers.";
  p.question = "How many flowers does Tim have?";
  p.answer = Rational(22);
  return p;
}

}  // namespace

TEST_CASE("new-subject noise binds the quantity to an unused name") {
  const auto& pipe = test::pipeline();
  NoiseSpec spec = default_noise_spec(test::micro_corpus(), pipe, NoiseKind::NewSubject, 7);
  auto variants = make_noisy_variants(flowers_problem(), spec, pipe);
  REQUIRE(variants.size() == 1);
  const MWProblem& v = variants[0];
  CHECK(v.body.rfind("Tim has 10 yellow flowers and 12 red flowers. ", 0) == 0);
  std::string added = v.body.substr(v.body.find(". ") + 2);
  CHECK(added.find("Tim") == std::string::npos);  // a new subject
  CHECK(added.find("yellow flowers.") != std::string::npos);  // reuses the problem's words
  CHECK(v.question == flowers_problem().question);
  CHECK(v.answer == flowers_problem().answer);
}

TEST_CASE("new-entity noise keeps the subject and swaps the entity") {
  const auto& pipe = test::pipeline();
  NoiseSpec spec = default_noise_spec(test::micro_corpus(), pipe, NoiseKind::NewEntity, 7);
  auto variants = make_noisy_variants(flowers_problem(), spec, pipe);
  REQUIRE(variants.size() == 1);
  std::string added = variants[0].body.substr(variants[0].body.find(". ") + 2);
  CHECK(added.rfind("Tim also has ", 0) == 0);
  CHECK(added.find("flower") == std::string::npos);
}

TEST_CASE("new-modifier noise uses the new-subject template with a fresh modifier") {
  const auto& pipe = test::pipeline();
  NoiseSpec spec = default_noise_spec(test::micro_corpus(), pipe, NoiseKind::NewModifier, 7);
  auto variants = make_noisy_variants(flowers_problem(), spec, pipe);
  REQUIRE(variants.size() == 1);
  std::string added = variants[0].body.substr(variants[0].body.find(". ") + 2);
  CHECK(added.find("Tim") == std::string::npos);
  CHECK(added.find("yellow") == std::string::npos);  // modifier pool excludes the problem's own
  CHECK(added.find("red") == std::string::npos);
  CHECK(added.find("flowers.") != std::string::npos);
}

TEST_CASE("noise preserves the gold answer byte for byte") {
  const auto& pipe = test::pipeline();
  for (NoiseKind kind : {NoiseKind::NewSubject, NoiseKind::NewEntity, NoiseKind::NewModifier}) {
    Dataset noisy = noisify_dataset(test::micro_corpus(), pipe, kind, 5);
    REQUIRE(noisy.problems.size() == test::micro_corpus().problems.size());
    for (size_t i = 0; i < noisy.problems.size(); ++i) {
      CHECK(noisy.problems[i].answer.str() == test::micro_corpus().problems[i].answer.str());
      CHECK(noisy.problems[i].question == test::micro_corpus().problems[i].question);
    }
  }
}

TEST_CASE("generation is a pure function of input and seed") {
  const auto& pipe = test::pipeline();
  Dataset a = noisify_dataset(test::micro_corpus(), pipe, NoiseKind::NewSubject, 42);
  Dataset b = noisify_dataset(test::micro_corpus(), pipe, NoiseKind::NewSubject, 42);
  Dataset c = noisify_dataset(test::micro_corpus(), pipe, NoiseKind::NewSubject, 43);
  CHECK(dataset_to_string(a) == dataset_to_string(b));
  CHECK(dataset_to_string(a) != dataset_to_string(c));
}

TEST_CASE("multiple variants draw distinct words from the pools") {
  const auto& pipe = test::pipeline();
  NoiseSpec spec = default_noise_spec(test::micro_corpus(), pipe, NoiseKind::NewSubject, 7);
  spec.count = 3;
  auto variants = make_noisy_variants(flowers_problem(), spec, pipe);
  REQUIRE(variants.size() == 3);
  CHECK(variants[0].body != variants[1].body);
  CHECK(variants[1].body != variants[2].body);
  for (const auto& v : variants) CHECK(v.answer == flowers_problem().answer);
}

TEST_CASE("an exhausted pool is a generation error") {
  const auto& pipe = test::pipeline();
  NoiseSpec spec;
  spec.kind = NoiseKind::NewSubject;
  spec.subjects = {"Tim"};  // already used by the problem
  CHECK_THROWS_WITH_AS(make_noisy_variants(flowers_problem(), spec, pipe),
                       doctest::Contains("pool exhausted"), Error);
}

TEST_CASE("every noisy variant stays within the annotator grammar") {
  const auto& pipe = test::pipeline();
  for (NoiseKind kind : {NoiseKind::NewSubject, NoiseKind::NewEntity, NoiseKind::NewModifier}) {
    Dataset noisy = noisify_dataset(test::micro_corpus(), pipe, kind, 9);
    for (const auto& p : noisy.problems) CHECK_NOTHROW(pipe.analyze(p));
  }
}
