#include <doctest.h>

#include "test_support.hpp"

using namespace mwp;

TEST_CASE("walk-to-school features: a negative directly-related action, no 'left' keyword") {
  const auto& pipe = test::pipeline();
  AnalyzedProblem a = pipe.analyze(test::example("walk"));
  StiFeatures f = extract_sti_features(a.extraction, a.annotation);
  CHECK(f[3]);        // exists R=2 with action negative, via "save"
  CHECK_FALSE(f[22]); // no "left" in the question
  CHECK(f[2]);        // the 86-minute walk is a positive action
  CHECK(f[7]);        // T_U < T of the positive "takes"
  CHECK(f[8]);        // T_U < T of the negative "would save"
}

TEST_CASE("the together keyword joins feature 20 only behind the config flag") {
  const auto& pipe = test::pipeline();
  Annotation ann = pipe.annotator().annotate_text(
      "Sally found 9 seashells. Tom found 7 seashells. Jessica found 5 seashells. "
      "How many seashells did they find together?");
  Extraction ex = extract_quantities(ann, pipe.lexicon());
  StiFeatures off = extract_sti_features(ex, ann, {});
  CHECK_FALSE(off[20]);
  StiConfig cfg;
  cfg.together_keyword = true;
  StiFeatures on = extract_sti_features(ex, ann, cfg);
  CHECK(on[20]);
}

TEST_CASE("feature 6 fires on exactly two directly-related change actions") {
  const auto& pipe = test::pipeline();
  AnalyzedProblem flowers = pipe.analyze(test::example("flowers"));
  CHECK(extract_sti_features(flowers.extraction, flowers.annotation)[6]);
  AnalyzedProblem balloons = pipe.analyze(test::example("balloons"));
  CHECK_FALSE(extract_sti_features(balloons.extraction, balloons.annotation)[6]);  // statives
}

TEST_CASE("keyword and pattern features") {
  const auto& pipe = test::pipeline();
  auto features_for = [&](const std::string& text) {
    Annotation ann = pipe.annotator().annotate_text(text);
    Extraction ex = extract_quantities(ann, pipe.lexicon());
    return extract_sti_features(ex, ann);
  };
  StiFeatures more = features_for("Tom found 9 apples. Sara found 5 apples. "
                                  "How many more apples did Tom find than Sara?");
  CHECK(more[21]);
  StiFeatures left = features_for("Dan had 7 pencils. He gave 3 pencils to Russ. "
                                  "How many pencils are left?");
  CHECK(left[22]);
  StiFeatures each = features_for("Tom pays 20 dollars for 4 books. How much does each book cost?");
  CHECK(each[25]);
  StiFeatures rest = features_for("Sara has 10 flowers. 4 flowers are yellow. "
                                  "The rest are red flowers. How many red flowers does Sara have?");
  CHECK(rest[24]);
}

TEST_CASE("every feature toggles over the bundled corpus") {
  const auto& pipe = test::pipeline();
  std::array<bool, 26> seen_true{};
  std::array<bool, 26> seen_false{};
  auto scan = [&](const Dataset& ds) {
    for (const auto& p : ds.problems) {
      AnalyzedProblem a = pipe.analyze(p);
      StiFeatures f = extract_sti_features(a.extraction, a.annotation);
      for (int i = 0; i < 26; ++i) {
        if (f.f[i]) seen_true[i] = true;
        else seen_false[i] = true;
      }
    }
  };
  scan(test::micro_corpus());
  scan(test::worked_examples());
  for (int i = 0; i < 26; ++i) {
    INFO("feature f" << i + 1);
    CHECK(seen_true[i]);
    CHECK(seen_false[i]);
  }
}

TEST_CASE("prediction breaks ties by the fixed class order") {
  std::vector<std::string> classes;
  for (SolutionType s : all_solution_types()) classes.push_back(to_string(s));
  LinearModel m(classes, sti_feature_names());
  // all weights zero: every class scores the same; Addition wins the tie
  StiFeatures none;
  auto [type, scores] = predict_solution_type(none, m);
  CHECK(type == SolutionType::Addition);
  // the largest bias wins when features are all zero
  m.set_weight("Sum", "__bias__", 1.0);
  CHECK(predict_solution_type(none, m).first == SolutionType::Sum);
}

TEST_CASE("prediction is scale invariant at the argmax level") {
  const auto& pipe = test::pipeline();
  const auto& models = test::trained_models();
  LinearModel scaled = models.sti;
  for (const auto& cls : scaled.classes()) {
    for (const auto& name : scaled.feature_names())
      scaled.set_weight(cls, name, 3.0 * scaled.weight(cls, name));
    scaled.set_weight(cls, "__bias__", 3.0 * scaled.weight(cls, "__bias__"));
  }
  for (const auto& p : test::micro_corpus().problems) {
    AnalyzedProblem a = pipe.analyze(p);
    StiFeatures f = extract_sti_features(a.extraction, a.annotation);
    CHECK(predict_solution_type(f, models.sti).first == predict_solution_type(f, scaled).first);
  }
}

TEST_CASE("a model missing classes is a configuration error") {
  LinearModel m({"Addition", "Sum"}, sti_feature_names());
  StiFeatures f;
  CHECK_THROWS_AS(predict_solution_type(f, m), ContractError);
}
