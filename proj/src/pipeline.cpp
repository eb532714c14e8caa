#include "mwp/pipeline.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "mwp/error.hpp"
#include "mwp/text.hpp"

namespace mwp {

PipelineConfig PipelineConfig::from_file(const std::string& path) {
  PipelineConfig cfg;
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file: " + path);
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("config line needs key = value: " + line);
    cfg.apply_line(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

void PipelineConfig::apply_line(const std::string& key, const std::string& value) {
  if (key == "asset_dir") asset_dir = value;
  else if (key == "sti_together_keyword") sti.together_keyword = value == "true" || value == "1";
  else if (key == "train_epochs") train.epochs = std::atoi(value.c_str());
  else if (key == "train_learning_rate") train.learning_rate = std::strtod(value.c_str(), nullptr);
  else if (key == "train_l2") train.l2 = std::strtod(value.c_str(), nullptr);
  else if (key == "saturation_budget") saturation_budget = std::atoi(value.c_str());
  else if (key == "seed") seed = static_cast<unsigned>(std::atoi(value.c_str()));
  else throw ParseError("unknown config key: " + key);
}

std::string resolve_asset_dir(const std::string& configured) {
  if (!configured.empty()) return configured;
  if (const char* env = std::getenv("MWP_ASSETS"); env && *env) return env;
#ifdef MWP_BUNDLED_ASSET_DIR
  return MWP_BUNDLED_ASSET_DIR;
#else
  return "assets";
#endif
}

void Models::save(const std::string& dir) const {
  std::filesystem::create_directories(dir);
  sti.save(dir + "/sti.model");
  std::ofstream out(dir + "/operand.model");
  if (!out) throw ParseError("cannot write model file in: " + dir);
  out << "[operand]\n" << operand.to_text();
  out << "[relation_prior]\n" << relation_prior.to_text();
  out << "[template_prior]\n";
  for (const auto& [tmpl, p] : template_priors) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", p);
    out << tmpl << " __prior__ " << buf << "\n";
  }
}

Models Models::load(const std::string& dir) {
  Models m;
  m.sti = LinearModel::load(dir + "/sti.model");
  std::ifstream in(dir + "/operand.model");
  if (!in) throw ParseError("cannot open model file: " + dir + "/operand.model");
  std::string line, section, operand_text, prior_text;
  while (std::getline(in, line)) {
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.front() == '[' && t.back() == ']') {
      section = t.substr(1, t.size() - 2);
      continue;
    }
    if (section == "operand") operand_text += t + "\n";
    else if (section == "relation_prior") prior_text += t + "\n";
    else if (section == "template_prior") {
      auto cols = split_ws(t);
      if (cols.size() != 3) throw ParseError("bad template prior line: " + t);
      m.template_priors[cols[0]] = std::strtod(cols[2].c_str(), nullptr);
    } else {
      throw ParseError("model line outside a section: " + t);
    }
  }
  m.operand = LinearModel::from_text(operand_text);
  m.relation_prior = RelationPrior::from_text(prior_text);
  return m;
}

Pipeline::Pipeline(PipelineConfig cfg) : cfg_(std::move(cfg)) {
  asset_dir_ = resolve_asset_dir(cfg_.asset_dir);
  lexicon_ = std::make_unique<Lexicon>(Lexicon::load(asset_dir_));
  annotator_ = std::make_unique<Annotator>(*lexicon_);
  rules_ = load_rules(asset_dir_ + "/rules.txt");
}

AnalyzedProblem Pipeline::analyze(const MWProblem& problem) const {
  AnalyzedProblem out;
  if (problem.annotation) {
    validate(*problem.annotation);
    out.annotation = *problem.annotation;
  } else {
    out.annotation = annotator_->annotate(problem);
  }
  out.extraction = extract_quantities(out.annotation, *lexicon_);
  out.base_facts = transform_body(out.extraction);
  out.facts = saturate(out.base_facts, rules_, cfg_.saturation_budget, &out.saturation);
  return out;
}

SolveResult Pipeline::solve_analyzed(AnalyzedProblem analysis, const Models& models) const {
  SolveResult res;
  StiFeatures features = extract_sti_features(analysis.extraction, analysis.annotation, cfg_.sti);
  auto [stype, scores] = predict_solution_type(features, models.sti);
  res.type = stype;
  res.type_scores = scores;
  if (is_arithmetic(stype)) {
    res.operands =
        select_operands(analysis.extraction, stype, models.operand, models.relation_prior, *lexicon_);
    res.call = transform_question(analysis.extraction, stype, &*res.operands);
  } else {
    res.call = transform_question(analysis.extraction, stype, nullptr);
  }
  res.answer = eval_utility(res.call, analysis.facts, analysis.extraction.quantities);
  res.analysis = std::move(analysis);
  return res;
}

SolveResult Pipeline::solve(const MWProblem& problem, const Models& models) const {
  return solve_analyzed(analyze(problem), models);
}

std::string SolveResult::explain() const {
  std::string out;
  out += "# body facts\n";
  for (const auto& f : analysis.base_facts.facts()) {
    out += f.str();
    out += "\n";
  }
  if (!analysis.saturation.derivations.empty()) {
    std::string last_rule;
    for (const auto& [rule, fact] : analysis.saturation.derivations) {
      if (rule != last_rule) {
        out += "# derived by rule " + rule + "\n";
        last_rule = rule;
      }
      out += fact.str();
      out += "\n";
    }
  }
  out += "# solution type: " + to_string(type) + "\n";
  if (operands) {
    out += "# operands: " + call.first + " " + call.second + " (r=" + std::to_string(operands->r) +
           ")\n";
  }
  out += call.str() + "\n";
  out += "answer(result)=" + answer.str() + "\n";
  return out;
}

}  // namespace mwp
