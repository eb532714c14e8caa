#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "mwp/learn.hpp"
#include "mwp/metrics.hpp"
#include "mwp/noise.hpp"
#include "mwp/text.hpp"

namespace {

using namespace mwp;
using mwp::trim;

struct CommonOpts {
  std::string config_path;
  std::string asset_dir;
};

PipelineConfig make_config(const CommonOpts& opts) {
  PipelineConfig cfg;
  if (!opts.config_path.empty()) cfg = PipelineConfig::from_file(opts.config_path);
  if (!opts.asset_dir.empty()) cfg.asset_dir = opts.asset_dir;
  return cfg;
}

Models obtain_models(const Pipeline& pipe, const std::string& model_dir) {
  if (!model_dir.empty()) return Models::load(model_dir);
  // fall back to training on the bundled corpus (fast and deterministic)
  Dataset micro = load_dataset(pipe.asset_dir() + "/micro_corpus.jsonl");
  return train(micro, pipe);
}

MWProblem problem_from_args(const std::string& text, const std::string& in_path,
                            const std::string& annotation_path) {
  MWProblem p;
  p.id = "cli";
  std::string full = text;
  if (!in_path.empty()) {
    std::ifstream in(in_path);
    if (!in) throw ParseError("cannot open problem file: " + in_path);
    std::stringstream buf;
    buf << in.rdbuf();
    full = trim(buf.str());
  }
  size_t split = full.find_last_of('?');
  if (split == std::string::npos) throw ValidationError("problem text has no question sentence");
  size_t qstart = full.rfind('.', split);
  size_t qbegin = qstart == std::string::npos ? 0 : qstart + 1;
  p.body = trim(full.substr(0, qbegin));
  p.question = trim(full.substr(qbegin, split - qbegin + 1));
  if (!annotation_path.empty()) p.annotation = read_annotation(annotation_path);
  return p;
}

int run_solve(const CommonOpts& common, const std::string& text, const std::string& in_path,
              const std::string& annotation_path, const std::string& model_dir, bool explain) {
  Pipeline pipe(make_config(common));
  Models models = obtain_models(pipe, model_dir);
  MWProblem p = problem_from_args(text, in_path, annotation_path);
  SolveResult res = pipe.solve(p, models);
  if (explain)
    std::cout << res.explain();
  else
    std::cout << res.answer.str() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"meaning-based math word problem solver"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags are accepted after the subcommand too
  CommonOpts common;
  app.add_option("--config", common.config_path, "key = value configuration file");
  app.add_option("--assets", common.asset_dir, "asset directory (default: MWP_ASSETS or bundled)");

  std::string text, in_path, annotation_path, model_dir, data_path, out_path, report_path, kind;
  unsigned seed = 1;

  auto* solve = app.add_subcommand("solve", "solve a problem and print the answer");
  solve->add_option("--text", text, "problem text (body and question)");
  solve->add_option("--in", in_path, "file with the problem text");
  solve->add_option("--annotation", annotation_path, "external annotation file");
  solve->add_option("--models", model_dir, "trained model directory");
  bool explain_flag = false;
  solve->add_flag("--explain", explain_flag, "print the logic-form trace");

  auto* explain = app.add_subcommand("explain", "solve and print the logic-form trace");
  explain->add_option("--text", text, "problem text (body and question)");
  explain->add_option("--in", in_path, "file with the problem text");
  explain->add_option("--annotation", annotation_path, "external annotation file");
  explain->add_option("--models", model_dir, "trained model directory");

  auto* train_cmd = app.add_subcommand("train", "weakly supervised training");
  train_cmd->add_option("--data", data_path, "dataset file")->required();
  train_cmd->add_option("--out", out_path, "output model directory")->required();
  train_cmd->add_option("--seed", seed, "random seed");
  train_cmd->add_option("--report", report_path, "write the training report here");

  auto* eval_cmd = app.add_subcommand("eval", "evaluate a model over a dataset");
  eval_cmd->add_option("--data", data_path, "dataset file")->required();
  eval_cmd->add_option("--models", model_dir, "trained model directory")->required();
  eval_cmd->add_option("--report", report_path, "write the evaluation report here");

  auto* pp_cmd = app.add_subcommand("perplexity", "dataset difficulty measure");
  pp_cmd->add_option("--data", data_path, "dataset file")->required();

  auto* noisify = app.add_subcommand("noisify", "inject irrelevant quantities");
  noisify->add_option("--kind", kind, "new-subject|new-entity|new-modifier")->required();
  noisify->add_option("--seed", seed, "random seed");
  noisify->add_option("--in", data_path, "input dataset")->required();
  noisify->add_option("--out", out_path, "output dataset")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    if (solve->parsed()) return run_solve(common, text, in_path, annotation_path, model_dir, explain_flag);
    if (explain->parsed()) return run_solve(common, text, in_path, annotation_path, model_dir, true);
    if (train_cmd->parsed()) {
      PipelineConfig cfg = make_config(common);
      cfg.seed = seed;
      Pipeline pipe(cfg);
      Dataset ds = load_dataset(data_path);
      LabelReport report;
      Models models = mwp::train(ds, pipe, &report);
      models.save(out_path);
      std::cout << report.to_text();
      if (!report_path.empty()) {
        std::ofstream out(report_path);
        out << report.to_text();
      }
      return 0;
    }
    if (eval_cmd->parsed()) {
      Pipeline pipe(make_config(common));
      Dataset ds = load_dataset(data_path);
      Models models = Models::load(model_dir);
      Report report = evaluate(ds, models, pipe);
      std::cout << report.to_text();
      if (!report_path.empty()) {
        std::ofstream out(report_path);
        out << report.to_text();
      }
      return 0;
    }
    if (pp_cmd->parsed()) {
      Pipeline pipe(make_config(common));
      Dataset ds = load_dataset(data_path);
      PerplexityResult pp = perplexity(ds, pipe);
      std::printf("expected_accuracy=%.6f\n", pp.mean_accuracy.to_double());
      std::printf("pp=%.6f\n", pp.pp.to_double());
      std::printf("counted=%d\nskipped=%d\n", pp.counted, pp.skipped);
      return 0;
    }
    if (noisify->parsed()) {
      Pipeline pipe(make_config(common));
      Dataset ds = load_dataset(data_path);
      Dataset noisy = noisify_dataset(ds, pipe, noise_kind_from_string(kind), seed);
      save_dataset(noisy, out_path);
      std::cout << "wrote " << noisy.problems.size() << " variants to " << out_path << "\n";
      return 0;
    }
  } catch (const AnnotationError& e) {
    std::cerr << "annotation error: " << e.what() << "\n";
    return 1;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 1;
  } catch (const ArithmeticError& e) {
    std::cerr << "arithmetic error: " << e.what() << "\n";
    return 1;
  } catch (const InferenceError& e) {
    std::cerr << "inference error: " << e.what() << "\n";
    return 1;
  } catch (const ContractError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
