#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mwp/learn.hpp"
#include "mwp/metrics.hpp"
#include "mwp/noise.hpp"
#include "mwp/text.hpp"

namespace py = pybind11;
using namespace mwp;

namespace {

PipelineConfig config_for(const std::string& asset_dir) {
  PipelineConfig cfg;
  cfg.asset_dir = asset_dir;
  return cfg;
}

MWProblem split_problem(const std::string& text) {
  MWProblem p;
  p.id = "py";
  size_t qmark = text.find_last_of('?');
  if (qmark == std::string::npos) throw ValidationError("problem text has no question sentence");
  size_t dot = text.rfind('.', qmark);
  size_t qbegin = dot == std::string::npos ? 0 : dot + 1;
  p.body = trim(text.substr(0, qbegin));
  p.question = trim(text.substr(qbegin, qmark - qbegin + 1));
  return p;
}

py::dict solve_dict(const Pipeline& pipe, const Models& models, const MWProblem& p) {
  SolveResult res = pipe.solve(p, models);
  py::dict out;
  out["answer"] = res.answer.str();
  out["answer_value"] = res.answer.to_double();
  out["solution_type"] = to_string(res.type);
  if (res.operands) {
    py::list ops;
    ops.append(res.call.first);
    ops.append(res.call.second);
    out["operands"] = ops;
  }
  out["trace"] = res.explain();
  return out;
}

}  // namespace

// Thin wrapper bundling the pipeline with trained models.
class Solver {
 public:
  explicit Solver(const std::string& asset_dir = "", const std::string& model_dir = "")
      : pipe_(config_for(asset_dir)) {
    if (model_dir.empty()) {
      Dataset micro = load_dataset(pipe_.asset_dir() + "/micro_corpus.jsonl");
      models_ = train(micro, pipe_);
    } else {
      models_ = Models::load(model_dir);
    }
  }

  py::dict solve(const std::string& text) const { return solve_dict(pipe_, models_, split_problem(text)); }

  std::string annotate(const std::string& text) const {
    return annotation_to_string(pipe_.annotator().annotate_text(text));
  }

  py::dict evaluate_file(const std::string& dataset_path) const {
    Report report = mwp::evaluate(load_dataset(dataset_path), models_, pipe_);
    py::dict out;
    out["accuracy"] = report.accuracy();
    out["total"] = report.total;
    out["report"] = report.to_text();
    return out;
  }

  py::dict perplexity_file(const std::string& dataset_path) const {
    PerplexityResult pp = mwp::perplexity(load_dataset(dataset_path), pipe_);
    py::dict out;
    out["expected_accuracy"] = pp.mean_accuracy.to_double();
    out["pp"] = pp.pp.to_double();
    out["counted"] = pp.counted;
    out["skipped"] = pp.skipped;
    return out;
  }

  void save_models(const std::string& dir) const { models_.save(dir); }

  std::vector<std::string> noisify(const std::string& text, const std::string& kind,
                                   uint64_t seed) const {
    Dataset ds;
    ds.problems.push_back(split_problem(text));
    ds.problems.back().answer = Rational(0);  // answer irrelevant for generation
    NoiseSpec spec = default_noise_spec(ds, pipe_, noise_kind_from_string(kind), seed);
    std::vector<std::string> out;
    for (const auto& v : make_noisy_variants(ds.problems.front(), spec, pipe_))
      out.push_back(v.text());
    return out;
  }

 private:
  Pipeline pipe_;
  Models models_;
};

PYBIND11_MODULE(_mwps, m) {
  m.doc() = "meaning-based math word problem solver";

  py::register_exception<Error>(m, "SolverError");

  py::class_<Solver>(m, "Solver")
      .def(py::init<const std::string&, const std::string&>(), py::arg("asset_dir") = "",
           py::arg("model_dir") = "")
      .def("solve", &Solver::solve, py::arg("text"), "solve a word problem, returns a dict")
      .def("annotate", &Solver::annotate, py::arg("text"),
           "tokenize/lemmatize/parse text, returns the annotation file format")
      .def("evaluate", &Solver::evaluate_file, py::arg("dataset_path"))
      .def("perplexity", &Solver::perplexity_file, py::arg("dataset_path"))
      .def("save_models", &Solver::save_models, py::arg("model_dir"))
      .def("noisify", &Solver::noisify, py::arg("text"), py::arg("kind"), py::arg("seed") = 1);

  m.def(
      "train_models",
      [](const std::string& dataset_path, const std::string& out_dir, const std::string& asset_dir) {
        Pipeline pipe(config_for(asset_dir));
        LabelReport report;
        Models models = train(load_dataset(dataset_path), pipe, &report);
        models.save(out_dir);
        return report.to_text();
      },
      py::arg("dataset_path"), py::arg("out_dir"), py::arg("asset_dir") = "",
      "train models on a dataset, returns the label report");

  m.attr("__version__") = "0.1.0";
}
