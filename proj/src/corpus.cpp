#include "mwp/corpus.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "mwp/error.hpp"
#include "mwp/lexicon.hpp"
#include "mwp/text.hpp"

namespace mwp {

const std::string& to_string(Tense t) {
  static const std::string names[] = {"Past", "Present", "Future"};
  return names[static_cast<int>(t)];
}

const std::string& to_string(Aspect a) {
  static const std::string names[] = {"Perfect", "Simple", "Progressive"};
  return names[static_cast<int>(a)];
}

Tense tense_from_string(const std::string& s) {
  if (s == "Past") return Tense::Past;
  if (s == "Present") return Tense::Present;
  if (s == "Future") return Tense::Future;
  throw ValidationError("tense label outside {Past, Present, Future}: " + s);
}

Aspect aspect_from_string(const std::string& s) {
  if (s == "Perfect") return Aspect::Perfect;
  if (s == "Simple") return Aspect::Simple;
  if (s == "Progressive") return Aspect::Progressive;
  throw ValidationError("aspect label outside {Perfect, Simple, Progressive}: " + s);
}

std::string Sentence::text() const {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty() && t.pos != "PUNCT") out += " ";
    out += t.surface;
  }
  return out;
}

int Annotation::question_index() const {
  for (int i = static_cast<int>(sentences.size()) - 1; i >= 0; --i)
    if (sentences[i].is_question()) return i;
  return -1;
}

void validate(const Annotation& ann) {
  for (size_t si = 0; si < ann.sentences.size(); ++si) {
    const auto& sent = ann.sentences[si];
    int n = static_cast<int>(sent.tokens.size());
    int roots = 0;
    for (int i = 0; i < n; ++i) {
      const Token& tok = sent.tokens[i];
      if (tok.head < 0 || tok.head > n)
        throw ValidationError("sentence " + std::to_string(si + 1) + ": head index " +
                              std::to_string(tok.head) + " out of range");
      if (tok.head == 0) ++roots;
      if (tok.head == i + 1)
        throw ValidationError("sentence " + std::to_string(si + 1) + ": token " +
                              std::to_string(i + 1) + " is its own head");
      if (tok.tense.has_value() != tok.aspect.has_value())
        throw ValidationError("sentence " + std::to_string(si + 1) +
                              ": tense and aspect must be set together");
    }
    if (roots != 1)
      throw ValidationError("sentence " + std::to_string(si + 1) + ": expected exactly one root, got " +
                            std::to_string(roots));
    // cycle check: walking heads from any token must reach the root
    for (int i = 0; i < n; ++i) {
      int cur = i + 1;
      int steps = 0;
      while (cur != 0) {
        cur = sent.tokens[cur - 1].head;
        if (++steps > n)
          throw ValidationError("sentence " + std::to_string(si + 1) + ": cycle in dependency edges");
      }
    }
  }
}

namespace {

bool body_has_numeric_token(const std::string& body) {
  std::istringstream in(body);
  std::string word;
  while (in >> word) {
    while (!word.empty() && (word.back() == '.' || word.back() == ',' || word.back() == '!')) word.pop_back();
    if (Lexicon::number_value(word)) return true;
  }
  return false;
}

MWProblem problem_from_json(const nlohmann::json& obj, int line_no) {
  auto fail = [&](const std::string& msg) {
    throw ParseError("dataset line " + std::to_string(line_no) + ": " + msg);
  };
  if (!obj.is_object()) fail("record is not an object");
  for (const char* key : {"id", "body", "question", "answer"})
    if (!obj.contains(key)) fail(std::string("missing field '") + key + "'");
  MWProblem p;
  p.id = obj.at("id").get<std::string>();
  p.body = obj.at("body").get<std::string>();
  p.question = obj.at("question").get<std::string>();
  const auto& ans = obj.at("answer");
  try {
    if (ans.is_string())
      p.answer = Rational::parse(ans.get<std::string>());
    else if (ans.is_number_integer())
      p.answer = Rational(ans.get<long long>());
    else if (ans.is_number_float())
      p.answer = Rational::parse(ans.dump());  // shortest round-trip decimal
    else
      fail("answer must be a number or a numeric string");
  } catch (const ParseError& e) {
    fail(std::string("bad answer literal: ") + e.what());
  }
  if (p.question.empty() || p.question.back() != '?')
    fail("question must be a single sentence ending in '?'");
  if (p.question.find('?') != p.question.size() - 1 || p.question.find('.') != std::string::npos)
    fail("question must be a single sentence");
  if (!body_has_numeric_token(p.body)) fail("body contains no numeric quantity token");
  return p;
}

}  // namespace

Dataset dataset_from_string(const std::string& text, const std::string& name) {
  Dataset ds;
  ds.name = name;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  std::set<std::string> ids;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    nlohmann::json obj = nlohmann::json::parse(line, nullptr, false);
    if (obj.is_discarded())
      throw ParseError("dataset line " + std::to_string(line_no) + ": malformed record");
    MWProblem p = problem_from_json(obj, line_no);
    if (!ids.insert(p.id).second)
      throw ValidationError("dataset line " + std::to_string(line_no) + ": duplicate id '" + p.id + "'");
    ds.problems.push_back(std::move(p));
  }
  return ds;
}

Dataset load_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open dataset file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  std::string name = path;
  size_t slash = name.find_last_of('/');
  if (slash != std::string::npos) name = name.substr(slash + 1);
  return dataset_from_string(buf.str(), name);
}

std::string dataset_to_string(const Dataset& ds) {
  std::string out;
  for (const auto& p : ds.problems) {
    nlohmann::json obj;
    obj["id"] = p.id;
    obj["body"] = p.body;
    obj["question"] = p.question;
    obj["answer"] = p.answer.str();
    out += obj.dump();
    out += "\n";
  }
  return out;
}

void save_dataset(const Dataset& ds, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write dataset file: " + path);
  out << dataset_to_string(ds);
}

std::string annotation_to_string(const Annotation& ann) {
  std::string out;
  for (size_t si = 0; si < ann.sentences.size(); ++si) {
    if (si > 0) out += "\n";
    const auto& sent = ann.sentences[si];
    for (size_t i = 0; i < sent.tokens.size(); ++i) {
      const Token& t = sent.tokens[i];
      out += std::to_string(i + 1);
      out += "\t" + t.surface + "\t" + t.lemma + "\t" + t.pos + "\t" + std::to_string(t.head) + "\t" +
             t.relation + "\t" + (t.tense ? to_string(*t.tense) : "_") + "\t" +
             (t.aspect ? to_string(*t.aspect) : "_") + "\n";
    }
  }
  return out;
}

Annotation annotation_from_string(const std::string& text) {
  Annotation ann;
  Sentence cur;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  int expected_index = 1;
  auto flush = [&] {
    if (!cur.tokens.empty()) {
      ann.sentences.push_back(cur);
      cur = Sentence{};
      expected_index = 1;
    }
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = trim(line);
    if (t.empty()) {
      flush();
      continue;
    }
    auto cols = split_char(t, '\t');
    if (cols.size() == 1) cols = split_ws(t);  // accept space-separated too
    if (cols.size() != 8)
      throw ParseError("annotation line " + std::to_string(line_no) + ": expected 8 columns");
    int idx = std::atoi(cols[0].c_str());
    if (idx != expected_index)
      throw ParseError("annotation line " + std::to_string(line_no) + ": token index " + cols[0] +
                       ", expected " + std::to_string(expected_index));
    ++expected_index;
    Token tok;
    tok.surface = cols[1];
    tok.lemma = cols[2];
    tok.pos = cols[3];
    tok.head = std::atoi(cols[4].c_str());
    tok.relation = cols[5];
    if (cols[6] != "_") tok.tense = tense_from_string(cols[6]);
    if (cols[7] != "_") tok.aspect = aspect_from_string(cols[7]);
    cur.tokens.push_back(std::move(tok));
  }
  flush();
  validate(ann);
  return ann;
}

Annotation read_annotation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open annotation file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return annotation_from_string(buf.str());
}

void write_annotation(const Annotation& ann, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write annotation file: " + path);
  out << annotation_to_string(ann);
}

}  // namespace mwp
