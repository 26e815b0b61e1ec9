#include "mars/records.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_set>

#include "json.hpp"

namespace mars {

namespace {

using nlohmann::json;

// Schema mismatches surface as ParseError so callers always get a line.
struct SchemaError {
  std::string what;
};

const json& require(const json& obj, const char* key, const std::string& ctx) {
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError{ctx + "missing field '" + key + "'"};
  return *it;
}

std::string as_string(const json& v, const std::string& ctx) {
  if (!v.is_string()) throw SchemaError{ctx + "expected string"};
  return v.get<std::string>();
}

Generation parse_generation(const json& v, const std::string& ctx) {
  if (!v.is_object()) throw SchemaError{ctx + "expected object"};
  Generation gen;
  gen.text = as_string(require(v, "text", ctx), ctx + "text: ");
  const json& tokens = require(v, "tokens", ctx);
  if (!tokens.is_array()) throw SchemaError{ctx + "tokens: expected array"};
  gen.tokens.reserve(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string tctx = ctx + "tokens[" + std::to_string(i) + "].";
    const json& t = tokens[i];
    if (!t.is_object()) throw SchemaError{tctx + " expected object"};
    TokenProb tok;
    tok.text = as_string(require(t, "text", tctx), tctx + "text: ");
    const json& lp = require(t, "logprob", tctx);
    if (!lp.is_number()) throw SchemaError{tctx + "logprob: expected number"};
    tok.logprob = lp.get<double>();
    gen.tokens.push_back(std::move(tok));
  }
  return gen;
}

// Applies TokenProb/Generation invariants in place; returns an error
// message or empty string.
std::string validate_generation(Generation& gen, const std::string& where) {
  if (gen.tokens.empty()) return where + " has no tokens";
  for (std::size_t i = 0; i < gen.tokens.size(); ++i) {
    auto& tok = gen.tokens[i];
    const std::string tw = where + " token " + std::to_string(i);
    if (tok.text.empty()) return tw + " has empty text";
    if (!std::isfinite(tok.logprob)) return tw + " has non-finite logprob";
    if (tok.logprob > kLogprobClampThreshold) {
      return tw + " has positive logprob " + std::to_string(tok.logprob);
    }
    if (tok.logprob > 0.0) tok.logprob = 0.0;
  }
  if (detokenize(gen.tokens) != gen.text) {
    return where + " text does not equal the concatenated token texts";
  }
  return {};
}

nlohmann::ordered_json generation_to_json(const Generation& gen) {
  auto tokens = nlohmann::ordered_json::array();
  for (const auto& t : gen.tokens) {
    nlohmann::ordered_json tj;
    tj["text"] = t.text;
    tj["logprob"] = t.logprob;
    tokens.push_back(std::move(tj));
  }
  nlohmann::ordered_json out;
  out["text"] = gen.text;
  out["tokens"] = std::move(tokens);
  return out;
}

}  // namespace

std::vector<GenerationRecord> ingest_records(std::istream& in) {
  std::vector<GenerationRecord> records;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;

    json doc;
    try {
      doc = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(line_no, std::string("malformed JSON: ") + e.what());
    }

    GenerationRecord rec;
    try {
      if (!doc.is_object()) throw SchemaError{"expected a JSON object"};
      rec.id = as_string(require(doc, "id", ""), "id: ");
      rec.question = as_string(require(doc, "question", ""), "question: ");
      rec.answer = parse_generation(require(doc, "answer", ""), "answer.");
      if (auto it = doc.find("samples"); it != doc.end() && !it->is_null()) {
        if (!it->is_array()) throw SchemaError{"samples: expected array"};
        for (std::size_t i = 0; i < it->size(); ++i) {
          rec.samples.push_back(parse_generation(
              (*it)[i], "samples[" + std::to_string(i) + "]."));
        }
      }
      if (auto it = doc.find("correctness"); it != doc.end() && !it->is_null()) {
        if (!it->is_boolean()) {
          throw SchemaError{"correctness: expected bool or null"};
        }
        rec.correctness = it->get<bool>();
      }
    } catch (const SchemaError& e) {
      throw ParseError(line_no, e.what);
    }

    std::string err = validate_generation(rec.answer, "answer");
    for (std::size_t i = 0; err.empty() && i < rec.samples.size(); ++i) {
      err = validate_generation(rec.samples[i],
                                "sample " + std::to_string(i));
    }
    if (err.empty() && !seen.insert(rec.id).second) err = "duplicate id";
    if (!err.empty()) {
      throw ValidationError("line " + std::to_string(line_no) + ": record '" +
                            rec.id + "': " + err);
    }
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<GenerationRecord> ingest_records_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return ingest_records(in);
}

std::string serialize_record(const GenerationRecord& record) {
  // ordered_json keeps schema field order in the output line.
  nlohmann::ordered_json out;
  out["id"] = record.id;
  out["question"] = record.question;
  out["answer"] = generation_to_json(record.answer);
  auto samples = nlohmann::ordered_json::array();
  for (const auto& s : record.samples) samples.push_back(generation_to_json(s));
  out["samples"] = std::move(samples);
  if (record.correctness) {
    out["correctness"] = *record.correctness;
  } else {
    out["correctness"] = nullptr;
  }
  return out.dump();
}

void write_records(std::ostream& out,
                   const std::vector<GenerationRecord>& records) {
  for (const auto& r : records) out << serialize_record(r) << '\n';
}

}  // namespace mars
