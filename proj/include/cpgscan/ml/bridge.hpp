#pragma once

#include <chrono>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "cpgscan/library/detectors.hpp"

namespace cpgscan::ml {

enum class Label { Source, Sink, None };

const char* to_string(Label label);
Label label_from_string(const std::string& s);

struct ClassifyItem {
  Uid id = 0;
  std::string code;
};

struct ClassifierVerdict {
  Uid uid = 0;
  Label label = Label::None;
  double score = 0;

  bool operator==(const ClassifierVerdict&) const = default;
};

struct PairScore {
  bool match = false;
  double score = 0;
};

struct PairVerdict {
  Uid source = 0;
  Uid sink = 0;
  bool matched = false;
  double score = 0;
};

// The two models behind the scan: a per-statement source/sink classifier and a
// source/sink pairing validator. Implementations throw ProviderUnavailable
// when they cannot answer.
class Provider {
 public:
  virtual ~Provider() = default;
  // One verdict per item, in item order.
  virtual std::vector<ClassifierVerdict> classify(const std::vector<ClassifyItem>& items) = 0;
  virtual PairScore pair(const std::string& source_code, const std::string& sink_code) = 0;
};

// In-process keyword model. Sources: input, gets, recv, argv, fgets. Sinks:
// exec, system, popen, eval. Keywords match whole identifiers; a statement
// with both kinds counts as a source.
class HeuristicProvider : public Provider {
 public:
  static const std::vector<std::string>& source_keywords();
  static const std::vector<std::string>& sink_keywords();

  std::vector<ClassifierVerdict> classify(const std::vector<ClassifyItem>& items) override;
  PairScore pair(const std::string& source_code, const std::string& sink_code) override;
};

struct HttpOptions {
  std::string base_url;  // scheme://host:port
  std::chrono::milliseconds timeout{2000};
  int attempts = 3;
  std::chrono::milliseconds backoff{100};  // doubled after each failed attempt
  std::size_t batch = 256;                 // items per /classify request
};

// Client of the model server: POST /classify and POST /pair with JSON bodies.
// Transport errors, non-200 answers and malformed bodies are retried; the
// last failure surfaces as ProviderUnavailable.
class HttpProvider : public Provider {
 public:
  explicit HttpProvider(HttpOptions options);
  ~HttpProvider() override;

  std::vector<ClassifierVerdict> classify(const std::vector<ClassifyItem>& items) override;
  PairScore pair(const std::string& source_code, const std::string& sink_code) override;

  std::size_t requests() const { return requests_; }

 private:
  Json post(const std::string& path, const Json& body);

  HttpOptions options_;
  std::size_t requests_ = 0;
};

// Code handed to the classifier: every line with leading whitespace removed.
std::string strip_indentation(const std::string& code);

// Verdicts for every plain and predicate statement, ascending uid.
std::vector<ClassifierVerdict> classify_statements(const CodeGraph& graph, Provider& provider);

struct ScanOptions {
  double threshold = 0.5;  // pair score needed for a match
  std::size_t max_depth = 512;
  // Calls to these stop a flow, as for the rule-based injection detector.
  std::set<std::string> sanitizers;
};

struct ScanResult {
  std::vector<ClassifierVerdict> verdicts;
  std::vector<PairVerdict> pairs;
  std::vector<library::Finding> findings;  // ML_TAINT, always Maybe
};

// Classifies, follows data flow downstream of every predicted source and asks
// the pair model about each predicted sink reached.
ScanResult ml_taint_scan(const CodeGraph& graph, Provider& provider, const ScanOptions& options = {});

}  // namespace cpgscan::ml
