#include <tuple>

#include "cpgscan/library/detectors.hpp"

namespace cpgscan::library {

namespace {

void finish(RuleScore& s) {
  std::size_t predicted = s.true_positives + s.false_positives;
  s.precision = predicted ? 100.0 * static_cast<double>(s.true_positives) / static_cast<double>(predicted) : 100.0;
  s.recall = s.expected ? 100.0 * static_cast<double>(s.true_positives) / static_cast<double>(s.expected) : 100.0;
}

std::map<std::string, RuleScore> score(const std::set<std::tuple<std::string, std::string, int>>& predicted,
                                       const GroundTruth& truth) {
  std::map<std::string, RuleScore> out;
  RuleScore overall;
  for (const auto& [id, expected] : truth.cases)
    for (const auto& [rule, _] : expected) {
      ++out[rule].expected;
      ++overall.expected;
    }
  for (const auto& [id, rule, line] : predicted) {
    const auto& expected = truth.cases.at(id);
    bool hit = expected.count({rule, line}) != 0;
    auto& s = out[rule];
    (hit ? s.true_positives : s.false_positives)++;
    (hit ? overall.true_positives : overall.false_positives)++;
  }
  for (auto& [_, s] : out) finish(s);
  finish(overall);
  out["overall"] = overall;
  return out;
}

Json rule_json(const std::map<std::string, RuleScore>& m) {
  Json out = Json::object();
  for (const auto& [rule, s] : m)
    out[rule] = {{"true_positives", s.true_positives},
                 {"false_positives", s.false_positives},
                 {"expected", s.expected},
                 {"precision", s.precision},
                 {"recall", s.recall}};
  return out;
}

}  // namespace

std::string case_id(const std::string& file) {
  auto slash = file.rfind('/');
  auto dot = file.rfind('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return file;
  return file.substr(0, dot);
}

GroundTruth truth_from_json(const Json& j) {
  GroundTruth t;
  try {
    for (const auto& [id, list] : j.at("cases").items()) {
      auto& expected = t.cases[id];
      for (const auto& e : list) expected.insert({e.at("rule").get<std::string>(), e.at("line").get<int>()});
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("malformed ground truth: ") + e.what());
  }
  return t;
}

CorpusScore score_corpus(const std::vector<Finding>& findings, const GroundTruth& truth) {
  std::set<std::tuple<std::string, std::string, int>> must, all;
  for (const auto& f : findings) {
    std::string id = case_id(f.primary_location.file);
    if (!truth.cases.count(id)) throw Error(ErrorCode::UnknownCase, "finding in '" + id + "' which is not a corpus case");
    auto key = std::make_tuple(id, std::string(to_string(f.rule)), f.primary_location.line);
    all.insert(key);
    if (f.confidence == Confidence::Must) must.insert(key);
  }
  return {score(must, truth), score(all, truth)};
}

Json score_to_json(const CorpusScore& s) { return {{"must", rule_json(s.must)}, {"must_and_maybe", rule_json(s.all)}}; }

}  // namespace cpgscan::library
