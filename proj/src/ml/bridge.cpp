#include "cpgscan/ml/bridge.hpp"

#include <httplib.h>

#include <algorithm>
#include <thread>

#include "../library/internal.hpp"

namespace cpgscan::ml {

namespace {

bool is_word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// First keyword occurring in `code` as a whole identifier.
const std::string* find_keyword(const std::string& code, const std::vector<std::string>& keywords) {
  for (const auto& k : keywords)
    for (auto pos = code.find(k); pos != std::string::npos; pos = code.find(k, pos + 1)) {
      bool left = pos == 0 || !is_word_char(code[pos - 1]);
      bool right = pos + k.size() == code.size() || !is_word_char(code[pos + k.size()]);
      if (left && right) return &k;
    }
  return nullptr;
}

constexpr double kSourceScore = 0.9;
constexpr double kSinkScore = 0.8;
constexpr double kNoneScore = 0.95;
constexpr double kCompatible = 0.9;
constexpr double kIncompatible = 0.1;

}  // namespace

const char* to_string(Label label) {
  switch (label) {
    case Label::Source: return "source";
    case Label::Sink: return "sink";
    case Label::None: return "none";
  }
  return "none";
}

Label label_from_string(const std::string& s) {
  if (s == "source") return Label::Source;
  if (s == "sink") return Label::Sink;
  if (s == "none") return Label::None;
  throw Error(ErrorCode::InvalidArgument, "unknown label '" + s + "'");
}

const std::vector<std::string>& HeuristicProvider::source_keywords() {
  static const std::vector<std::string> k{"input", "gets", "recv", "argv", "fgets"};
  return k;
}

const std::vector<std::string>& HeuristicProvider::sink_keywords() {
  static const std::vector<std::string> k{"exec", "system", "popen", "eval"};
  return k;
}

std::vector<ClassifierVerdict> HeuristicProvider::classify(const std::vector<ClassifyItem>& items) {
  std::vector<ClassifierVerdict> out;
  out.reserve(items.size());
  for (const auto& item : items) {
    ClassifierVerdict v{item.id, Label::None, kNoneScore};
    if (find_keyword(item.code, source_keywords())) v = {item.id, Label::Source, kSourceScore};
    else if (find_keyword(item.code, sink_keywords())) v = {item.id, Label::Sink, kSinkScore};
    out.push_back(v);
  }
  return out;
}

PairScore HeuristicProvider::pair(const std::string& source_code, const std::string& sink_code) {
  // Every listed source feeds command or code execution, so each
  // (source, sink) keyword combination is compatible.
  bool ok = find_keyword(source_code, source_keywords()) && find_keyword(sink_code, sink_keywords());
  double score = ok ? kCompatible : kIncompatible;
  return {score >= 0.5, score};
}

HttpProvider::HttpProvider(HttpOptions options) : options_(std::move(options)) {
  if (options_.base_url.empty()) throw Error(ErrorCode::InvalidArgument, "model server url is empty");
  if (options_.attempts < 1) throw Error(ErrorCode::InvalidArgument, "model server attempts must be at least 1");
  if (options_.batch == 0) throw Error(ErrorCode::InvalidArgument, "model server batch size must be at least 1");
}

HttpProvider::~HttpProvider() = default;

Json HttpProvider::post(const std::string& path, const Json& body) {
  httplib::Client client(options_.base_url);
  if (!client.is_valid()) throw Error(ErrorCode::InvalidArgument, "invalid model server url '" + options_.base_url + "'");
  auto secs = std::chrono::duration_cast<std::chrono::seconds>(options_.timeout);
  auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(options_.timeout - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_write_timeout(secs.count(), usecs.count());

  std::string payload = body.dump();
  std::string last_error;
  auto delay = options_.backoff;
  for (int attempt = 0; attempt < options_.attempts; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(delay);
      delay *= 2;
    }
    ++requests_;
    auto res = client.Post(path, payload, "application/json");
    if (!res) {
      last_error = httplib::to_string(res.error());
      continue;
    }
    if (res->status != 200) {
      last_error = "HTTP " + std::to_string(res->status);
      continue;
    }
    auto parsed = Json::parse(res->body, nullptr, false);
    if (parsed.is_discarded()) {
      last_error = "response is not JSON";
      continue;
    }
    return parsed;
  }
  throw Error(ErrorCode::ProviderUnavailable,
              "model server " + options_.base_url + path + " failed after " + std::to_string(options_.attempts) +
                  " attempts: " + last_error);
}

std::vector<ClassifierVerdict> HttpProvider::classify(const std::vector<ClassifyItem>& items) {
  std::vector<ClassifierVerdict> out;
  out.reserve(items.size());
  for (std::size_t begin = 0; begin < items.size(); begin += options_.batch) {
    std::size_t end = std::min(items.size(), begin + options_.batch);
    Json req = {{"items", Json::array()}};
    for (std::size_t i = begin; i < end; ++i) req["items"].push_back({{"id", items[i].id}, {"code", items[i].code}});
    Json res = post("/classify", req);
    std::map<Uid, ClassifierVerdict> by_id;
    try {
      for (const auto& v : res.at("verdicts")) {
        ClassifierVerdict verdict{v.at("id").get<Uid>(), label_from_string(v.at("label").get<std::string>()),
                                  v.at("score").get<double>()};
        by_id[verdict.uid] = verdict;
      }
    } catch (const std::exception& e) {
      throw Error(ErrorCode::ProviderUnavailable, std::string("malformed /classify response: ") + e.what());
    }
    for (std::size_t i = begin; i < end; ++i) {
      auto it = by_id.find(items[i].id);
      if (it == by_id.end())
        throw Error(ErrorCode::ProviderUnavailable,
                    "/classify response has no verdict for item " + std::to_string(items[i].id));
      out.push_back(it->second);
    }
  }
  return out;
}

PairScore HttpProvider::pair(const std::string& source_code, const std::string& sink_code) {
  Json res = post("/pair", {{"source", source_code}, {"sink", sink_code}});
  try {
    return {res.at("match").get<bool>(), res.at("score").get<double>()};
  } catch (const std::exception& e) {
    throw Error(ErrorCode::ProviderUnavailable, std::string("malformed /pair response: ") + e.what());
  }
}

std::string strip_indentation(const std::string& code) {
  std::string out;
  std::size_t start = 0;
  while (start <= code.size()) {
    auto nl = code.find('\n', start);
    auto line = code.substr(start, nl == std::string::npos ? std::string::npos : nl - start);
    auto first = line.find_first_not_of(" \t");
    out += first == std::string::npos ? "" : line.substr(first);
    if (nl == std::string::npos) break;
    out += '\n';
    start = nl + 1;
  }
  return out;
}

std::vector<ClassifierVerdict> classify_statements(const CodeGraph& graph, Provider& provider) {
  std::vector<ClassifyItem> items;
  for (const auto& n : graph.nodes())
    if (n.kind == StmtKind::Plain || n.kind == StmtKind::Predicate) items.push_back({n.uid, strip_indentation(n.code)});
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  auto verdicts = provider.classify(items);
  if (verdicts.size() != items.size())
    throw Error(ErrorCode::ProviderUnavailable, "classifier returned " + std::to_string(verdicts.size()) +
                                                    " verdicts for " + std::to_string(items.size()) + " statements");
  for (std::size_t i = 0; i < items.size(); ++i)
    if (verdicts[i].uid != items[i].id)
      throw Error(ErrorCode::ProviderUnavailable, "classifier verdicts are out of order");
  return verdicts;
}

ScanResult ml_taint_scan(const CodeGraph& graph, Provider& provider, const ScanOptions& options) {
  ScanResult result;
  result.verdicts = classify_statements(graph, provider);
  std::vector<Uid> sources, sinks;
  for (const auto& v : result.verdicts) {
    if (v.label == Label::Source) sources.push_back(v.uid);
    if (v.label == Label::Sink) sinks.push_back(v.uid);
  }
  std::set<Uid> barrier;
  for (const auto& name : options.sanitizers)
    for (Uid u : graph.call_sites(name)) barrier.insert(u);

  auto witnesses = query::taint_reachability(sources, sinks, barrier, graph, options.max_depth);
  std::map<std::pair<std::string, std::string>, PairScore> asked;
  for (auto& w : witnesses) {
    Uid src = w.path.front(), snk = w.path.back();
    if (src == snk) continue;
    auto key = std::make_pair(strip_indentation(graph.node(src).code), strip_indentation(graph.node(snk).code));
    auto it = asked.find(key);
    if (it == asked.end()) it = asked.emplace(key, provider.pair(key.first, key.second)).first;
    PairVerdict pv{src, snk, it->second.score >= options.threshold, it->second.score};
    result.pairs.push_back(pv);
    if (!pv.matched) continue;
    w.must = false;
    result.findings.push_back(library::make_finding(library::RuleId::MlTaint, std::move(w), graph));
  }
  library::sort_findings(result.findings);
  return result;
}

}  // namespace cpgscan::ml
