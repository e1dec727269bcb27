#pragma once

#include <httplib.h>

#include <atomic>
#include <functional>
#include <thread>

#include "cpgscan/ml/bridge.hpp"

namespace cpgscan::test_support {

// Local model server on an ephemeral port answering with the in-process
// heuristic model. `mangle` can rewrite responses to simulate a broken server.
class LocalModelServer {
 public:
  using Mangle = std::function<void(const std::string& path, httplib::Response&)>;

  explicit LocalModelServer(Mangle mangle = {}) : mangle_(std::move(mangle)) {
    server_.Post("/classify", [this](const httplib::Request& req, httplib::Response& res) {
      ++hits_;
      auto body = Json::parse(req.body, nullptr, false);
      if (body.is_discarded() || !body.contains("items")) {
        res.status = 400;
        return;
      }
      std::vector<ml::ClassifyItem> items;
      for (const auto& i : body["items"]) items.push_back({i.at("id").get<Uid>(), i.at("code").get<std::string>()});
      Json out = {{"verdicts", Json::array()}};
      for (const auto& v : model_.classify(items))
        out["verdicts"].push_back({{"id", v.uid}, {"label", ml::to_string(v.label)}, {"score", v.score}});
      res.set_content(out.dump(), "application/json");
      if (mangle_) mangle_("/classify", res);
    });
    server_.Post("/pair", [this](const httplib::Request& req, httplib::Response& res) {
      ++hits_;
      auto body = Json::parse(req.body, nullptr, false);
      if (body.is_discarded() || !body.contains("source") || !body.contains("sink")) {
        res.status = 400;
        return;
      }
      auto p = model_.pair(body["source"].get<std::string>(), body["sink"].get<std::string>());
      res.set_content(Json{{"match", p.match}, {"score", p.score}}.dump(), "application/json");
      if (mangle_) mangle_("/pair", res);
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }

  ~LocalModelServer() {
    server_.stop();
    thread_.join();
  }

  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_); }
  int hits() const { return hits_.load(); }

 private:
  Mangle mangle_;
  ml::HeuristicProvider model_;
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
  std::atomic<int> hits_{0};
};

// A port with nothing listening on it.
inline int closed_port() {
  httplib::Server probe;
  int port = probe.bind_to_any_port("127.0.0.1");
  return port;  // released when `probe` goes out of scope
}

}  // namespace cpgscan::test_support
