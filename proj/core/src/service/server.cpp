// Copyright 2026 The guardfix Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "guardfix/service/server.hpp"

#include <mutex>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "guardfix/service/commands.hpp"
#include "guardfix/service/store.hpp"

namespace guardfix::service {

namespace {

void send_json(httplib::Response& res, int status, const nlohmann::json& body) {
  res.status = status;
  res.set_content(body.dump(2) + "\n", "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& message) {
  send_json(res, status, {{"error", message}});
}

nlohmann::json decision_json(const DecisionRecord& d) {
  nlohmann::json j = {{"state", to_string(d.state)}};
  if (d.revalidated) j["revalidated"] = *d.revalidated;
  if (!d.note.empty()) j["note"] = d.note;
  return j;
}

}  // namespace

bool is_loopback(const std::string& host) {
  return host == "127.0.0.1" || host == "localhost" || host == "::1" || host.rfind("127.", 0) == 0;
}

struct ReviewServer::Impl {
  std::string root;
  std::string run_id;
  httplib::Server server;
  std::thread thread;
  std::mutex mutex;
  int port = 0;

  FindingStore store() { return FindingStore::open(root, run_id); }

  void routes() {
    server.new_task_queue = [] { return new httplib::ThreadPool(1); };

    server.Get("/api/status", [this](const httplib::Request&, httplib::Response& res) {
      std::lock_guard lock(mutex);
      auto s = store();
      nlohmann::json counts = {{"pending", 0}, {"accepted", 0}, {"rejected", 0}, {"applied", 0}};
      for (const auto& [id, d] : s.decisions()) counts[to_string(d.state)] = counts[to_string(d.state)].get<int>() + 1;
      nlohmann::json body = {{"schema_version", kSchemaVersion},
                             {"run_id", run_id},
                             {"reports", s.reports().size()},
                             {"candidates", s.candidates().size()},
                             {"decisions", counts},
                             {"files", s.run_info().at("files")}};
      if (auto last = s.apply_summary()) body["last_apply"] = *last;
      send_json(res, 200, body);
    });

    server.Get("/api/findings", [this](const httplib::Request&, httplib::Response& res) {
      std::lock_guard lock(mutex);
      auto s = store();
      auto decisions = s.decisions();
      nlohmann::json list = nlohmann::json::array();
      for (const auto& r : s.reports()) {
        nlohmann::json item = {{"id", r.problem_id}, {"file", r.file},         {"line", r.line},
                               {"function", r.function}, {"statement", r.statement}, {"direction", r.direction}};
        if (auto c = s.candidate(r.problem_id)) {
          item["candidate_status"] = repair::to_string(c->status);
          item["repair_type"] = c->repair_type;
        }
        auto d = decisions.find(r.problem_id);
        item["decision"] = d == decisions.end() ? nlohmann::json(nullptr) : decision_json(d->second);
        list.push_back(item);
      }
      send_json(res, 200, list);
    });

    server.Get(R"(/api/findings/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
      std::lock_guard lock(mutex);
      auto s = store();
      std::string id = req.matches[1];
      auto r = s.report(id);
      if (!r) return send_error(res, 404, "unknown finding '" + id + "'");
      nlohmann::json body = {{"id", id}, {"report", symexec::to_json(*r)}};
      if (auto c = s.candidate(id)) {
        body["candidate"] = repair::to_json(*c);
        body["diff"] = c->diff;
        body["decision"] = decision_json(s.decision(id));
      } else {
        body["candidate"] = nullptr;
        body["diff"] = "";
        body["decision"] = nullptr;
      }
      send_json(res, 200, body);
    });

    server.Post(R"(/api/findings/([^/]+)/decision)", [this](const httplib::Request& req, httplib::Response& res) {
      std::lock_guard lock(mutex);
      auto s = store();
      std::string id = req.matches[1];
      std::string value;
      try {
        auto body = nlohmann::json::parse(req.body);
        value = body.at("decision").get<std::string>();
      } catch (const nlohmann::json::exception&) {
        return send_error(res, 400, "expected {\"decision\": \"accepted\" | \"rejected\"}");
      }
      if (value != "accepted" && value != "rejected") {
        return send_error(res, 400, "decision must be accepted or rejected");
      }
      try {
        s.decide(id, decision_from_string(value));
      } catch (const UnknownFinding& e) {
        return send_error(res, 404, e.what());
      } catch (const DecisionConflict& e) {
        return send_error(res, 409, e.what());
      }
      send_json(res, 200, {{"id", id}, {"decision", decision_json(s.decision(id))}});
    });

    server.Post("/api/apply", [this](const httplib::Request&, httplib::Response& res) {
      std::lock_guard lock(mutex);
      auto result = cmd_apply(root, run_id, {});
      nlohmann::json body = result.summary;
      body["exit_code"] = result.exit_code;
      body["message"] = result.message;
      send_json(res, result.exit_code == kExitUsage ? 500 : 200, body);
    });

    server.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
      try {
        std::rethrow_exception(ep);
      } catch (const std::exception& e) {
        send_error(res, 500, e.what());
      } catch (...) {
        send_error(res, 500, "internal error");
      }
    });
  }
};

ReviewServer::ReviewServer(std::string store_root, std::string run_id) : impl_(std::make_unique<Impl>()) {
  impl_->root = std::move(store_root);
  impl_->run_id = std::move(run_id);
  FindingStore::open(impl_->root, impl_->run_id);
  impl_->routes();
}

ReviewServer::~ReviewServer() { stop(); }

int ReviewServer::start(const std::string& host, int port, bool allow_remote) {
  if (!allow_remote && !is_loopback(host)) throw Error("refusing to bind non-loopback address " + host);
  if (port == 0) {
    impl_->port = impl_->server.bind_to_any_port(host);
  } else {
    impl_->port = impl_->server.bind_to_port(host, port) ? port : -1;
  }
  if (impl_->port <= 0) throw Error("cannot bind " + host + ":" + std::to_string(port));
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return impl_->port;
}

void ReviewServer::run(const std::string& host, int port, bool allow_remote) {
  if (!allow_remote && !is_loopback(host)) throw Error("refusing to bind non-loopback address " + host);
  if (!impl_->server.bind_to_port(host, port)) throw Error("cannot bind " + host + ":" + std::to_string(port));
  impl_->port = port;
  impl_->server.listen_after_bind();
}

void ReviewServer::stop() {
  if (!impl_) return;
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

int ReviewServer::port() const { return impl_->port; }

}  // namespace guardfix::service
