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
#pragma once

#include <memory>
#include <string>

namespace guardfix::service {

/// Local review API over one run's FindingStore. Requests are handled serially.
class ReviewServer {
 public:
  ReviewServer(std::string store_root, std::string run_id);
  ~ReviewServer();
  ReviewServer(const ReviewServer&) = delete;
  ReviewServer& operator=(const ReviewServer&) = delete;

  /// Binds and serves on a background thread. Port 0 picks a free port.
  /// Non-loopback hosts are refused unless `allow_remote` is set.
  int start(const std::string& host = "127.0.0.1", int port = 0, bool allow_remote = false);
  /// Serves on the calling thread until stop().
  void run(const std::string& host = "127.0.0.1", int port = 8765, bool allow_remote = false);
  void stop();
  int port() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

bool is_loopback(const std::string& host);

}  // namespace guardfix::service
