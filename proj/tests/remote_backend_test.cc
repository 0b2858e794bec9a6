// Copyright 2026 The spatialqa Authors.
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


#include "spatialqa/remote_backend.h"

#include <thread>

#include "httplib.h"
#include "test_util.h"

namespace spatialqa {
namespace {

// Local HTTP server speaking the answers protocol. |mode| picks the
// behaviour of POST /v1/answers.
class StubServer {
 public:
  enum class Mode { kEcho, kUnavailable, kGarbage, kStatus500, kSlow };

  explicit StubServer(Mode mode) : mode_(mode) {
    server_.Get("/v1/health", [](const httplib::Request &, httplib::Response &res) {
      res.set_content(R"({"status": "ok"})", "application/json");
    });
    server_.Post("/v1/answers", [this](const httplib::Request &req,
                                       httplib::Response &res) {
      ++posts;
      switch (mode_) {
        case Mode::kUnavailable:
          res.status = 503;
          return;
        case Mode::kGarbage:
          res.set_content("not json", "application/json");
          return;
        case Mode::kStatus500:
          res.status = 500;
          return;
        case Mode::kSlow:
          std::this_thread::sleep_for(std::chrono::milliseconds(600));
          break;
        case Mode::kEcho:
          break;
      }
      // Answers each item with its first word.
      BackendRequest request = RequestFromWire(nlohmann::json::parse(req.body));
      BackendResponse response;
      for (const auto &item : request) {
        std::string word = item.context.substr(0, item.context.find(' '));
        response.push_back(
            {item.id, {{0, static_cast<int32_t>(word.size()), word, 0.75}}});
      }
      res.set_content(ResponseToWire(response).dump(), "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~StubServer() {
    server_.stop();
    thread_.join();
  }

  std::string endpoint() const { return "http://127.0.0.1:" + std::to_string(port_); }
  std::atomic<int> posts{0};

 private:
  Mode mode_;
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

BackendRequest Request() { return {{"r1", "q", "edema in eye"}, {"r2", "q", "mild"}}; }

TEST(RemoteBackendTest, AnswersAndHealth) {
  StubServer server(StubServer::Mode::kEcho);
  RemoteBackend backend(server.endpoint() + "/");
  EXPECT_TRUE(backend.Healthy());
  EXPECT_EQ(backend.name(), "remote:" + server.endpoint());
  BackendResponse out = backend.Answer(Request());
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].answers[0], (AnswerSpan{0, 5, "edema", 0.75}));
  EXPECT_EQ(out[1].answers[0].text, "mild");
}

TEST(RemoteBackendTest, ThroughTheGateway) {
  StubServer server(StubServer::Mode::kEcho);
  RemoteBackend backend(server.endpoint());
  MrcGateway gw(backend);
  EXPECT_EQ(gw.AnswerBatch(Request())[1].answers[0].text, "mild");
}

TEST(RemoteBackendTest, Status503IsUnavailableAndRetried) {
  StubServer server(StubServer::Mode::kUnavailable);
  RemoteBackend backend(server.endpoint());
  EXPECT_ERROR_CODE(backend.Answer(Request()), ErrorCode::kBackendUnavailable);
  GatewayOptions o;
  o.max_retries = 2;
  o.initial_backoff = std::chrono::milliseconds(1);
  MrcGateway gw(backend, o);
  server.posts = 0;
  EXPECT_ERROR_CODE(gw.AnswerBatch(Request()), ErrorCode::kBackendUnavailable);
  EXPECT_EQ(server.posts.load(), 3);
}

TEST(RemoteBackendTest, BadBodiesAreMalformed) {
  StubServer garbage(StubServer::Mode::kGarbage);
  EXPECT_ERROR_CODE(RemoteBackend(garbage.endpoint()).Answer(Request()),
                    ErrorCode::kMalformedResponse);
  StubServer error(StubServer::Mode::kStatus500);
  EXPECT_ERROR_CODE(RemoteBackend(error.endpoint()).Answer(Request()),
                    ErrorCode::kMalformedResponse);
}

TEST(RemoteBackendTest, ReadTimeoutNamesFirstId) {
  StubServer server(StubServer::Mode::kSlow);
  RemoteOptions o;
  o.read_timeout = std::chrono::milliseconds(100);
  RemoteBackend backend(server.endpoint(), o);
  try {
    backend.Answer(Request());
    ADD_FAILURE() << "expected timeout";
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kTimeout);
    EXPECT_NE(std::string(e.what()).find("r1"), std::string::npos);
  }
}

TEST(RemoteBackendTest, UnreachableEndpoint) {
  // Nothing listens on port 1 of the loopback interface.
  RemoteOptions o;
  o.connect_timeout = std::chrono::milliseconds(200);
  o.read_timeout = std::chrono::milliseconds(500);
  RemoteBackend backend("http://127.0.0.1:1", o);
  EXPECT_FALSE(backend.Healthy());
  EXPECT_ERROR_CODE(backend.Answer(Request()), ErrorCode::kBackendUnavailable);
}

}  // namespace
}  // namespace spatialqa
