// Protocol stub used by the external detector tests.
//
//   stub_worker <mode> [delay_ms]
//
// echo           one detection (10, 10, 5, 5, 0.9) per request
// blob           runs the blob detector on the decoded patch
// wrong-id       replies with id + 1000
// garbage        replies with a non-JSON line
// remote-error   replies with an error message
// crash          exits right after the hello exchange
// hang           reads requests but never answers
// slow           answers after delay_ms
// slow-first     answers the first request after delay_ms, the rest at once
// bad-version    announces protocol version 99
#include <chrono>
#include <iostream>
#include <string>
#include <thread>

#include "balltrack/blob_detector.hpp"
#include "balltrack/extern_detector.hpp"
#include "json.hpp"

using json = nlohmann::json;
using namespace balltrack;

int main(int argc, char ** argv)
{
  const std::string mode = argc > 1 ? argv[1] : "echo";
  const int delay_ms = argc > 2 ? std::stoi(argv[2]) : 0;

  std::cout << json{{"type", "hello"}, {"version", mode == "bad-version" ? 99 : wire::kVersion},
                    {"name", "stub-" + mode}}.dump()
            << std::endl;

  std::string line;
  if (!std::getline(std::cin, line)) {
    return 3;
  }
  const json ack = json::parse(line, nullptr, false);
  if (ack.is_discarded() || ack.value("type", "") != "hello") {
    return 4;
  }
  if (mode == "crash") {
    return 7;
  }

  while (std::getline(std::cin, line)) {
    const json msg = json::parse(line, nullptr, false);
    if (msg.is_discarded()) {
      return 5;
    }
    const std::string type = msg.value("type", "");
    if (type == "shutdown") {
      return 0;
    }
    if (type != "detect") {
      return 6;
    }
    const auto id = msg.at("id").get<std::uint64_t>();
    const Image patch = decode_png(base64_decode(msg.at("data").get<std::string>()));
    if (patch.width != msg.at("width").get<int>() || patch.height != msg.at("height").get<int>()) {
      std::cout << wire::error_response(id, "size mismatch") << std::endl;
      continue;
    }

    if (mode == "hang") {
      continue;
    }
    if (mode == "slow" || (mode == "slow-first" && id == 1)) {
      std::this_thread::sleep_for(std::chrono::milliseconds(delay_ms));
    }
    if (mode == "wrong-id") {
      std::cout << wire::detections_response(id + 1000, {}) << std::endl;
    } else if (mode == "garbage") {
      std::cout << "this is not json" << std::endl;
    } else if (mode == "remote-error") {
      std::cout << wire::error_response(id, "model not loaded") << std::endl;
    } else if (mode == "blob") {
      std::cout << wire::detections_response(id, blob_detect(patch)) << std::endl;
    } else {
      std::cout << wire::detections_response(id, {{{10, 10, 5, 5}, 0.9}}) << std::endl;
    }
  }
  return 0;
}
