#include "balltrack/extern_detector.hpp"

#include <algorithm>
#include <cerrno>
#include <csignal>
#include <cstring>
#include <system_error>
#include <thread>

#include <fcntl.h>
#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

#include <openssl/evp.h>

#include "json.hpp"

namespace balltrack
{

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

const char * to_string(DetectorError::Kind kind)
{
  switch (kind) {
    case DetectorError::Kind::Crash: return "crash";
    case DetectorError::Kind::Timeout: return "timeout";
    case DetectorError::Kind::Malformed: return "malformed";
    case DetectorError::Kind::IdMismatch: return "id-mismatch";
    case DetectorError::Kind::Remote: return "remote";
    case DetectorError::Kind::Handshake: return "handshake";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// base64

std::string base64_encode(std::span<const std::uint8_t> bytes)
{
  std::string out(4 * ((bytes.size() + 2) / 3) + 1, '\0');
  const int n = EVP_EncodeBlock(
    reinterpret_cast<unsigned char *>(out.data()), bytes.data(), static_cast<int>(bytes.size()));
  out.resize(static_cast<std::size_t>(n));
  return out;
}

std::vector<std::uint8_t> base64_decode(std::string_view text)
{
  if (text.size() % 4 != 0) {
    throw std::invalid_argument("base64 length is not a multiple of 4");
  }
  std::vector<std::uint8_t> out(3 * (text.size() / 4));
  const int n = EVP_DecodeBlock(
    out.data(), reinterpret_cast<const unsigned char *>(text.data()), static_cast<int>(text.size()));
  if (n < 0) {
    throw std::invalid_argument("invalid base64 data");
  }
  std::size_t padding = 0;
  if (!text.empty() && text.back() == '=') {
    ++padding;
    if (text.size() >= 2 && text[text.size() - 2] == '=') {
      ++padding;
    }
  }
  out.resize(static_cast<std::size_t>(n) - padding);
  return out;
}

// ---------------------------------------------------------------------------
// ProcessChannel

namespace
{

void ignore_sigpipe()
{
  static const bool once = [] {
    std::signal(SIGPIPE, SIG_IGN);
    return true;
  }();
  (void)once;
}

void close_fd(int & fd)
{
  if (fd >= 0) {
    ::close(fd);
    fd = -1;
  }
}

}  // namespace

ProcessChannel::ProcessChannel(const std::string & command)
{
  ignore_sigpipe();

  int in_pipe[2];
  int out_pipe[2];
  if (::pipe2(in_pipe, O_CLOEXEC) != 0) {
    throw std::system_error(errno, std::generic_category(), "pipe");
  }
  if (::pipe2(out_pipe, O_CLOEXEC) != 0) {
    const int err = errno;
    ::close(in_pipe[0]);
    ::close(in_pipe[1]);
    throw std::system_error(err, std::generic_category(), "pipe");
  }

  pid_ = ::fork();
  if (pid_ < 0) {
    const int err = errno;
    for (int fd : {in_pipe[0], in_pipe[1], out_pipe[0], out_pipe[1]}) {
      ::close(fd);
    }
    throw std::system_error(err, std::generic_category(), "fork");
  }
  if (pid_ == 0) {
    // Own process group, so a kill also reaches anything the shell started.
    ::setpgid(0, 0);
    ::dup2(in_pipe[0], STDIN_FILENO);
    ::dup2(out_pipe[1], STDOUT_FILENO);
    ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char *>(nullptr));
    ::_exit(127);
  }

  ::setpgid(pid_, pid_);
  ::close(in_pipe[0]);
  ::close(out_pipe[1]);
  to_child_ = in_pipe[1];
  from_child_ = out_pipe[0];
}

ProcessChannel::~ProcessChannel()
{
  if (pid_ > 0 && !exit_status_) {
    close_and_wait(std::chrono::milliseconds(1000));
  }
  close_fd(to_child_);
  close_fd(from_child_);
}

bool ProcessChannel::write_line(std::string_view line)
{
  if (to_child_ < 0) {
    return false;
  }
  std::string msg(line);
  msg.push_back('\n');
  std::size_t off = 0;
  while (off < msg.size()) {
    const ssize_t n = ::write(to_child_, msg.data() + off, msg.size() - off);
    if (n < 0) {
      if (errno == EINTR) {
        continue;
      }
      return false;
    }
    off += static_cast<std::size_t>(n);
  }
  return true;
}

LineChannel::ReadStatus ProcessChannel::read_line(std::string & out, std::chrono::milliseconds timeout)
{
  const auto deadline = Clock::now() + timeout;
  for (;;) {
    if (const auto pos = buffer_.find('\n'); pos != std::string::npos) {
      out.assign(buffer_, 0, pos);
      buffer_.erase(0, pos + 1);
      return ReadStatus::Line;
    }
    if (from_child_ < 0) {
      return ReadStatus::Closed;
    }
    const auto remaining =
      std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now());
    if (remaining.count() <= 0) {
      return ReadStatus::Timeout;
    }
    pollfd pfd{from_child_, POLLIN, 0};
    const int rc = ::poll(&pfd, 1, static_cast<int>(remaining.count()));
    if (rc < 0) {
      if (errno == EINTR) {
        continue;
      }
      return ReadStatus::Closed;
    }
    if (rc == 0) {
      return ReadStatus::Timeout;
    }
    char chunk[65536];
    const ssize_t n = ::read(from_child_, chunk, sizeof(chunk));
    if (n < 0 && errno == EINTR) {
      continue;
    }
    if (n <= 0) {
      close_fd(from_child_);
      return ReadStatus::Closed;
    }
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
}

std::optional<int> ProcessChannel::close_and_wait(std::chrono::milliseconds timeout)
{
  close_fd(to_child_);
  if (exit_status_ || pid_ <= 0) {
    return exit_status_;
  }
  const auto deadline = Clock::now() + timeout;
  int status = 0;
  for (;;) {
    const pid_t r = ::waitpid(pid_, &status, WNOHANG);
    if (r == pid_) {
      exit_status_ = WIFEXITED(status) ? WEXITSTATUS(status) : 128 + WTERMSIG(status);
      return exit_status_;
    }
    if (r < 0 || Clock::now() >= deadline) {
      break;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(5));
  }
  ::kill(-pid_, SIGKILL);
  ::waitpid(pid_, &status, 0);
  exit_status_ = 128 + SIGKILL;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// wire format

namespace wire
{

std::string hello_reply()
{
  return json{{"type", "hello"}, {"version", kVersion}}.dump();
}

std::string detect_request(std::uint64_t id, const Image & patch)
{
  return json{
    {"type", "detect"},
    {"id", id},
    {"width", patch.width},
    {"height", patch.height},
    {"channels", patch.channels},
    {"format", "png-base64"},
    {"data", base64_encode(encode_png(patch))},
  }.dump();
}

std::string shutdown_request()
{
  return json{{"type", "shutdown"}}.dump();
}

std::string detections_response(std::uint64_t id, const std::vector<Detection> & dets)
{
  json arr = json::array();
  for (const auto & d : dets) {
    arr.push_back({{"x", d.bbox.x}, {"y", d.bbox.y}, {"w", d.bbox.w}, {"h", d.bbox.h}, {"score", d.score}});
  }
  return json{{"type", "detections"}, {"id", id}, {"detections", std::move(arr)}}.dump();
}

std::string error_response(std::uint64_t id, std::string_view message)
{
  return json{{"type", "error"}, {"id", id}, {"message", message}}.dump();
}

}  // namespace wire

// ---------------------------------------------------------------------------
// ExternDetector

namespace
{

std::vector<Detection> parse_detections(const json & msg, int width, int height)
{
  const auto it = msg.find("detections");
  if (it == msg.end() || !it->is_array()) {
    throw DetectorError(DetectorError::Kind::Malformed, "response has no detections array");
  }
  std::vector<Detection> out;
  for (const auto & d : *it) {
    if (!d.is_object()) {
      throw DetectorError(DetectorError::Kind::Malformed, "detection entry is not an object");
    }
    Detection det;
    try {
      det.bbox = {d.at("x").get<double>(), d.at("y").get<double>(), d.at("w").get<double>(),
                  d.at("h").get<double>()};
      det.score = d.at("score").get<double>();
    } catch (const json::exception & e) {
      throw DetectorError(DetectorError::Kind::Malformed, std::string("bad detection: ") + e.what());
    }
    if (!is_valid(det)) {
      throw DetectorError(DetectorError::Kind::Malformed, "detection has an invalid box or score");
    }
    if (auto clipped = clip_to(det.bbox, width, height)) {
      out.push_back({*clipped, det.score});
    }
  }
  sort_by_score(out);
  return out;
}

}  // namespace

ExternDetector::ExternDetector(std::unique_ptr<LineChannel> channel, std::chrono::milliseconds timeout)
: channel_(std::move(channel)), timeout_(timeout)
{
  std::string line;
  switch (channel_->read_line(line, std::max(timeout_, kMinHandshakeTimeout))) {
    case LineChannel::ReadStatus::Timeout:
      throw DetectorError(DetectorError::Kind::Handshake, "worker did not send hello in time");
    case LineChannel::ReadStatus::Closed:
      throw DetectorError(DetectorError::Kind::Handshake, "worker exited before hello");
    case LineChannel::ReadStatus::Line:
      break;
  }
  const json hello = json::parse(line, nullptr, false);
  if (hello.is_discarded() || !hello.is_object() || hello.value("type", "") != "hello") {
    throw DetectorError(DetectorError::Kind::Handshake, "expected hello, got: " + line);
  }
  if (hello.value("version", -1) != wire::kVersion) {
    throw DetectorError(DetectorError::Kind::Handshake, "unsupported protocol version");
  }
  worker_name_ = hello.value("name", "worker");
  if (!channel_->write_line(wire::hello_reply())) {
    throw DetectorError(DetectorError::Kind::Handshake, "worker closed its input during hello");
  }
}

std::unique_ptr<ExternDetector> ExternDetector::spawn(
  const std::string & command, std::chrono::milliseconds timeout)
{
  return std::make_unique<ExternDetector>(std::make_unique<ProcessChannel>(command), timeout);
}

ExternDetector::~ExternDetector()
{
  shutdown();
}

void ExternDetector::shutdown()
{
  if (!shut_down_ && channel_) {
    channel_->write_line(wire::shutdown_request());
    shut_down_ = true;
  }
}

std::string ExternDetector::read_reply(Clock::time_point deadline)
{
  std::string line;
  const auto remaining =
    std::max(std::chrono::milliseconds(0),
             std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now()));
  switch (channel_->read_line(line, remaining)) {
    case LineChannel::ReadStatus::Timeout:
      throw DetectorError(DetectorError::Kind::Timeout, "worker did not answer in time");
    case LineChannel::ReadStatus::Closed:
      throw DetectorError(DetectorError::Kind::Crash, "worker closed its output");
    case LineChannel::ReadStatus::Line:
      break;
  }
  return line;
}

std::vector<Detection> ExternDetector::detect(const Image & patch, const DetectionContext &)
{
  if (shut_down_) {
    throw DetectorError(DetectorError::Kind::Crash, "worker already shut down");
  }
  const std::uint64_t id = next_id_++;
  if (!channel_->write_line(wire::detect_request(id, patch))) {
    throw DetectorError(DetectorError::Kind::Crash, "worker closed its input");
  }

  const auto deadline = Clock::now() + timeout_;
  for (;;) {
    std::string line;
    try {
      line = read_reply(deadline);
    } catch (const DetectorError & e) {
      if (e.kind() == DetectorError::Kind::Timeout) {
        abandoned_.insert(id);
      }
      throw;
    }

    const json msg = json::parse(line, nullptr, false);
    if (msg.is_discarded() || !msg.is_object()) {
      throw DetectorError(DetectorError::Kind::Malformed, "reply is not a JSON object");
    }
    const auto id_it = msg.find("id");
    if (id_it == msg.end() || !id_it->is_number_unsigned()) {
      throw DetectorError(DetectorError::Kind::Malformed, "reply has no id");
    }
    const auto reply_id = id_it->get<std::uint64_t>();
    if (abandoned_.erase(reply_id) > 0) {
      continue;  // late answer to a request that already timed out
    }
    if (reply_id != id) {
      throw DetectorError(
        DetectorError::Kind::IdMismatch,
        "expected reply id " + std::to_string(id) + ", got " + std::to_string(reply_id));
    }

    const std::string type = msg.value("type", "");
    if (type == "error") {
      throw DetectorError(DetectorError::Kind::Remote, msg.value("message", "worker error"));
    }
    if (type != "detections") {
      throw DetectorError(DetectorError::Kind::Malformed, "unexpected reply type '" + type + "'");
    }
    return parse_detections(msg, patch.width, patch.height);
  }
}

}  // namespace balltrack
