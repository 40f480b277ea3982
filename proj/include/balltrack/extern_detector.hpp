#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <sys/types.h>

#include "balltrack/detector.hpp"

namespace balltrack
{

/// Failure talking to an external detector worker.
class DetectorError : public std::runtime_error
{
public:
  enum class Kind
  {
    Crash,       ///< worker exited or closed its output
    Timeout,     ///< no complete reply within the deadline
    Malformed,   ///< reply was not a valid protocol message
    IdMismatch,  ///< reply id does not match the request
    Remote,      ///< worker answered with an error message
    Handshake,   ///< hello exchange failed
  };

  DetectorError(Kind kind, const std::string & what)
  : std::runtime_error(what), kind_(kind) {}

  Kind kind() const { return kind_; }

private:
  Kind kind_;
};

const char * to_string(DetectorError::Kind kind);

/// Bidirectional newline-delimited text channel.
class LineChannel
{
public:
  enum class ReadStatus { Line, Timeout, Closed };

  virtual ~LineChannel() = default;

  /// Writes `line` followed by '\n'. Returns false if the peer is gone.
  virtual bool write_line(std::string_view line) = 0;

  /// Reads one line (without the newline) into `out`.
  virtual ReadStatus read_line(std::string & out, std::chrono::milliseconds timeout) = 0;
};

/// Runs `/bin/sh -c <command>` with its stdin/stdout attached to pipes.
/// stderr is inherited. The child is killed on destruction if still running.
class ProcessChannel : public LineChannel
{
public:
  explicit ProcessChannel(const std::string & command);
  ~ProcessChannel() override;

  ProcessChannel(const ProcessChannel &) = delete;
  ProcessChannel & operator=(const ProcessChannel &) = delete;

  bool write_line(std::string_view line) override;
  ReadStatus read_line(std::string & out, std::chrono::milliseconds timeout) override;

  /// Closes the worker's stdin and waits up to `timeout` for it to exit.
  /// Returns the exit status, or nullopt if it had to be killed.
  std::optional<int> close_and_wait(std::chrono::milliseconds timeout);

  pid_t pid() const { return pid_; }

private:
  pid_t pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string buffer_;
  std::optional<int> exit_status_;
};

std::string base64_encode(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> base64_decode(std::string_view text);

/// Protocol messages. Exposed for tests and for worker implementations.
namespace wire
{
inline constexpr int kVersion = 1;

std::string hello_reply();
std::string detect_request(std::uint64_t id, const Image & patch);
std::string shutdown_request();
std::string detections_response(std::uint64_t id, const std::vector<Detection> & dets);
std::string error_response(std::uint64_t id, std::string_view message);
}  // namespace wire

/// Client for an external detector worker speaking the newline-delimited
/// JSON protocol. One request in flight at a time.
class ExternDetector : public Detector
{
public:
  static constexpr std::chrono::milliseconds kDefaultTimeout{5000};
  /// Lower bound on the wait for the worker's hello; start-up (model
  /// loading) is usually much slower than one request.
  static constexpr std::chrono::milliseconds kMinHandshakeTimeout{10000};

  /// Performs the handshake; throws DetectorError(Handshake) on failure.
  /// `timeout` applies per request.
  explicit ExternDetector(
    std::unique_ptr<LineChannel> channel, std::chrono::milliseconds timeout = kDefaultTimeout);

  /// Spawns `command` through the shell and handshakes with it.
  static std::unique_ptr<ExternDetector> spawn(
    const std::string & command, std::chrono::milliseconds timeout = kDefaultTimeout);

  ~ExternDetector() override;

  std::vector<Detection> detect(const Image & patch, const DetectionContext & ctx) override;
  std::string name() const override { return "extern:" + worker_name_; }

  const std::string & worker_name() const { return worker_name_; }

  /// Sends the shutdown message. Called by the destructor if not done before.
  void shutdown();

private:
  std::string read_reply(std::chrono::steady_clock::time_point deadline);

  std::unique_ptr<LineChannel> channel_;
  std::chrono::milliseconds timeout_;
  std::string worker_name_;
  std::uint64_t next_id_ = 1;
  std::set<std::uint64_t> abandoned_;
  bool shut_down_ = false;
};

}  // namespace balltrack
