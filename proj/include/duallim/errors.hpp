#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace duallim {

// Error taxonomy mirrored by the CLI exit codes.
enum class ErrorKind {
  Hypothesis,  // a mathematical precondition of the pipeline failed (exit 1)
  Parse,       // malformed input (exit 2)
  Resource,    // degree/truncation/recursion limit reached (exit 3)
  Internal,    // cross-check mismatch, should never happen (exit 4)
};

struct SourcePos {
  int line = 0;    // 1-based
  int column = 0;  // 1-based
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}
  Error(ErrorKind kind, std::string message, SourcePos pos)
      : std::runtime_error(std::move(message)), kind_(kind), pos_(pos) {}

  ErrorKind kind() const { return kind_; }
  const std::optional<SourcePos>& pos() const { return pos_; }

  int exit_code() const {
    switch (kind_) {
      case ErrorKind::Hypothesis: return 1;
      case ErrorKind::Parse: return 2;
      case ErrorKind::Resource: return 3;
      case ErrorKind::Internal: return 4;
    }
    return 4;
  }

 private:
  ErrorKind kind_;
  std::optional<SourcePos> pos_;
};

[[noreturn]] inline void fail_hypothesis(const std::string& msg) {
  throw Error(ErrorKind::Hypothesis, msg);
}
[[noreturn]] inline void fail_parse(const std::string& msg, SourcePos pos) {
  throw Error(ErrorKind::Parse, msg, pos);
}
[[noreturn]] inline void fail_resource(const std::string& msg) {
  throw Error(ErrorKind::Resource, msg);
}
[[noreturn]] inline void fail_internal(const std::string& msg) {
  throw Error(ErrorKind::Internal, msg);
}

}  // namespace duallim
