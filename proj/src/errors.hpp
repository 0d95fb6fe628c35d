#pragma once

#include <stdexcept>
#include <string>

namespace ecgkit {

// Error categories; they map one-to-one onto the C API status codes and
// the CLI exit codes.
enum class ErrorKind {
  argument = 1,
  config = 2,
  data = 3,
  numeric = 4,
  io = 5,
  degenerate = 6,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) {
  throw Error(kind, msg);
}

}  // namespace ecgkit
