#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace supertrop {

// Malformed text input; `position` is a 0-based offset into the parsed string.
class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// Arithmetic outside the domain of an operation (e.g. inverting zero).
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A documented precondition of an operation does not hold.
class precondition_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A configured size bound would be exceeded; work is refused, never truncated.
class limit_exceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Cooperative cancellation was requested.
class cancelled : public std::runtime_error {
 public:
  cancelled() : std::runtime_error("operation cancelled") {}
};

}  // namespace supertrop
