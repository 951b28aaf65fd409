#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace ftcut {

using NodeId = std::uint32_t;
/// Edge identities are 1..m; 0 is never a valid edge.
using EdgeId = std::uint32_t;

inline constexpr EdgeId kNoEdge = 0;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();
inline constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace ftcut
