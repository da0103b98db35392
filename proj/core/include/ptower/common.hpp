#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ptower {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;

// All library errors carry a short stable code (e.g. "NotAUnit") plus a
// human-readable message. Callers that care match on code().
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& what) {
  throw Error(code, what);
}

inline void check(bool ok, const std::string& code, const std::string& what) {
  if (!ok) fail(code, what);
}

}  // namespace ptower
