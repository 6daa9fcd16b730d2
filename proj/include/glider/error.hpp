#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace glider {

/// Every failure the library can diagnose carries a stable machine-readable
/// code (e.g. "NotNormal", "CocycleNotFiltered") plus a human-readable detail
/// string.  Codes are part of the public contract: the CLI prints them and
/// tests match on them.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& detail)
        : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& detail) {
    throw Error(code, detail);
}

inline void require(bool cond, const std::string& code, const std::string& detail) {
    if (!cond) fail(code, detail);
}

} // namespace glider
