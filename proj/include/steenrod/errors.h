#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace steenrod {

/* Base of every error raised by the library. */
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/* Bad parameters: non-prime modulus, malformed config, precondition violations. */
class InvalidInput : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::string message, std::size_t offset, std::vector<std::string> expected)
        : Error(format(message, offset, expected)), offset_(offset), expected_(std::move(expected))
    {
    }
    std::size_t offset() const { return offset_; }
    const std::vector<std::string>& expected() const { return expected_; }

private:
    static std::string format(const std::string& message, std::size_t offset, const std::vector<std::string>& expected)
    {
        std::string s = "parse error at byte " + std::to_string(offset) + ": " + message;
        if (!expected.empty()) {
            s += " (expected one of:";
            for (const auto& e : expected)
                s += " " + e;
            s += ")";
        }
        return s;
    }
    std::size_t offset_;
    std::vector<std::string> expected_;
};

/* An operation on a generator is not determined by the action table or any default. */
class MissingAction : public Error {
public:
    using Error::Error;
};

/* A computation produced a term beyond a presentation's hard window. */
class WindowExceeded : public Error {
public:
    using Error::Error;
};

/* An internal consistency check failed. */
class VerificationFailure : public Error {
public:
    using Error::Error;
};

}  // namespace steenrod
