#pragma once

#include <stdexcept>
#include <string>

namespace infoseek {

// Caller supplied arguments that violate an operation's preconditions.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// The answers received so far leave no consistent possibility.
class ContradictionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An operation was invoked on state that has not been prepared for it.
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// A question generator or partitioner could not produce a usable result.
class OracleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised while building a simulation tree; `path()` names the failing node.
class TreeBuildError : public OracleError {
public:
    TreeBuildError(std::string path, const std::string& cause)
        : OracleError("tree construction failed at " + path + ": " + cause),
          path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

// Model output with no recoverable question blocks. Carries the raw text.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::string raw)
        : std::runtime_error(what), raw_(std::move(raw)) {}

    const std::string& raw_text() const noexcept { return raw_; }

private:
    std::string raw_;
};

// Transport-level failures of the chat-completions client.
class LlmError : public OracleError {
public:
    using OracleError::OracleError;
};

class LlmTimeoutError : public LlmError {
public:
    using LlmError::LlmError;
};

class LlmAuthError : public LlmError {
public:
    using LlmError::LlmError;
};

class LlmHttpError : public LlmError {
public:
    LlmHttpError(int status, const std::string& what) : LlmError(what), status_(status) {}
    int status() const noexcept { return status_; }

private:
    int status_;
};

class LlmMalformedResponseError : public LlmError {
public:
    using LlmError::LlmError;
};

// Dataset file failed schema validation. The message starts with the field path.
class LoadError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace infoseek
