#pragma once

#include <stdexcept>
#include <string>

namespace siteeval {

// Input or model data violates a contract. Maps to CLI exit code 1.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Bad command-line usage or unknown format. Maps to CLI exit code 2.
class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

// A pipeline stage failed; the message is prefixed with the stage name.
class StageError : public ValidationError {
public:
    StageError(std::string stage, const std::string& what)
        : ValidationError(stage + ": " + what), stage_(std::move(stage)) {}

    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

}  // namespace siteeval
