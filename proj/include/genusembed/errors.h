#pragma once

#include <stdexcept>
#include <string>

namespace genusembed {

/// Malformed or unsupported input (bad file, bad parameters, disconnected graph, ...).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A construction invariant failed. Indicates a bug, not bad input.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Wraps an error raised inside a named pipeline stage.
class StageError : public std::runtime_error {
public:
    StageError(std::string stage, const std::string& what, bool internal)
        : std::runtime_error(stage + ": " + what), stage_(std::move(stage)), internal_(internal) {}

    const std::string& stage() const { return stage_; }
    bool internal() const { return internal_; }

private:
    std::string stage_;
    bool internal_;
};

inline void check_internal(bool ok, const std::string& what) {
    if (!ok) throw InternalError(what);
}

}  // namespace genusembed
