#pragma once

#include <stdexcept>
#include <string>

namespace ellmu {

// Base class for everything the library throws on purpose.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad or unsupported input: zero where nonzero required, singular
// equation, characteristic not supported by an operation, parse errors.
class input_error : public error {
public:
    using error::error;
};

// A proven identity failed at runtime. Always indicates a bug upstream
// (counting, assembly, local analysis), never bad input.
class theorem_violation : public error {
public:
    using error::error;
};

// Enumeration cap, work budget, or table limit exceeded.
class resource_exhausted : public error {
public:
    using error::error;
};

// A valuation could not be decided at the current series precision.
class precision_exhausted : public resource_exhausted {
public:
    using resource_exhausted::resource_exhausted;
};

// Exit codes used by the command line tool.
enum class exit_code : int {
    ok = 0,
    input = 2,
    assertion = 3,
    budget = 4,
};

inline void check_theorem(bool ok, const std::string& what) {
    if (!ok) throw theorem_violation(what);
}

}  // namespace ellmu
