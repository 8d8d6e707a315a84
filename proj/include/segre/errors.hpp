#ifndef SEGRE_ERRORS_HPP
#define SEGRE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace segre {

// Base of everything thrown by this library.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Incompatible operands: variable lists, caps or dimensions disagree.
struct structural_error : error {
    using error::error;
};

// Malformed input text. `line` is 1-based, 0 when unknown.
struct parse_error : error {
    int line;
    explicit parse_error(const std::string& msg, int line_ = 0)
        : error(line_ > 0 ? "line " + std::to_string(line_) + ": " + msg : msg), line(line_) {}
};

// Input parsed but violates a mathematical precondition
// (base point, genericity, reality, unit, normal coordinates, ...).
struct validation_error : error {
    using error::error;
};

// The requested computation needs more certified degrees than available.
struct insufficient_cap_error : error {
    using error::error;
};

} // namespace segre

#endif
