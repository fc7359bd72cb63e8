#pragma once

#include <stdexcept>
#include <string>

namespace rotorkit {

/// Base class for all rotorkit errors.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// Two formal sums over different index sets were combined.
class universe_mismatch_error : public error {
public:
    explicit universe_mismatch_error(const std::string& what) : error(what) {}
};

/// A vertex/arc/face identifier does not exist in the graph at hand.
class unknown_id_error : public error {
public:
    explicit unknown_id_error(const std::string& what) : error(what) {}
};

/// A documented operation precondition does not hold.
class precondition_error : public error {
public:
    explicit precondition_error(const std::string& what) : error(what) {}
};

/// A configured resource bound (step cap, state cap, oracle size) was hit
/// before the computation could conclude. Distinct from a negative answer.
class bound_exceeded_error : public error {
public:
    explicit bound_exceeded_error(const std::string& what) : error(what) {}
};

/// Input text could not be parsed; carries a 1-based line number when known.
class parse_error : public error {
public:
    parse_error(const std::string& what, int line = 0)
        : error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

} // namespace rotorkit
