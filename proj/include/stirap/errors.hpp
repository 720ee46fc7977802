// Exception types shared by the simulation modules.

#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace stirap {

// Invalid or unparsable configuration. `field` names the offending key,
// `line` is the 1-based source line when the value came from a text file.
class ConfigError : public std::invalid_argument {
public:
    ConfigError(std::string field, const std::string& what, int line = 0)
        : std::invalid_argument(format(field, what, line)), field_(std::move(field)), line_(line) {}

    const std::string& field() const noexcept { return field_; }
    int line() const noexcept { return line_; }

private:
    static std::string format(const std::string& field, const std::string& what, int line) {
        std::string msg = field.empty() ? what : field + ": " + what;
        if (line > 0) msg = "line " + std::to_string(line) + ": " + msg;
        return msg;
    }

    std::string field_;
    int line_;
};

// Both Rabi envelopes sit at the numerical floor, so the mixing angle is undefined.
class DegenerateDrive : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Integration left the physically admissible region (trace drift, negative population).
class PropagationError : public std::runtime_error {
public:
    PropagationError(double time, const std::string& what)
        : std::runtime_error("t = " + std::to_string(time) + ": " + what), time_(time) {}

    double time() const noexcept { return time_; }

private:
    double time_;
};

} // namespace stirap
