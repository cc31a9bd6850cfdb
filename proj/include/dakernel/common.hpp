#pragma once

#include <stdexcept>
#include <string>

namespace dak {

// Base class for all library errors. Precondition violations, bad input
// tables and unsupported-input conditions all throw this (or a subclass).
struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Session/text parsing failure with a source location.
struct parse_error : error {
    int line;
    int column;
    parse_error(const std::string& msg, int line_, int column_)
        : error("parse error at " + std::to_string(line_) + ":" +
                std::to_string(column_) + ": " + msg),
          line(line_), column(column_) {}
};

} // namespace dak
