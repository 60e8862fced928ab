#pragma once

#include <stdexcept>
#include <string>

namespace cliffordprym {

/* Violated mathematical precondition.  `name` is the stable machine-readable
 * identifier surfaced by the CLI (exit code 3); `detail` is free text. */
class MathError : public std::runtime_error {
public:
    MathError(std::string name, std::string detail)
        : std::runtime_error(name + ": " + detail),
          name_(std::move(name)),
          detail_(std::move(detail)) {}

    const std::string& name() const { return name_; }
    const std::string& detail() const { return detail_; }

private:
    std::string name_;
    std::string detail_;
};

/* Malformed textual input.  Carries 1-based line/column (CLI exit code 2). */
class ParseError : public std::runtime_error {
public:
    ParseError(int line, int column, std::string message)
        : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                             std::to_string(column) + ": " + message),
          line_(line),
          column_(column),
          message_(std::move(message)) {}

    int line() const { return line_; }
    int column() const { return column_; }
    const std::string& message() const { return message_; }

private:
    int line_;
    int column_;
    std::string message_;
};

}  // namespace cliffordprym
