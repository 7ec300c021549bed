#ifndef SFQRM_ERRORS_H
#define SFQRM_ERRORS_H

#include <stdexcept>
#include <string>

namespace sfqrm {

// Syntax-level failure while reading a netlist or table file. line is
// 1-based; 0 means the error is not tied to a specific line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                    : std::move(message)),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_ = 0;
};

// Structural rule violation in an otherwise well-formed netlist.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& message)
      : std::runtime_error(message) {}
};

}  // namespace sfqrm

#endif  // SFQRM_ERRORS_H
