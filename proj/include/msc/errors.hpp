// errors.hpp -- shared exception types.

#ifndef MSC_ERRORS_HPP
#define MSC_ERRORS_HPP

#include <sstream>
#include <stdexcept>
#include <string>

namespace msc {

// Raised when an input file (cluster, lexicon, ARPA model, ...) is malformed.
// Holds the 1-based line, and column where meaningful, so callers can point
// at the offending spot.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line = 0, int column = 0)
      : std::runtime_error(Format(what, line, column)),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  static std::string Format(const std::string& what, int line, int column) {
    std::ostringstream oss;
    if (line > 0) {
      oss << "line " << line;
      if (column > 0) oss << ", column " << column;
      oss << ": ";
    }
    oss << what;
    return oss.str();
  }

  int line_;
  int column_;
};

// Raised when a cluster yields no candidate that survives the path filter.
class NoCompressionError : public std::runtime_error {
 public:
  explicit NoCompressionError(const std::string& cluster_id)
      : std::runtime_error("no valid compression for cluster '" + cluster_id +
                           "'") {}
};

}  // namespace msc

#endif  // MSC_ERRORS_HPP
