#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace brjuno {

// Thrown by parse_alpha(); `pos` is the byte offset of the offending character.
struct ParseError : std::runtime_error {
  std::size_t pos;
  ParseError(const std::string& what, std::size_t pos_)
      : std::runtime_error(what + " (at position " + std::to_string(pos_) + ")"),
        pos(pos_) {}
};

// An operation needed more certified digits (or more precision bits) than the
// input carries. Carries the best partial value so callers can degrade honestly
// instead of guessing.
struct PrecisionExhausted : std::runtime_error {
  double partial;   // partial value at the point of failure (NaN if meaningless)
  int depth;        // digits certified when we gave up (-1 if n/a)
  double majorant;  // tail majorant that could not be brought under tol
  explicit PrecisionExhausted(const std::string& what,
                              double partial_ = std::nan(""), int depth_ = -1,
                              double majorant_ = std::nan(""))
      : std::runtime_error(what),
        partial(partial_),
        depth(depth_),
        majorant(majorant_) {}
};

// Rational input fed to an operation defined only on irrationals.
struct RationalInput : std::domain_error {
  using std::domain_error::domain_error;
};

}  // namespace brjuno
