#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "brjuno/upsilon.hpp"

namespace brjuno {

enum class GridKind { farey, surd };

struct SweepConfig {
  Rational lo{0}, hi{1};  // requires lo < hi
  GridKind grid = GridKind::farey;
  int grid_param = 8;  // farey: max denominator; surd: number of points
  BrjunoFlavor flavor = BrjunoFlavor::gauss;
  Budget budget;
};

struct SweepRow {
  std::string alpha_text;
  double alpha_float = 0.0;
  double upsilon = 0.0;  // NaN when method == "failed"
  std::string method;    // stable tag from method_name()
  double error_estimate = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // grid order
  int failed = 0;              // rows with method == "failed"
};

// All reduced fractions p/q with 1 <= q <= max_q and lo <= p/q <= hi,
// ascending.
std::vector<Rational> farey_points(int max_q, const Rational& lo,
                                   const Rational& hi);

// `count` quadratic surds near evenly spaced anchors strictly inside (lo, hi):
// each anchor's continued fraction digits with the golden tail appended, so
// every grid point has a computable Brjuno sum. Mirrored anchors around the
// interval midpoint give exactly mirrored surds on [0,1].
std::vector<AlphaSpec> surd_grid(int count, const Rational& lo,
                                 const Rational& hi);

// Evaluate upsilon at every grid point. Per-point failures do not abort the
// sweep: they become rows with method "failed", NaN value, infinite error.
// The nearest-integer flavor is undefined at rationals, so a farey grid under
// that flavor yields failed rows by design.
SweepResult run_sweep(const SweepConfig& cfg);

// Header alpha_text,alpha_float,upsilon,method,error_estimate; alpha_text is
// double-quoted (digit lists contain commas), floats carry 17 significant
// digits, C locale, rows in grid order. Byte-for-byte deterministic.
void write_csv(const SweepResult& res, std::ostream& os);

// Self-contained SVG: the plot area spans exactly [lo,hi] horizontally and
// [-0.2, log(2 pi)+0.2] vertically, with guide lines at y = 0 and
// y = log(2 pi), a polyline through the finite rows sorted by alpha, and a
// dot per point. Failed rows are left out of the curve.
void write_svg(const SweepResult& res, const Rational& lo, const Rational& hi,
               std::ostream& os);

}  // namespace brjuno
