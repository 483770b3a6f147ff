#include "brjuno/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "brjuno/cf.hpp"

namespace brjuno {

namespace {

const double kLog2Pi = std::log(2.0 * M_PI);

std::string g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string g2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

Integer ceil_rational(const Rational& r) {
  Integer f = floor_rational(r);
  return f + (Rational(f) == r ? 0 : 1);
}

}  // namespace

std::vector<Rational> farey_points(int max_q, const Rational& lo,
                                   const Rational& hi) {
  if (max_q < 1) throw std::invalid_argument("farey_points: max_q < 1");
  if (!(lo < hi)) throw std::invalid_argument("farey_points: need lo < hi");
  std::vector<Rational> out;
  for (int q = 1; q <= max_q; ++q) {
    Integer p = ceil_rational(lo * q);
    Integer pmax = floor_rational(hi * q);
    for (; p <= pmax; ++p) {
      if (boost::multiprecision::gcd(p, Integer(q)) != 1) continue;
      out.emplace_back(p, Integer(q));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<AlphaSpec> surd_grid(int count, const Rational& lo,
                                 const Rational& hi) {
  if (count < 1) throw std::invalid_argument("surd_grid: count < 1");
  if (!(lo < hi)) throw std::invalid_argument("surd_grid: need lo < hi");
  std::vector<AlphaSpec> out;
  out.reserve(count);
  const Rational step = (hi - lo) / (count + 1);
  for (int j = 1; j <= count; ++j) {
    Rational anchor = lo + step * j;
    // The anchor's own digits with the golden tail glued on. Values are exact
    // quadratic surds; two distinct anchors never collide because a canonical
    // digit list never ends in 1, so no list is a golden-padded prefix of
    // another.
    CFExpansion gauss = rational_expansions(anchor).first;
    out.push_back(AlphaSpec::periodic(gauss.a, {1}));
  }
  return out;
}

SweepResult run_sweep(const SweepConfig& cfg) {
  if (!(cfg.lo < cfg.hi)) throw std::invalid_argument("run_sweep: need lo < hi");
  std::vector<AlphaSpec> grid;
  if (cfg.grid == GridKind::farey) {
    for (const Rational& r : farey_points(cfg.grid_param, cfg.lo, cfg.hi))
      grid.push_back(AlphaSpec::rational_of(r));
  } else {
    grid = surd_grid(cfg.grid_param, cfg.lo, cfg.hi);
  }

  SweepResult res;
  res.rows.reserve(grid.size());
  for (const AlphaSpec& x : grid) {
    SweepRow row;
    row.alpha_text = x.text();
    row.alpha_float = kernel_to_real(resolve_kernel(x), 64).to_double();
    try {
      UpsilonValue v;
      if (cfg.flavor == BrjunoFlavor::nearest_integer) {
        // The tilde sum has no value at rationals; upsilon_brjuno raises
        // RationalInput there and the row records the failure.
        v = upsilon_brjuno(x, cfg.budget, BrjunoFlavor::nearest_integer);
      } else {
        v = upsilon(x, cfg.budget);
      }
      row.upsilon = v.value;
      row.method = method_name(v.method);
      row.error_estimate = v.error_estimate;
      if (v.method == UpsilonMethod::failed) ++res.failed;
    } catch (const std::exception&) {
      row.upsilon = std::numeric_limits<double>::quiet_NaN();
      row.method = "failed";
      row.error_estimate = std::numeric_limits<double>::infinity();
      ++res.failed;
    }
    res.rows.push_back(std::move(row));
  }
  return res;
}

void write_csv(const SweepResult& res, std::ostream& os) {
  os << "alpha_text,alpha_float,upsilon,method,error_estimate\n";
  for (const SweepRow& r : res.rows) {
    os << '"' << r.alpha_text << "\"," << g17(r.alpha_float) << ','
       << g17(r.upsilon) << ',' << r.method << ',' << g17(r.error_estimate)
       << '\n';
  }
}

void write_svg(const SweepResult& res, const Rational& lo, const Rational& hi,
               std::ostream& os) {
  const double W = 840, H = 520;
  const double ml = 64, mr = 20, mt = 20, mb = 44;
  const double xlo = lo.convert_to<double>(), xhi = hi.convert_to<double>();
  const double ylo = -0.2, yhi = kLog2Pi + 0.2;
  auto X = [&](double a) { return ml + (a - xlo) / (xhi - xlo) * (W - ml - mr); };
  auto Y = [&](double u) { return mt + (yhi - u) / (yhi - ylo) * (H - mt - mb); };

  std::vector<const SweepRow*> finite;
  for (const SweepRow& r : res.rows)
    if (std::isfinite(r.upsilon)) finite.push_back(&r);
  std::sort(finite.begin(), finite.end(),
            [](const SweepRow* a, const SweepRow* b) {
              return a->alpha_float < b->alpha_float;
            });

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
     << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n";
  os << "<rect x=\"" << g2(ml) << "\" y=\"" << g2(mt) << "\" width=\""
     << g2(W - ml - mr) << "\" height=\"" << g2(H - mt - mb)
     << "\" fill=\"white\" stroke=\"black\"/>\n";

  // Guide lines at upsilon = 0 and upsilon = log(2 pi).
  for (double gy : {0.0, kLog2Pi}) {
    os << "<line x1=\"" << g2(ml) << "\" y1=\"" << g2(Y(gy)) << "\" x2=\""
       << g2(W - mr) << "\" y2=\"" << g2(Y(gy))
       << "\" stroke=\"#888\" stroke-dasharray=\"6 4\"/>\n";
  }
  os << "<text x=\"8\" y=\"" << g2(Y(0.0) + 4) << "\" font-size=\"13\">0</text>\n";
  os << "<text x=\"8\" y=\"" << g2(Y(kLog2Pi) + 4)
     << "\" font-size=\"13\">log 2&#960;</text>\n";
  os << "<text x=\"" << g2(ml) << "\" y=\"" << g2(H - 12)
     << "\" font-size=\"13\">" << g17(xlo) << "</text>\n";
  os << "<text x=\"" << g2(W - mr - 40) << "\" y=\"" << g2(H - 12)
     << "\" font-size=\"13\">" << g17(xhi) << "</text>\n";

  if (finite.size() >= 2) {
    os << "<polyline fill=\"none\" stroke=\"#1f5fbf\" stroke-width=\"1\" "
          "points=\"";
    for (size_t i = 0; i < finite.size(); ++i) {
      if (i) os << ' ';
      os << g2(X(finite[i]->alpha_float)) << ',' << g2(Y(finite[i]->upsilon));
    }
    os << "\"/>\n";
  }
  for (const SweepRow* r : finite) {
    os << "<circle cx=\"" << g2(X(r->alpha_float)) << "\" cy=\""
       << g2(Y(r->upsilon)) << "\" r=\"2\" fill=\"#1f5fbf\"/>\n";
  }
  os << "</svg>\n";
}

}  // namespace brjuno
