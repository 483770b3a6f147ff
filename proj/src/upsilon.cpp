#include "brjuno/upsilon.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "brjuno/errors.hpp"
#include "brjuno/series.hpp"

namespace brjuno {

namespace {

const double kLog2Pi = std::log(2.0 * M_PI);

// One-sided slack for the cremer route: the sequence can rise from term n to
// its limit by at most sum_{k >= n} C log(q_{k+1})/q_{k+1} <= C * the
// Fibonacci majorant, with C fit once over the survey data and fixed here.
constexpr double kCremerSlackC = 10.0;

UpsilonValue brjuno_route(const AlphaSpec& x, const BrjunoValue& ph,
                          const Budget& b) {
  LinearizingSeries ls = linearize(x, b.series_N, b.precision_bits);
  RadiusEstimate rs = conformal_radius(ls, RadiusMethod::slope_fit);
  RadiusEstimate rh = conformal_radius(ls, RadiusMethod::hadamard);
  UpsilonValue out;
  out.method = UpsilonMethod::brjuno_series;
  out.value = ph.value + std::log(rs.value);
  out.error_estimate =
      ph.tail_bound + std::abs(std::log(rh.value) - std::log(rs.value));
  out.diagnostics.series_N = b.series_N;
  out.diagnostics.phi_value = ph.value;
  out.diagnostics.phi_tail = ph.tail_bound;
  out.diagnostics.radius = rs.value;
  out.diagnostics.radius_spread = rs.spread;
  return out;
}

}  // namespace

std::string method_name(UpsilonMethod m) {
  switch (m) {
    case UpsilonMethod::rational_formula:
      return "rational_formula";
    case UpsilonMethod::brjuno_series:
      return "brjuno_series";
    case UpsilonMethod::cremer_sequence:
      return "cremer_sequence";
    default:
      return "failed";
  }
}

UpsilonValue upsilon_rational(const Rational& pq, mpfr_prec_t prec) {
  ParabolicData pd = parabolic_coefficient(pq, prec);
  double q = boost::multiprecision::denominator(pd.pq).convert_to<double>();
  UpsilonValue out;
  out.method = UpsilonMethod::rational_formula;
  out.value = phi_trunc(pq, prec) + std::log(pd.la.to_double()) + kLog2Pi / q;
  // The three pieces are exact up to the parabolic residual and double
  // round-off; keep a floor so the estimate is never optimistically zero.
  out.error_estimate = std::max(pd.residual.to_double(), 1e-14);
  return out;
}

UpsilonValue upsilon_brjuno(const AlphaSpec& x, const Budget& b,
                            BrjunoFlavor flavor) {
  BrjunoValue ph = flavor == BrjunoFlavor::nearest_integer
                       ? phi_tilde(x, b.tol, b.precision_bits, b.ceiling)
                       : phi(x, b.tol, b.precision_bits, b.ceiling);
  if (ph.divergence_suspected)
    throw std::domain_error(
        "phi passed the divergence ceiling: no series route for this input");
  return brjuno_route(x, ph, b);
}

CremerSequence cremer_sequence(const AlphaSpec& x, int n_max, int q_cap,
                               mpfr_prec_t prec) {
  if (n_max < 0) throw std::invalid_argument("cremer_sequence: n_max < 0");
  Kernel k = resolve_kernel(x);
  if (kernel_is_rational(k))
    throw RationalInput("cremer_sequence needs an irrational input");

  DistanceSequence ds = distance_sequence(x, n_max, q_cap);
  CFExpansion exp = expand_gauss(x, n_max + 2, prec);

  CremerSequence out;
  out.truncated = ds.truncated;
  for (const DistanceRow& row : ds.rows) {
    if (row.n > exp.depth() || !(row.d > 0) || !std::isfinite(row.d)) {
      out.truncated = true;
      break;
    }
    out.terms.emplace_back(row.n, phi_partial(exp, row.n) + std::log(row.d));
  }
  return out;
}

UpsilonValue upsilon(const AlphaSpec& x, const Budget& b) {
  Kernel k = resolve_kernel(x);
  if (kernel_is_rational(k))
    return upsilon_rational(kernel_rational(k), b.precision_bits);

  std::string note;
  try {
    BrjunoValue ph = phi(x, b.tol, b.precision_bits, b.ceiling);
    if (!ph.divergence_suspected) {
      try {
        return brjuno_route(x, ph, b);
      } catch (const PrecisionExhausted& e) {
        note = std::string("series route out of precision (") + e.what() +
               "); sequence fallback";
      }
    } else {
      note = "phi passed the divergence ceiling: numerically non-Brjuno "
             "(advisory label)";
    }
  } catch (const PrecisionExhausted& e) {
    note = std::string("phi undecided at this budget (") + e.what() +
           "); sequence fallback";
  }

  UpsilonValue out;
  out.diagnostics.note = note;
  try {
    CremerSequence cs = cremer_sequence(x, b.n_max, b.q_cap, b.precision_bits);
    if (!cs.terms.empty()) {
      out.method = UpsilonMethod::cremer_sequence;
      out.value = cs.terms.back().second;
      out.error_estimate =
          unknown_tail_majorant(cs.terms.back().first, kCremerSlackC);
      out.diagnostics.sequence = std::move(cs.terms);
      out.diagnostics.truncated = cs.truncated;
      return out;
    }
    out.diagnostics.note += "; sequence produced no terms";
  } catch (const std::exception& e) {
    out.diagnostics.note += std::string("; sequence route failed: ") + e.what();
  }
  out.method = UpsilonMethod::failed;
  out.value = std::numeric_limits<double>::quiet_NaN();
  out.error_estimate = std::numeric_limits<double>::infinity();
  return out;
}

ProbeResult continuity_probe(const AlphaSpec& target,
                             const std::vector<AlphaSpec>& approach,
                             const Budget& b) {
  ProbeResult out;
  out.target = upsilon(target, b);
  out.rows.reserve(approach.size());
  for (const AlphaSpec& a : approach) {
    ProbeRow row;
    row.alpha = a;
    row.value = upsilon(a, b);
    row.delta = std::abs(row.value.value - out.target.value);
    out.rows.push_back(std::move(row));
  }
  return out;
}

std::vector<AlphaSpec> approach_sequence(const Rational& pq,
                                         const std::vector<long>& ks) {
  if (pq < 0 || pq >= 1)
    throw std::domain_error("approach_sequence: target must lie in [0, 1)");
  std::vector<Integer> digits;
  if (pq == 0) {
    digits = {Integer(0)};
  } else {
    digits = rational_expansions(pq).first.a;
  }
  std::vector<AlphaSpec> out;
  out.reserve(ks.size());
  for (long k : ks) {
    if (k < 1) throw std::domain_error("approach_sequence: digits must be >= 1");
    std::vector<Integer> pre = digits;
    pre.push_back(Integer(k));
    out.push_back(AlphaSpec::periodic(pre, {Integer(1)}));
  }
  return out;
}

AlphaSpec mirror_spec(const AlphaSpec& x) {
  switch (x.kind) {
    case AlphaSpec::Kind::rational: {
      if (!(x.rat > 0 && x.rat < 1))
        throw std::domain_error("mirror_spec: input must lie in (0, 1)");
      return AlphaSpec::rational_of(Rational(1) - x.rat);
    }
    case AlphaSpec::Kind::periodic_cf: {
      std::vector<Integer> pre = x.preperiod;
      const std::vector<Integer>& per = x.period;
      // Unroll enough of the period that the first two stream digits (and a
      // third, needed when a1 = 1) sit in the preperiod; the period itself
      // survives as a rotation.
      std::size_t rot = 0;
      while (pre.size() < 4) pre.push_back(per[rot++ % per.size()]);
      std::vector<Integer> nper(per.size());
      for (std::size_t i = 0; i < per.size(); ++i)
        nper[i] = per[(rot + i) % per.size()];
      if (pre[0] != 0)
        throw std::domain_error("mirror_spec: input must lie in (0, 1)");
      std::vector<Integer> npre = {Integer(0)};
      if (pre[1] >= 2) {
        npre.push_back(Integer(1));
        npre.push_back(pre[1] - 1);
        npre.insert(npre.end(), pre.begin() + 2, pre.end());
      } else {
        npre.push_back(pre[2] + 1);
        npre.insert(npre.end(), pre.begin() + 3, pre.end());
      }
      return AlphaSpec::periodic(std::move(npre), std::move(nper));
    }
    case AlphaSpec::Kind::digits: {
      const std::vector<Integer>& d = x.digit_list;
      if (d.empty() || d[0] != 0)
        throw std::domain_error("mirror_spec: input must lie in (0, 1)");
      std::vector<Integer> nd = {Integer(0)};
      if (d.size() >= 2 && d[1] >= 2) {
        nd.push_back(Integer(1));
        nd.push_back(d[1] - 1);
        nd.insert(nd.end(), d.begin() + 2, d.end());
      } else if (d.size() >= 3) {  // a1 = 1
        nd.push_back(d[2] + 1);
        nd.insert(nd.end(), d.begin() + 3, d.end());
      } else {
        throw std::domain_error("mirror_spec: too few digits to mirror");
      }
      return AlphaSpec::finite_digits(std::move(nd), x.terminal);
    }
    default:
      throw std::domain_error(
          "mirror_spec: decimal inputs have no digit form to mirror");
  }
}

}  // namespace brjuno
