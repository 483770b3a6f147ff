#include "brjuno/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "brjuno/cf.hpp"
#include "brjuno/errors.hpp"
#include "brjuno/series.hpp"

namespace brjuno {

namespace {

using CD = std::complex<double>;

constexpr double kPi = std::numbers::pi;
constexpr double kEscape = 1e15;
constexpr double kInf = std::numeric_limits<double>::infinity();

CD multiplier_of(const AlphaSpec& alpha) {
  Kernel k = resolve_kernel(alpha);
  return Complex::unit(kernel_frac_mul(k, Integer(1), kDefaultPrec)).to_std();
}

CD apply_map(CD lambda, CD z) { return lambda * z + z * z; }

struct FqEval {
  CD ratio{0.0, 0.0};  // f / f' for f(z) = P^{oq}(z) - z
  double abs_f = kInf;
  bool escaped = false;
};

// Composed-map evaluation of f = P^{oq} - id and its derivative. Once an
// iterate passes the escape bound, w essentially squares each remaining step
// and the Newton ratio w/D halves, so the asymptotic ratio is returned
// without ever overflowing.
FqEval eval_fq(CD lambda, int q, CD z) {
  CD w = z;
  CD D(1.0, 0.0);
  for (int k = 0; k < q; ++k) {
    if (std::abs(w) > kEscape)
      return {(w / D) * std::ldexp(1.0, -(q - k)), kInf, true};
    D *= lambda + 2.0 * w;
    w = apply_map(lambda, w);
  }
  CD f = w - z;
  CD fp = D - 1.0;
  double af = std::abs(f);
  if (!(std::abs(fp) > 1e-300)) return {f, af, false};  // stationary start
  return {f / fp, af, false};
}

// Same, but for the deflated polynomial g = (P^{oq} - id)/z. z = 0 is an
// exact root of f for every q, so dividing it out analytically keeps the
// root finder away from the origin's (possibly multiple, at parabolic
// parameters) copy. abs_f carries |g|; the Newton ratio is
// g/g' = f z / (f' z - f).
FqEval eval_gq(CD lambda, int q, CD z) {
  CD w = z;
  CD D(1.0, 0.0);
  for (int k = 0; k < q; ++k) {
    if (std::abs(w) > kEscape) {
      CD nf = (w / D) * std::ldexp(1.0, -(q - k));
      return {nf * z / (z - nf), kInf, true};
    }
    D *= lambda + 2.0 * w;
    w = apply_map(lambda, w);
  }
  CD f = w - z;
  CD fp = D - 1.0;
  double ag = std::abs(f) / std::abs(z);
  CD den = fp * z - f;
  if (!(std::abs(den) > 1e-300)) return {f, ag, false};
  return {f * z / den, ag, false};
}

// The 2^q - 1 roots of the deflated polynomial. Two phases:
//
// 1. Itinerary seeding. P(z) = (z + lambda/2)^2 - lambda^2/4 has two inverse
//    branches z = -lambda/2 +/- sqrt(w + lambda^2/4). Backward orbits contract
//    onto the Julia set, where every cycle of an irrationally-neutral
//    quadratic except the fixed point at 0 lives and is repelling, so
//    iterating the q-periodic branch word of each of the 2^q sign masks
//    converges to the periodic point with that itinerary. Orbits start at the
//    repelling fixed point 1 - lambda (on the Julia set, so no candidate can
//    get stuck circulating inside a Siegel disk).
//
// 2. Aberth cleanup, Gauss-Seidel style: seeded points freeze on their roots
//    within a sweep or two and keep repelling; filler points for whatever the
//    mask map failed to reach (collided itineraries, multiple roots at
//    parabolic parameters) wander under repulsion into the unclaimed roots.
//    Corrections are clamped so crowding cannot fling an iterate into the
//    escape region; the rare escapee respawns deterministically.
//
// Unconverged or collided roots after polishing are an error: the caller has
// no way to repair a missing root.
std::vector<CD> deflated_roots(CD lambda, int q) {
  const int m = (1 << q) - 1;
  const int max_sweeps = 700;

  // Phase 1: one candidate per branch itinerary.
  const CD hl = 0.5 * lambda;
  const CD c4 = hl * hl;
  std::vector<CD> good;
  good.reserve(m);
  for (long mask = 0; mask < (1L << q); ++mask) {
    CD w = CD(1.0, 0.0) - lambda;
    CD prev = w;
    for (int cycle = 0; cycle < 1500; ++cycle) {
      for (int k = q - 1; k >= 0; --k) {
        CD s = std::sqrt(w + c4);
        w = ((mask >> k) & 1) ? (s - hl) : (-s - hl);
      }
      if (std::abs(w - prev) < 1e-11 * (1.0 + std::abs(w))) break;
      prev = w;
    }
    // Polish, and keep only candidates that genuinely sit on a root; a mask
    // whose backward orbit never settled is a filler slot for phase 2.
    for (int it = 0; it < 16; ++it) {
      FqEval e = eval_gq(lambda, q, w);
      if (e.escaped || std::abs(e.ratio) < 1e-14 * (1.0 + std::abs(w))) break;
      w -= e.ratio;
    }
    FqEval e = eval_gq(lambda, q, w);
    if (!e.escaped && std::abs(e.ratio) < 1e-6 * (1.0 + std::abs(w)))
      good.push_back(w);
  }
  // Dedupe collided itineraries (first seen wins).
  std::vector<CD> seeds;
  seeds.reserve(m);
  for (CD w : good) {
    bool fresh = true;
    for (CD s : seeds)
      if (std::abs(w - s) < 1e-7 * (1.0 + std::abs(w))) {
        fresh = false;
        break;
      }
    if (fresh && (int)seeds.size() < m) seeds.push_back(w);
  }

  // Low-discrepancy spawn over an annulus inside the root bound |z| <= 2.
  auto spawn = [](int i, int salt) {
    double fr = std::fmod(0.75487766624669276 * (i + 1) + 0.3247 * salt + 0.11, 1.0);
    double fa = std::fmod(0.61803398874989484 * (i + 1) + 0.2917 * salt + 0.37, 1.0);
    return std::polar(0.55 + 0.95 * fr, 2 * kPi * fa);
  };

  // Phase 2: Aberth over the seeds plus fillers for the deficit.
  std::vector<CD> z(m);
  for (int i = 0; i < m; ++i)
    z[i] = i < (int)seeds.size() ? seeds[i] : spawn(i, 0);
  std::vector<char> frozen(m, 0);

  // Convergence is judged by the Newton step |g/g'|, which approximates the
  // distance to the nearest root. A residual-based test would be unreachable
  // for strongly repelling cycles: the evaluation noise of f scales with the
  // orbit derivative, which grows like 2^q along typical orbits.
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    int active = 0;
    for (int i = 0; i < m; ++i) {
      if (frozen[i]) continue;
      FqEval e = eval_gq(lambda, q, z[i]);
      if (!e.escaped && std::abs(e.ratio) < 1e-13 * (1.0 + std::abs(z[i]))) {
        // Never freeze a second point onto an already-claimed root (origin
        // cluster aside, where parabolic copies legitimately coincide);
        // the repulsion term ejects the latecomer instead.
        bool dup = false;
        if (std::abs(z[i]) > 1e-6)
          for (int j = 0; j < m && !dup; ++j)
            if (j != i && frozen[j] &&
                std::abs(z[i] - z[j]) < 1e-9 * (1.0 + std::abs(z[i])))
              dup = true;
        if (!dup) {
          frozen[i] = 1;
          continue;
        }
      }
      ++active;
      CD S(0.0, 0.0);
      for (int j = 0; j < m; ++j) {
        if (j == i) continue;
        CD diff = z[i] - z[j];
        double n2 = std::norm(diff);
        if (n2 < 1e-60) {
          diff = CD(1e-30, 0.0);
          n2 = 1e-60;
        }
        S += CD(diff.real() / n2, -diff.imag() / n2);  // 1/diff, fast path
      }
      CD denom = 1.0 - e.ratio * S;
      CD corr = (std::abs(denom) > 1e-12) ? e.ratio / denom : e.ratio;
      double ac = std::abs(corr);
      if (ac > 0.2) corr *= 0.2 / ac;
      z[i] -= corr;
      if (!(std::abs(z[i]) < 2.5) || !(std::abs(z[i]) > 1e-100))
        z[i] = spawn(i, sweep + 1);
    }
    if (active == 0) break;
  }

  // Newton polish, then audit: every point must have stalled within a tiny
  // step of a root, and no two points may share one (the origin cluster at
  // parabolic parameters excepted).
  int failures = 0;
  for (int i = 0; i < m; ++i) {
    for (int it = 0; it < 16; ++it) {
      FqEval e = eval_gq(lambda, q, z[i]);
      if (e.escaped) break;
      if (std::abs(e.ratio) < 1e-14 * (1.0 + std::abs(z[i]))) break;
      z[i] -= e.ratio;
    }
    FqEval e = eval_gq(lambda, q, z[i]);
    if (e.escaped || !(std::abs(e.ratio) < 1e-8 * (1.0 + std::abs(z[i]))))
      ++failures;
  }
  int duplicates = 0;
  for (int i = 0; i < m; ++i) {
    if (std::abs(z[i]) < 1e-6) continue;
    for (int j = i + 1; j < m; ++j)
      if (std::abs(z[i] - z[j]) < 1e-9 * (1.0 + std::abs(z[i]))) ++duplicates;
  }
  if (failures > 0 || duplicates > 0)
    throw std::runtime_error(
        "period-" + std::to_string(q) + " root finding: " +
        std::to_string(failures) + " of " + std::to_string(m) +
        " roots failed to converge, " + std::to_string(duplicates) +
        " collided");
  return z;
}

int exact_period_of(CD lambda, int q, CD z) {
  for (int dv = 1; dv < q; ++dv) {
    if (q % dv) continue;
    CD w = z;
    for (int k = 0; k < dv; ++k) w = apply_map(lambda, w);
    if (std::abs(w - z) < 1e-8 * (1.0 + std::abs(z))) return dv;
  }
  return q;
}

CD orbit_multiplier(CD lambda, int period, CD z) {
  CD m(1.0, 0.0);
  CD w = z;
  for (int k = 0; k < period; ++k) {
    m *= lambda + 2.0 * w;
    w = apply_map(lambda, w);
  }
  return m;
}

double min_abs(const std::vector<PeriodicPoint>& pts) {
  double best = kInf;
  for (const auto& p : pts) best = std::min(best, std::abs(p.z));
  return best;
}

}  // namespace

std::vector<CycleSet> periodic_points(const AlphaSpec& alpha, int q_max,
                                      int q_cap) {
  if (q_max < 1) throw std::invalid_argument("periodic_points: q_max must be >= 1");
  if (q_max > q_cap)
    throw std::invalid_argument(
        "periodic_points: q_max = " + std::to_string(q_max) +
        " exceeds the degree cap (2^q roots, cap " + std::to_string(q_cap) + ")");
  const CD lambda = multiplier_of(alpha);

  std::vector<CycleSet> out;
  out.reserve(q_max);
  for (int q = 1; q <= q_max; ++q) {
    std::vector<CD> roots = deflated_roots(lambda, q);
    CycleSet cs;
    cs.label = "X(" + std::to_string(q) + ")";
    for (CD r : roots) {
      // At a parabolic parameter the origin is a multiple root of f, so the
      // deflated polynomial still carries copies that converge onto 0; those
      // collided points stay excluded.
      if (std::abs(r) < 1e-8) continue;
      if (exact_period_of(lambda, q, r) != q) continue;  // lower level's point
      cs.points.push_back({r, q, orbit_multiplier(lambda, q, r)});
    }
    for (std::size_t i = 0; i < cs.points.size(); ++i)
      for (std::size_t j = i + 1; j < cs.points.size(); ++j)
        if (std::abs(cs.points[i].z - cs.points[j].z) <
            1e-8 * (1.0 + std::abs(cs.points[i].z)))
          ++cs.near_collisions;
    cs.d = min_abs(cs.points);
    out.push_back(std::move(cs));
  }
  return out;
}

DistanceSequence distance_sequence(const AlphaSpec& alpha, int n_max,
                                   int q_cap) {
  if (n_max < 0) throw std::invalid_argument("distance_sequence: n_max < 0");
  CFExpansion e = expand_gauss(alpha, n_max + 1);
  int depth = std::min(e.depth(), n_max);

  // Convergent denominators grow monotonically; keep the prefix under the cap.
  int last = -1;
  for (int n = 0; n <= depth; ++n) {
    if (e.convergents[n].second > q_cap) break;
    last = n;
  }
  DistanceSequence seq;
  seq.truncated = (last < n_max);
  if (last < 0) return seq;

  int q_top = static_cast<int>(e.convergents[last].second.convert_to<long>());
  std::vector<CycleSet> sets = periodic_points(alpha, q_top, q_cap);

  // d_n = min |z| over ALL periods <= q_n, i.e. a prefix minimum across sets.
  std::vector<double> prefix(q_top + 1, kInf);
  for (int q = 1; q <= q_top; ++q)
    prefix[q] = std::min(prefix[q - 1], sets[q - 1].d);

  for (int n = 0; n <= last; ++n) {
    DistanceRow row;
    row.n = n;
    row.q = e.convergents[n].second;
    row.d = prefix[static_cast<int>(row.q.convert_to<long>())];
    seq.rows.push_back(row);
  }
  return seq;
}

CycleSet explosion_cycle(const Rational& pq, const AlphaSpec& alpha) {
  const Integer& qz = denominator(pq);
  if (qz > kQCap)
    throw std::invalid_argument("explosion_cycle: denominator above the degree cap");
  const int q = static_cast<int>(qz.convert_to<long>());
  const std::string label =
      "C(" + numerator(pq).str() + "/" + qz.str() + ")";

  Kernel k = resolve_kernel(alpha);
  if (kernel_is_rational(k) && kernel_rational(k) == pq) {
    CycleSet cs;
    cs.label = label;
    cs.points.push_back({CD(0.0, 0.0), 1, multiplier_of(alpha)});
    cs.d = 0.0;
    return cs;
  }
  if (kernel_cmp_rational(k, pq) == 0)
    throw PrecisionExhausted(
        "explosion_cycle: alpha is not separated from p/q at the input's "
        "precision");

  const double eps = kernel_sub_rational(k, pq, kDefaultPrec).to_double();
  if (!(std::abs(eps) < 1.0 / (double(q) * q * q)))
    throw std::domain_error(
        "explosion_cycle: alpha outside the birth disk |alpha - p/q| < 1/q^3");

  const CD lambda = multiplier_of(alpha);
  const CD A = parabolic_coefficient(pq).A.to_std();

  // (1 - e^{2 i pi q e})/A with the numerator written as
  // -2i sin(pi q e) e^{i pi q e} to dodge cancellation.
  auto ring_base = [&](double e) {
    const double half = kPi * q * e;
    return CD(0.0, -2.0) * std::sin(half) * std::polar(1.0, half) / A;
  };
  auto polish = [&](CD zi, const CD& lam) {
    for (int it = 0; it < 60; ++it) {
      FqEval ev = eval_fq(lam, q, zi);
      if (ev.escaped)
        throw std::runtime_error("explosion_cycle: Newton iterate escaped");
      if (ev.abs_f < 1e-14 * (1.0 + std::abs(zi)) ||
          std::abs(ev.ratio) < 1e-14 * (1.0 + std::abs(zi)))
        return zi - ev.ratio;
      zi -= ev.ratio;
    }
    throw std::runtime_error("explosion_cycle: Newton failed to converge");
  };

  // The leading-order ring (q-th roots of ring_base) is only a trustworthy
  // seed well inside the birth disk, so start there and walk eps up
  // geometrically, tracking the cycle by Newton continuation. Each stage
  // rescales the points by the exact ratio of ring sizes before re-polishing.
  const double p_over_q =
      numerator(pq).convert_to<double>() / denominator(pq).convert_to<double>();
  const double eps_safe = 1.0 / (8.0 * q * q * q);
  int stages = 0;
  while (std::abs(eps) > eps_safe * std::pow(2.0, stages)) ++stages;

  const double eps0 = eps * std::pow(0.5, stages);
  CD base = ring_base(eps0);
  const double rad = std::pow(std::abs(base), 1.0 / q);
  const double ang = std::arg(base) / q;
  CD lam0 = stages == 0 ? lambda : std::polar(1.0, 2 * kPi * (p_over_q + eps0));
  std::vector<CD> pts(q);
  for (int i = 0; i < q; ++i)
    pts[i] = polish(std::polar(rad, ang + 2 * kPi * i / q), lam0);
  for (int j = 1; j <= stages; ++j) {
    const double ej = eps * std::pow(0.5, stages - j);
    const CD grow = std::pow(ring_base(ej) / base, 1.0 / q);
    base = ring_base(ej);
    const CD lam =
        j == stages ? lambda : std::polar(1.0, 2 * kPi * (p_over_q + ej));
    for (int i = 0; i < q; ++i) pts[i] = polish(pts[i] * grow, lam);
  }

  // Validate and order as a single orbit starting from the innermost point.
  double scale = 0;
  for (CD p : pts) scale = std::max(scale, std::abs(p));
  if (q >= 2) {
    for (int i = 0; i < q; ++i)
      for (int j = i + 1; j < q; ++j)
        if (std::abs(pts[i] - pts[j]) < 1e-6 * scale)
          throw std::runtime_error(
              "explosion_cycle: seeds collapsed onto the same root");
  }
  int start = 0;
  for (int i = 1; i < q; ++i)
    if (std::abs(pts[i]) < std::abs(pts[start])) start = i;

  std::vector<char> used(q, 0);
  std::vector<CD> orbit(q);
  orbit[0] = pts[start];
  used[start] = 1;
  for (int step = 1; step < q; ++step) {
    CD next = apply_map(lambda, orbit[step - 1]);
    int hit = -1;
    for (int j = 0; j < q; ++j) {
      if (!used[j] && std::abs(pts[j] - next) < 1e-6 * scale) {
        hit = j;
        break;
      }
    }
    if (hit < 0)
      throw std::runtime_error("explosion_cycle: points do not form one orbit");
    orbit[step] = pts[hit];
    used[hit] = 1;
  }
  // Closure: the orbit returns to its start.
  if (std::abs(apply_map(lambda, orbit[q - 1]) - orbit[0]) > 1e-6 * scale)
    throw std::runtime_error("explosion_cycle: orbit does not close up");

  CycleSet cs;
  cs.label = label;
  const CD mult = orbit_multiplier(lambda, q, orbit[0]);
  for (CD zp : orbit) cs.points.push_back({zp, q, mult});
  cs.d = min_abs(cs.points);
  return cs;
}

ZEpsilonCheck z_epsilon_check(const Rational& pq, double eps) {
  if (eps == 0) throw std::invalid_argument("z_epsilon_check: eps must be nonzero");
  const int q = static_cast<int>(denominator(pq).convert_to<long>());
  const Rational apr = pq + Rational(eps);  // exact binary value of eps
  AlphaSpec probe = AlphaSpec::rational_of(apr);

  CycleSet cycle = explosion_cycle(pq, probe);
  const double z_eps = cycle.d;

  CFExpansion e = expand_gauss(probe, 128);
  int n0 = -1;
  for (int n = 0; n <= e.depth(); ++n) {
    if (e.convergents[n].first == numerator(pq) &&
        e.convergents[n].second == denominator(pq)) {
      n0 = n;
      break;
    }
  }
  if (n0 < 0)
    throw std::runtime_error(
        "z_epsilon_check: p/q is not a convergent of p/q + eps");

  const double log_inv_alpha = -log(e.alphas[n0]).to_double();
  const double beta_prev = e.beta(n0 - 1).to_double();
  ZEpsilonCheck out;
  out.lhs = std::log(z_eps) + beta_prev * log_inv_alpha;
  ParabolicData pd = parabolic_coefficient(pq);
  out.rhs = std::log(pd.la.to_double()) + std::log(2 * kPi) / q;
  out.gap = std::abs(out.lhs - out.rhs);
  return out;
}

double rescaled_map_residual(const Rational& pq, double eps,
                             const std::vector<CD>& w_samples) {
  if (eps == 0)
    throw std::invalid_argument("rescaled_map_residual: eps must be nonzero");
  const int q = static_cast<int>(denominator(pq).convert_to<long>());
  AlphaSpec probe = AlphaSpec::rational_of(pq + Rational(eps));
  CycleSet cycle = explosion_cycle(pq, probe);

  CD z_eps = cycle.points.front().z;
  for (const auto& p : cycle.points)
    if (std::abs(p.z) < std::abs(z_eps)) z_eps = p.z;

  const CD lambda = multiplier_of(probe);
  double worst = 0;
  for (CD w : w_samples) {
    CD u = z_eps * w;
    for (int k = 0; k < q; ++k) u = apply_map(lambda, u);
    CD Qq = u / z_eps;
    CD field = CD(0.0, 2 * kPi * q * eps) * w * (1.0 - std::pow(w, q));
    worst = std::max(worst, std::abs(Qq - w - field));
  }
  return worst / std::abs(eps);
}

}  // namespace brjuno
