// Command-line driver: Brjuno-type sums, Siegel disk radii, periodic-point
// distances, and the continuous size function over grids of rotation numbers.
//
// Exit codes: 0 success; 2 unusable input (grammar or domain precondition);
// 3 budget exhausted (no route certified at the requested precision);
// 4 sweep/probe completed but some rows failed.
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "brjuno/brjuno.hpp"
#include "brjuno/dynamics.hpp"
#include "brjuno/linearization.hpp"
#include "brjuno/sweep.hpp"
#include "brjuno/upsilon.hpp"

using namespace brjuno;

namespace {

std::string g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Options {
  int precision_bits = 128;
  int series_n = 4096;
  double tol = 1e-8;
  int qcap = 12;
  std::string out;  // empty = stdout
  std::string svg;  // sweep only

  Budget budget() const {
    Budget b;
    b.precision_bits = precision_bits;
    b.series_N = series_n;
    b.tol = tol;
    b.q_cap = qcap;
    return b;
  }
};

// Output sink: --out path or stdout.
struct Sink {
  std::ofstream file;
  std::ostream& os;
  explicit Sink(const std::string& path)
      : file(), os(path.empty() ? std::cout : (file.open(path), file)) {
    if (!path.empty() && !file)
      throw std::invalid_argument("cannot open output file: " + path);
  }
};

Rational require_rational(const AlphaSpec& x, const char* who) {
  Kernel k = resolve_kernel(x);
  if (!kernel_is_rational(k))
    throw std::invalid_argument(std::string(who) + " needs a rational p/q");
  return kernel_rational(k);
}

int cmd_upsilon(const std::string& text, const Options& opt) {
  AlphaSpec x = parse_alpha(text);
  UpsilonValue v = upsilon(x, opt.budget());
  Sink sink(opt.out);
  sink.os << "alpha = " << x.text() << "\n"
          << "upsilon = " << g17(v.value) << "\n"
          << "method = " << method_name(v.method) << "\n"
          << "error_estimate = " << g17(v.error_estimate) << "\n";
  if (!v.diagnostics.note.empty())
    sink.os << "note = " << v.diagnostics.note << "\n";
  if (v.method == UpsilonMethod::failed) {
    std::cerr << "upsilon: no route succeeded at this budget\n";
    return 3;
  }
  return 0;
}

int cmd_phi(const std::string& text, bool tilde, const Options& opt) {
  AlphaSpec x = parse_alpha(text);
  Budget b = opt.budget();
  BrjunoValue v = tilde ? phi_tilde(x, b.tol, b.precision_bits, b.ceiling)
                        : phi(x, b.tol, b.precision_bits, b.ceiling);
  Sink sink(opt.out);
  sink.os << "alpha = " << x.text() << "\n"
          << (tilde ? "phi_tilde = " : "phi = ") << g17(v.value) << "\n"
          << "terms_used = " << v.terms_used << "\n"
          << "tail_bound = " << g17(v.tail_bound) << "\n";
  if (v.divergence_suspected)
    sink.os << "divergence_suspected = true (value is a truncated lower "
               "bound)\n";
  return 0;
}

int cmd_phitrunc(const std::string& text, const Options& opt) {
  Rational pq = require_rational(parse_alpha(text), "phitrunc");
  BrjunoValue v = phi_trunc_value(pq, opt.precision_bits);
  Sink sink(opt.out);
  sink.os << "alpha = " << AlphaSpec::rational_of(pq).text() << "\n"
          << "phi_trunc = " << g17(v.value) << "\n"
          << "terms_used = " << v.terms_used << "\n";
  return 0;
}

int cmd_radius(const std::string& text, const Options& opt) {
  AlphaSpec x = parse_alpha(text);
  LinearizingSeries s = linearize(x, opt.series_n, opt.precision_bits);
  RadiusEstimate rs = conformal_radius(s, RadiusMethod::slope_fit);
  RadiusEstimate rh = conformal_radius(s, RadiusMethod::hadamard);
  Sink sink(opt.out);
  sink.os << "alpha = " << x.text() << "\n"
          << "r_slope_fit = " << g17(rs.value) << "\n"
          << "r_hadamard = " << g17(rh.value) << "\n"
          << "spread = " << g17(rs.spread) << "\n"
          << "N = " << rs.N_used << "\n";
  return 0;
}

int cmd_sweep(const std::string& lo_text, const std::string& hi_text,
              int farey_q, int surd_n, bool tilde, const Options& opt) {
  if ((farey_q > 0) == (surd_n > 0))
    throw std::invalid_argument("sweep needs exactly one of --farey/--surds");
  SweepConfig cfg;
  cfg.lo = require_rational(parse_alpha(lo_text), "sweep --lo");
  cfg.hi = require_rational(parse_alpha(hi_text), "sweep --hi");
  cfg.grid = farey_q > 0 ? GridKind::farey : GridKind::surd;
  cfg.grid_param = farey_q > 0 ? farey_q : surd_n;
  cfg.flavor = tilde ? BrjunoFlavor::nearest_integer : BrjunoFlavor::gauss;
  cfg.budget = opt.budget();

  SweepResult res = run_sweep(cfg);
  {
    Sink sink(opt.out);
    write_csv(res, sink.os);
  }
  if (!opt.svg.empty()) {
    std::ofstream sf(opt.svg);
    if (!sf) throw std::invalid_argument("cannot open svg file: " + opt.svg);
    write_svg(res, cfg.lo, cfg.hi, sf);
  }
  std::cerr << "sweep: " << res.rows.size() << " points, " << res.failed
            << " failed\n";
  return res.failed > 0 ? 4 : 0;
}

int cmd_probe(const std::string& target_text, int count, const Options& opt) {
  if (count < 0 || count > 24)
    throw std::invalid_argument("probe --count must be in [0, 24]");
  AlphaSpec target = parse_alpha(target_text);
  Rational pq = require_rational(target, "probe");
  std::vector<long> ks;
  for (int j = 1; j <= count; ++j) ks.push_back(1L << j);
  ProbeResult pr = continuity_probe(target, approach_sequence(pq, ks),
                                    opt.budget());
  Sink sink(opt.out);
  sink.os << "k,alpha_prime,upsilon,delta\n";
  int failed = 0;
  for (std::size_t i = 0; i < pr.rows.size(); ++i) {
    const ProbeRow& r = pr.rows[i];
    sink.os << ks[i] << ",\"" << r.alpha.text() << "\","
            << g17(r.value.value) << ',' << g17(r.delta) << '\n';
    if (r.value.method == UpsilonMethod::failed) ++failed;
  }
  if (pr.target.method == UpsilonMethod::failed) {
    std::cerr << "probe: upsilon failed at the target itself\n";
    return 3;
  }
  return failed > 0 ? 4 : 0;
}

int cmd_cycle(const std::string& pq_text, double eps, const Options& opt) {
  Rational pq = require_rational(parse_alpha(pq_text), "cycle");
  AlphaSpec alpha = AlphaSpec::rational_of(pq + Rational(eps));
  CycleSet cs = explosion_cycle(pq, alpha);
  Sink sink(opt.out);
  sink.os << "label = " << cs.label << "\n"
          << "points = " << cs.points.size() << "\n";
  for (std::size_t i = 0; i < cs.points.size(); ++i) {
    const std::complex<double>& z = cs.points[i].z;
    sink.os << "z[" << i << "] = " << g17(z.real()) << " "
            << (z.imag() < 0 ? "- " : "+ ") << g17(std::abs(z.imag()))
            << "i  |z| = " << g17(std::abs(z)) << "\n";
  }
  sink.os << "d = " << g17(cs.d) << "\n";
  if (eps != 0.0) {
    ZEpsilonCheck zc = z_epsilon_check(pq, eps);
    sink.os << "z_eps lhs = " << g17(zc.lhs) << "\n"
            << "z_eps rhs = " << g17(zc.rhs) << "\n"
            << "z_eps gap = " << g17(zc.gap) << "\n";
  }
  return 0;
}

int cmd_dn(const std::string& text, int n_max, const Options& opt) {
  AlphaSpec x = parse_alpha(text);
  DistanceSequence ds = distance_sequence(x, n_max, Options().qcap);
  Sink sink(opt.out);
  sink.os << "n,q,d\n";
  for (const DistanceRow& r : ds.rows)
    sink.os << r.n << ',' << r.q << ',' << g17(r.d) << '\n';
  if (ds.truncated)
    std::cerr << "dn: sequence truncated (degree cap or digits exhausted)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{
      "Brjuno-type sums, Siegel disk radii, and the continuous size function "
      "of quadratic rotation domains"};
  app.set_config("--config", "",
                 "key=value file with the options below (flags win)");
  app.add_option("--precision-bits", opt.precision_bits,
                 "working precision for exact-kernel arithmetic")
      ->capture_default_str();
  app.add_option("--series-n", opt.series_n,
                 "linearizing series truncation order")
      ->capture_default_str();
  app.add_option("--tol", opt.tol, "tail tolerance for the Brjuno sums")
      ->capture_default_str();
  app.add_option("--qcap", opt.qcap,
                 "max convergent denominator for periodic-point searches")
      ->capture_default_str();
  app.add_option("--out", opt.out, "write results here instead of stdout");
  app.add_option("--svg", opt.svg, "also write an SVG plot (sweep only)");
  app.require_subcommand(1);

  std::string alpha_text, lo_text = "0/1", hi_text = "1/1";
  bool tilde = false;
  int farey_q = 0, surd_n = 0, probe_count = 6, dn_max = 10;
  double eps = 0.0;

  CLI::App* c_upsilon = app.add_subcommand(
      "upsilon", "evaluate the size function at one rotation number");
  c_upsilon->add_option("alpha", alpha_text, "rotation number")->required();

  CLI::App* c_phi = app.add_subcommand("phi", "Brjuno sum of an irrational");
  c_phi->add_option("alpha", alpha_text, "rotation number")->required();
  c_phi->add_flag("--tilde", tilde, "nearest-integer variant");

  CLI::App* c_phitrunc = app.add_subcommand(
      "phitrunc", "truncated Brjuno sum of a rational");
  c_phitrunc->add_option("alpha", alpha_text, "rational p/q")->required();

  CLI::App* c_radius = app.add_subcommand(
      "radius", "conformal radius of the rotation domain");
  c_radius->add_option("alpha", alpha_text, "rotation number")->required();

  CLI::App* c_sweep = app.add_subcommand(
      "sweep", "evaluate upsilon over a grid and write CSV (and SVG)");
  c_sweep->add_option("--lo", lo_text, "left endpoint (rational)")
      ->capture_default_str();
  c_sweep->add_option("--hi", hi_text, "right endpoint (rational)")
      ->capture_default_str();
  CLI::Option* o_farey = c_sweep->add_option(
      "--farey", farey_q, "grid: all rationals with denominator <= this");
  CLI::Option* o_surds = c_sweep->add_option(
      "--surds", surd_n, "grid: this many quadratic surds");
  o_farey->excludes(o_surds);
  o_surds->excludes(o_farey);
  c_sweep->add_flag("--tilde", tilde,
                    "nearest-integer flavor (fails at rationals by design)");

  CLI::App* c_probe = app.add_subcommand(
      "probe", "approach a rational along surds with growing digits");
  c_probe->add_option("target", alpha_text, "rational p/q")->required();
  c_probe->add_option("--count", probe_count,
                      "number of probes: digits k = 2, 4, ..., 2^count")
      ->capture_default_str();

  CLI::App* c_cycle = app.add_subcommand(
      "cycle", "explosion cycle of p/q at a nearby rotation number");
  c_cycle->add_option("pq", alpha_text, "rational p/q")->required();
  c_cycle->add_option("eps", eps, "offset from p/q (|eps| < 1/q^3)")
      ->required();

  CLI::App* c_dn = app.add_subcommand(
      "dn", "distance from the fixed point to nearby periodic cycles");
  c_dn->add_option("alpha", alpha_text, "rotation number")->required();
  c_dn->add_option("--nmax", dn_max, "last convergent index")
      ->capture_default_str();

  for (CLI::App* sub : {c_upsilon, c_phi, c_phitrunc, c_radius, c_sweep,
                        c_probe, c_cycle, c_dn})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*c_upsilon) return cmd_upsilon(alpha_text, opt);
    if (*c_phi) return cmd_phi(alpha_text, tilde, opt);
    if (*c_phitrunc) return cmd_phitrunc(alpha_text, opt);
    if (*c_radius) return cmd_radius(alpha_text, opt);
    if (*c_sweep) return cmd_sweep(lo_text, hi_text, farey_q, surd_n, tilde, opt);
    if (*c_probe) return cmd_probe(alpha_text, probe_count, opt);
    if (*c_cycle) return cmd_cycle(alpha_text, eps, opt);
    if (*c_dn) return cmd_dn(alpha_text, dn_max, opt);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const PrecisionExhausted& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    if (std::isfinite(e.partial))
      std::cerr << "partial value = " << g17(e.partial)
                << " (depth " << e.depth << ", unresolved majorant "
                << g17(e.majorant) << ")\n";
    return 3;
  } catch (const std::domain_error& e) {  // includes RationalInput
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
