#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "brjuno/dynamics.hpp"
#include "brjuno/series.hpp"
#include "brjuno/sweep.hpp"
#include "brjuno/upsilon.hpp"

namespace py = pybind11;
using namespace brjuno;

namespace {

// mpz values can outgrow long (convergent denominators do), so go via text.
py::object to_pyint(const Integer& n) {
  return py::module_::import("builtins").attr("int")(py::str(n.str()));
}

Rational want_rational(const std::string& text) {
  Kernel k = resolve_kernel(parse_alpha(text));
  if (!kernel_is_rational(k))
    throw std::domain_error(text + ": expected an exact rational");
  return kernel_rational(k);
}

Budget make_budget(int series_n, double tol, int bits, int qcap, int nmax) {
  Budget b;
  b.series_N = series_n;
  b.tol = tol;
  b.precision_bits = bits;
  b.q_cap = qcap;
  b.n_max = nmax;
  return b;
}

py::dict upsilon_dict(const UpsilonValue& v) {
  py::dict d;
  d["value"] = v.value;
  d["method"] = method_name(v.method);
  d["error_estimate"] = v.error_estimate;
  return d;
}

py::dict phi_dict(const BrjunoValue& v) {
  py::dict d;
  d["value"] = v.value;
  d["terms_used"] = v.terms_used;
  d["tail_bound"] = v.tail_bound;
  d["divergence_suspected"] = v.divergence_suspected;
  return d;
}

}  // namespace

PYBIND11_MODULE(_brjuno, m) {
  m.doc() =
      "Brjuno sums, Siegel-disk conformal radii, and the continuous size "
      "function of the quadratic family e^{2 i pi alpha} z + z^2";

  py::register_exception<ParseError>(m, "AlphaParseError", PyExc_ValueError);

  m.def(
      "canonical", [](const std::string& t) { return parse_alpha(t).text(); },
      py::arg("alpha"),
      "Parse an alpha description (p/q, cf:[...], pcf:[...|...], "
      "dec:LIT@BITS) and return its canonical text form.");

  m.def(
      "mirror",
      [](const std::string& t) { return mirror_spec(parse_alpha(t)).text(); },
      py::arg("alpha"), "Text form of 1 - alpha, computed on the digits.");

  m.def(
      "expand",
      [](const std::string& t, int max_terms, bool nearest, int bits) {
        AlphaSpec x = parse_alpha(t);
        CFExpansion e = nearest ? expand_nearest(x, max_terms, bits)
                                : expand_gauss(x, max_terms, bits);
        py::list digits, convergents, betas;
        for (const auto& a : e.a) digits.append(to_pyint(a));
        for (const auto& pq : e.convergents)
          convergents.append(
              py::make_tuple(to_pyint(pq.first), to_pyint(pq.second)));
        for (const auto& b : e.betas) betas.append(b.to_double());
        py::dict d;
        d["digits"] = digits;
        d["convergents"] = convergents;
        d["betas"] = betas;
        d["terminated"] = e.terminated;
        return d;
      },
      py::arg("alpha"), py::arg("max_terms") = 32, py::arg("nearest") = false,
      py::arg("bits") = 128,
      "Continued-fraction digits, convergents, and beta products.");

  m.def(
      "phi",
      [](const std::string& t, double tol, int bits, bool nearest,
         double ceiling) {
        AlphaSpec x = parse_alpha(t);
        return phi_dict(nearest ? phi_tilde(x, tol, bits, ceiling)
                                : phi(x, tol, bits, ceiling));
      },
      py::arg("alpha"), py::arg("tol") = 1e-8, py::arg("bits") = 128,
      py::arg("nearest") = false, py::arg("ceiling") = 1e4,
      "Brjuno sum with a certified tail bound (nearest=True for the "
      "nearest-integer variant).");

  m.def(
      "phi_trunc",
      [](const std::string& pq, int bits) {
        return phi_trunc(want_rational(pq), bits);
      },
      py::arg("pq"), py::arg("bits") = 128,
      "Finite Brjuno sum of a rational.");

  m.def(
      "parabolic",
      [](const std::string& pq, int bits) {
        ParabolicData d = parabolic_coefficient(want_rational(pq), bits);
        py::dict r;
        r["A"] = d.A.to_std();
        r["la"] = d.la.to_double();
        r["residual"] = d.residual.to_double();
        return r;
      },
      py::arg("pq"), py::arg("bits") = 128,
      "Leading coefficient A of the q-fold composition at p/q and the "
      "asymptotic cycle size |1/(qA)|^{1/q}.");

  m.def(
      "radius",
      [](const std::string& t, int N, int bits) {
        LinearizingSeries s = linearize(parse_alpha(t), N, bits);
        RadiusEstimate slope = conformal_radius(s, RadiusMethod::slope_fit);
        RadiusEstimate had = conformal_radius(s, RadiusMethod::hadamard);
        py::dict d;
        d["slope_fit"] = slope.value;
        d["hadamard"] = had.value;
        d["spread"] = slope.spread;
        d["N"] = slope.N_used;
        return d;
      },
      py::arg("alpha"), py::arg("N") = 1024, py::arg("bits") = 128,
      "Siegel-disk conformal radius estimates from the linearizing series.");

  m.def(
      "upsilon",
      [](const std::string& t, int series_n, double tol, int bits, int qcap,
         int nmax) {
        return upsilon_dict(upsilon(
            parse_alpha(t), make_budget(series_n, tol, bits, qcap, nmax)));
      },
      py::arg("alpha"), py::arg("series_n") = 4096, py::arg("tol") = 1e-8,
      py::arg("bits") = 128, py::arg("qcap") = 12, py::arg("nmax") = 64,
      "The continuous size function: finite formula at rationals, "
      "Phi + log r on the series route, cremer-sequence fallback.");

  m.def(
      "upsilon_rational",
      [](const std::string& pq, int bits) {
        return upsilon_dict(upsilon_rational(want_rational(pq), bits));
      },
      py::arg("pq"), py::arg("bits") = 128,
      "Exact-route value Phi_trunc + log L + log(2 pi)/q at a rational.");

  m.def(
      "distance_sequence",
      [](const std::string& t, int nmax, int qcap) {
        DistanceSequence s = distance_sequence(parse_alpha(t), nmax, qcap);
        py::list rows;
        for (const auto& r : s.rows)
          rows.append(py::make_tuple(r.n, to_pyint(r.q), r.d));
        return py::make_tuple(rows, s.truncated);
      },
      py::arg("alpha"), py::arg("nmax") = 16, py::arg("qcap") = 12,
      "Rows (n, q_n, d_n) of the distance-to-cycles sequence, plus a "
      "truncation flag.");

  m.def(
      "explosion_cycle",
      [](const std::string& pq, double eps) {
        Rational r = want_rational(pq);
        CycleSet c =
            explosion_cycle(r, AlphaSpec::rational_of(r + Rational(eps)));
        py::list pts;
        for (const auto& p : c.points) pts.append(p.z);
        py::dict d;
        d["points"] = pts;
        d["d"] = c.d;
        d["label"] = c.label;
        return d;
      },
      py::arg("pq"), py::arg("eps"),
      "The q-cycle of P at alpha = p/q + eps that collapses onto the origin "
      "as eps -> 0.");

  m.def(
      "farey",
      [](int max_q, const std::string& lo, const std::string& hi) {
        py::list out;
        for (const auto& r : farey_points(max_q, want_rational(lo),
                                          want_rational(hi)))
          out.append(AlphaSpec::rational_of(r).text());
        return out;
      },
      py::arg("max_q"), py::arg("lo") = "0/1", py::arg("hi") = "1/1",
      "All reduced fractions with denominator <= max_q in [lo, hi].");

  m.def(
      "surd_grid",
      [](int count, const std::string& lo, const std::string& hi) {
        py::list out;
        for (const auto& x :
             surd_grid(count, want_rational(lo), want_rational(hi)))
          out.append(x.text());
        return out;
      },
      py::arg("count"), py::arg("lo") = "0/1", py::arg("hi") = "1/1",
      "Evenly anchored quadratic surds strictly inside (lo, hi).");
}
