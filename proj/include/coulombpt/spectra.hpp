#pragma once

// The eigenvalue engine. Negative eigenvalues of H_alpha^(nu) are the roots
// of the transcendental equation F_nu(E) = alpha, with
//   F_nu(E) = nu/(4 pi) ( psi(1 + nu/(2 sqrt|E|)) + ln(2 sqrt|E|)
//                         + 2 gamma - 1 - sqrt|E|/nu ),  E < 0.
// For nu < 0 the digamma poles sit at the hydrogenoid levels
// E_n = -nu^2/(4 n^2) and every inter-pole interval carries exactly one
// root; for nu > 0 there is a single branch increasing to the threshold
// alpha_nu. Roots are solved in the variable s = -nu/(2 sqrt|E|), which
// maps the poles to positive integers and keeps the bracketing uniform as
// the roots accumulate at zero energy.

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "coulombpt/radial.hpp"

namespace coulombpt::spectra {

struct solver_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline double friedrichs_level(double nu, int n) {
  return -nu * nu / (4.0 * double(n) * double(n));
}

inline double spectral_function(double nu, double E) {
  if (!(E < 0.0)) {
    throw std::domain_error("spectral_function: requires E < 0");
  }
  if (nu == 0.0) {
    throw std::domain_error("spectral_function: requires nu != 0");
  }
  const double sqE = std::sqrt(-E);
  const double arg = 1.0 + nu / (2.0 * sqE);
  if (nu < 0.0 && arg <= 0.0 && arg == std::floor(arg)) {
    throw std::domain_error("spectral_function: E is a hydrogenoid level (pole)");
  }
  return nu / (4.0 * std::numbers::pi) *
         (specfun::digamma(arg) + std::log(2.0 * sqE) +
          2.0 * specfun::euler_gamma - 1.0 - sqE / nu);
}

namespace detail {

// F_{nu,kappa} by its closed formula, for any non-integer 1-kappa. The
// psi_bias knob shifts the digamma value and exists for sensitivity
// canaries in the verification battery; production callers leave it 0.
inline double f_nu_kappa_raw(double nu, double kappa, double psi_bias = 0.0) {
  return nu / (4.0 * std::numbers::pi) *
         ((specfun::digamma(1.0 - kappa) + psi_bias) + std::log(-nu / kappa) +
          (2.0 * specfun::euler_gamma - 1.0) + 1.0 / (2.0 * kappa));
}

}  // namespace detail

// Krein pole of the rank-one resolvent term: F_{nu,kappa} = F_nu(-eta).
inline double f_nu_kappa(const radial::ShiftFrame& frame) {
  return detail::f_nu_kappa_raw(frame.nu, frame.kappa);
}

// Same value without constructing a frame; kappa = -nu/(2 sqrt|E|) computed
// from an eigenvalue may lie outside the frame range (-inf,0) U (0,1).
inline double f_nu_kappa_at(double nu, double kappa) {
  return detail::f_nu_kappa_raw(nu, kappa);
}

// For nu > 0: F_nu increases to alpha_nu as E -> 0^-; no bound state at or
// above the threshold.
inline double alpha_threshold(double nu) {
  if (!(nu > 0.0)) {
    throw std::domain_error("alpha_threshold: requires nu > 0");
  }
  return nu / (4.0 * std::numbers::pi) *
         (std::log(nu) + 2.0 * specfun::euler_gamma - 1.0);
}

struct SpectralPoint {
  double E = 0.0;
  int n_index = 0;  // 1,2,... for the nu<0 ladder; 0 labels the nu>0 root E_+
  double residual = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
};

inline std::string point_label(const SpectralPoint& p) {
  return p.n_index == 0 ? std::string("+") : std::to_string(p.n_index);
}

namespace detail {

struct BrentResult {
  double x;
  double lo, hi;  // final straddling bracket
};

// Brent root refinement on a sign-change bracket.
template <class F>
BrentResult brent(F&& f, double a, double b, double fa, double fb, double xtol) {
  if (fa == 0.0) return {a, a, b};
  if (fb == 0.0) return {b, a, b};
  if ((fa > 0.0) == (fb > 0.0)) {
    throw solver_error("brent: endpoints do not bracket a root");
  }
  double c = a, fc = fa;
  double d = b - a, e = d;
  for (int it = 0; it < 200; ++it) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a; fc = fa; d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol1 = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) + 0.5 * xtol;
    const double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol1 || fb == 0.0) break;
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      double p, q, r;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        q = fa / fc;
        r = fb / fc;
        p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
        q = (q - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
        e = d; d = p / q;
      } else {
        d = xm; e = d;
      }
    } else {
      d = xm; e = d;
    }
    a = b; fa = fb;
    b += (std::abs(d) > tol1) ? d : (xm > 0 ? tol1 : -tol1);
    fb = f(b);
  }
  return {b, std::min(b, c), std::max(b, c)};
}

constexpr double kPoleOffset = 1e-9;  // bracket offset from integer s
constexpr double kBrentXtol = 1e-12;  // in the s (or t) variable

inline double energy_of_s(double nu, double s) { return -nu * nu / (4.0 * s * s); }

}  // namespace detail

// Unique root of F_nu(E) = alpha with nu < 0 in the n-th bracket: below the
// first pole for n = 1, inside (E_{n-1}, E_n) for n >= 2. In s the bracket
// is (n-1+delta, n-delta); F_nu diverges to -inf and +inf at the two ends,
// so the sign change is structural.
inline SpectralPoint solve_interval(double nu, double alpha, int n, double tol = 1e-10) {
  if (!(nu < 0.0)) throw std::invalid_argument("solve_interval: requires nu < 0");
  if (n < 1) throw std::invalid_argument("solve_interval: requires n >= 1");

  auto fs = [&](double s) { return spectral_function(nu, detail::energy_of_s(nu, s)) - alpha; };

  double s_lo, f_lo;
  const double s_hi = double(n) - detail::kPoleOffset;
  const double f_hi = fs(s_hi);
  if (n == 1) {
    s_lo = 0.5;
    f_lo = fs(s_lo);
    int guard = 0;
    while (f_lo >= 0.0) {
      s_lo *= 0.5;
      f_lo = fs(s_lo);
      if (++guard > 2000) throw solver_error("solve_interval: ground bracket search failed");
    }
  } else {
    s_lo = double(n - 1) + detail::kPoleOffset;
    f_lo = fs(s_lo);
  }
  if (!(f_lo < 0.0 && f_hi > 0.0)) {
    throw solver_error("solve_interval: bracket does not straddle alpha (n=" +
                       std::to_string(n) + ")");
  }
  const auto root = detail::brent(fs, s_lo, s_hi, f_lo, f_hi, detail::kBrentXtol);

  SpectralPoint p;
  p.E = detail::energy_of_s(nu, root.x);
  p.n_index = n;
  p.residual = std::abs(spectral_function(nu, p.E) - alpha);
  // E increases with s; widen by one ulp so the root is strictly interior
  p.bracket_lo = std::min(detail::energy_of_s(nu, root.lo),
                          std::nextafter(p.E, -std::numeric_limits<double>::infinity()));
  p.bracket_hi = std::max(detail::energy_of_s(nu, root.hi), std::nextafter(p.E, 0.0));
  if (p.residual > tol) {
    throw solver_error("solve_interval: residual " + std::to_string(p.residual) +
                       " above tolerance");
  }
  return p;
}

// nu > 0: none if alpha >= alpha_nu, otherwise the unique root of the single
// increasing branch, bracketed in t = nu/(2 sqrt|E|) by geometric expansion
// (F_nu -> -inf as E -> -inf, dominated by the -sqrt|E|/(4 pi) term).
inline std::optional<SpectralPoint> solve_positive_nu(double nu, double alpha,
                                                      double tol = 1e-10) {
  if (!(nu > 0.0)) throw std::invalid_argument("solve_positive_nu: requires nu > 0");
  if (alpha >= alpha_threshold(nu)) return std::nullopt;

  auto ft = [&](double t) {
    return spectral_function(nu, -nu * nu / (4.0 * t * t)) - alpha;
  };
  double t_hi = 1.0, f_hi = ft(t_hi);
  int guard = 0;
  while (f_hi <= 0.0) {
    t_hi *= 2.0;
    f_hi = ft(t_hi);
    if (++guard > 2000) throw solver_error("solve_positive_nu: upper bracket failed");
  }
  double t_lo = 0.5 * t_hi, f_lo = ft(t_lo);
  guard = 0;
  while (f_lo >= 0.0) {
    t_lo *= 0.5;
    f_lo = ft(t_lo);
    if (++guard > 2000) throw solver_error("solve_positive_nu: lower bracket failed");
  }
  const auto root = detail::brent(ft, t_lo, t_hi, f_lo, f_hi, detail::kBrentXtol);

  SpectralPoint p;
  p.E = -nu * nu / (4.0 * root.x * root.x);
  p.n_index = 0;
  p.residual = std::abs(spectral_function(nu, p.E) - alpha);
  p.bracket_lo = std::min(-nu * nu / (4.0 * root.lo * root.lo),
                          std::nextafter(p.E, -std::numeric_limits<double>::infinity()));
  p.bracket_hi = std::max(-nu * nu / (4.0 * root.hi * root.hi), std::nextafter(p.E, 0.0));
  if (p.residual > tol) {
    throw solver_error("solve_positive_nu: residual above tolerance");
  }
  return p;
}

struct SpectrumReport {
  CoulombParams params;
  std::vector<SpectralPoint> points;
  std::vector<double> friedrichs_reference;  // E_n^(nu), nu < 0 only
};

inline SpectrumReport assemble_spectrum(const CoulombParams& params, int n_max,
                                        double tol = 1e-10) {
  if (params.nu == 0.0) throw std::invalid_argument("assemble_spectrum: nu != 0 required");
  if (n_max < 1) throw std::invalid_argument("assemble_spectrum: n_max >= 1 required");

  SpectrumReport rep;
  rep.params = params;
  if (params.nu < 0.0) {
    rep.friedrichs_reference.reserve(n_max);
    for (int n = 1; n <= n_max; ++n) {
      rep.friedrichs_reference.push_back(friedrichs_level(params.nu, n));
    }
    if (params.alpha.is_inf) {
      // Friedrichs is handled analytically: the roots are the digamma poles.
      for (int n = 1; n <= n_max; ++n) {
        const double e = rep.friedrichs_reference[n - 1];
        SpectralPoint p;
        p.E = e;
        p.n_index = n;
        p.residual = 0.0;
        p.bracket_lo = std::nextafter(e, -std::numeric_limits<double>::infinity());
        p.bracket_hi = std::nextafter(e, 0.0);
        rep.points.push_back(p);
      }
    } else {
      for (int n = 1; n <= n_max; ++n) {
        rep.points.push_back(solve_interval(params.nu, params.alpha.value, n, tol));
      }
      // interlacing comes with the bracket construction; verify anyway
      for (int n = 1; n <= n_max; ++n) {
        const double e_n = rep.points[n - 1].E;
        const double ref_n = rep.friedrichs_reference[n - 1];
        if (e_n > ref_n || (n >= 2 && e_n < rep.friedrichs_reference[n - 2])) {
          throw solver_error("assemble_spectrum: interlacing violated at n=" +
                             std::to_string(n));
        }
      }
    }
    for (std::size_t i = 1; i < rep.points.size(); ++i) {
      if (!(rep.points[i - 1].E < rep.points[i].E)) {
        throw solver_error("assemble_spectrum: eigenvalues not increasing");
      }
    }
  } else {
    if (!params.alpha.is_inf) {
      if (auto p = solve_positive_nu(params.nu, params.alpha.value, tol)) {
        rep.points.push_back(*p);
      }
    }
    // alpha = inf for nu > 0 is the plain repulsive operator: empty.
  }
  return rep;
}

// Long-format eigenvalue table over an alpha grid, for the fan plots.
struct FibrationCell {
  double alpha = 0.0;
  int n_index = 0;
  double E = 0.0;
  bool ok = false;
};

struct FibrationTable {
  std::vector<FibrationCell> cells;
  std::vector<std::string> warnings;
};

inline FibrationTable fibration_data(double nu, std::span<const double> alpha_grid,
                                     int n_max, double tol = 1e-10) {
  if (nu == 0.0) throw std::invalid_argument("fibration_data: nu != 0 required");
  for (std::size_t i = 1; i < alpha_grid.size(); ++i) {
    if (!(alpha_grid[i - 1] <= alpha_grid[i])) {
      throw std::invalid_argument("fibration_data: alpha grid must be sorted");
    }
  }
  FibrationTable table;
  for (double alpha : alpha_grid) {
    if (nu < 0.0) {
      for (int n = 1; n <= n_max; ++n) {
        FibrationCell cell{alpha, n, 0.0, false};
        try {
          cell.E = solve_interval(nu, alpha, n, tol).E;
          cell.ok = true;
        } catch (const std::exception& ex) {
          table.warnings.push_back("alpha=" + std::to_string(alpha) +
                                   " n=" + std::to_string(n) + ": " + ex.what());
        }
        table.cells.push_back(cell);
      }
    } else {
      if (alpha < alpha_threshold(nu)) {
        FibrationCell cell{alpha, 0, 0.0, false};
        try {
          const auto p = solve_positive_nu(nu, alpha, tol);
          cell.E = p->E;
          cell.ok = true;
        } catch (const std::exception& ex) {
          table.warnings.push_back("alpha=" + std::to_string(alpha) + ": " + ex.what());
        }
        table.cells.push_back(cell);
      }
    }
  }
  return table;
}

}  // namespace coulombpt::spectra
