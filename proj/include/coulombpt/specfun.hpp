#pragma once

// Real-argument special functions for the half-line Coulomb problem:
// Gamma/digamma, Kummer M(a,b,z), Tricomi U(a,b,z) for integer b in {2,3},
// and the Whittaker pair (M_{k,1/2}, W_{k,1/2}) with first derivatives.
//
// Conventions follow Abramowitz & Stegun chapter 13:
//   M_{k,1/2}(z) = e^{-z/2} z M(1-k, 2, z)
//   W_{k,1/2}(z) = e^{-z/2} z U(1-k, 2, z)
// Only non-negative real arguments are supported.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace coulombpt::specfun {

inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;

// Value plus a heuristic (last-term style) absolute error estimate.
// The estimate is not a certified bound; cross-checks against independent
// oracles live in the test suite.
struct SpecfunResult {
  double value = 0.0;
  double abs_err_est = 0.0;
};

// Whittaker pair at fixed mu = 1/2, with derivatives in the argument.
struct WhittakerPair {
  double m = 0.0;        // M_{k,1/2}(rho), regular at 0
  double w = 0.0;        // W_{k,1/2}(rho), decaying at infinity
  double m_prime = 0.0;
  double w_prime = 0.0;
};

namespace detail {

inline bool is_nonpositive_integer(double x) {
  return x <= 0.0 && x == std::floor(x);
}

constexpr int kSeriesMax = 700;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Series/asymptotic handover for Kummer M. The M series has all-positive
// terms for a,z > 0, so the only cost of a large switch point is term count.
constexpr double kKummerZSwitch = 40.0;

// U(a,b,z) branch boundaries. The b=integer logarithmic connection formula
// cancels like e^{-z}, so it is restricted to small z; the 2F0 asymptotic
// series reaches machine precision only for large z. The window in between
// is evaluated from the Laplace integral representation (A&S 13.2.5).
constexpr double kTricomiLogMax = 8.0;
constexpr double kTricomiAsymMin = 100.0;

}  // namespace detail

inline double gamma(double x) {
  if (detail::is_nonpositive_integer(x)) {
    throw std::domain_error("gamma: pole at x = " + std::to_string(x));
  }
  return std::tgamma(x);
}

inline double log_gamma(double x) {
  if (x <= 0.0) {
    throw std::domain_error("log_gamma: requires x > 0, got " + std::to_string(x));
  }
  return std::lgamma(x);
}

// 1/Gamma(x), entire: zero at the poles of Gamma.
inline double rgamma(double x) {
  if (detail::is_nonpositive_integer(x)) return 0.0;
  if (std::abs(x) < 170.0) return 1.0 / std::tgamma(x);
  if (x > 0.0) return std::exp(-std::lgamma(x));
  // Very negative non-integer argument: Gamma is tiny, 1/Gamma huge.
  // Reflection: 1/Gamma(x) = Gamma(1-x) sin(pi x)/pi, with
  // sin(pi x) = (-1)^k sin(pi r) for x = k + r, k integer.
  const double r = x - std::round(x);
  const double sign = (std::llround(x - r) % 2 == 0) ? 1.0 : -1.0;
  return std::tgamma(1.0 - x) * sign * std::sin(M_PI * r) / M_PI;
}

// psi(x) = Gamma'(x)/Gamma(x). Recurrence psi(x+1) = psi(x) + 1/x shifts the
// argument above 6, then the Stirling-type series in 1/x^2 applies
// (A&S 6.3.18). Arguments left of the origin go through the reflection
// psi(x) = psi(1-x) - pi cot(pi x). Poles are a hard error: callers that
// need pole-side values evaluate at x = -q +- eps explicitly.
inline double digamma(double x) {
  if (detail::is_nonpositive_integer(x)) {
    throw std::domain_error("digamma: pole at x = " + std::to_string(x));
  }
  double result = 0.0;
  if (x < 0.0) {
    const double r = x - std::round(x);  // tan has period pi
    result = -M_PI / std::tan(M_PI * r);
    x = 1.0 - x;
  }
  while (x < 6.0) {
    result -= 1.0 / x;
    x += 1.0;
  }
  // B_{2k}/(2k) for k = 1..8
  static constexpr double kCoef[8] = {
      1.0 / 12.0,   -1.0 / 120.0,      1.0 / 252.0, -1.0 / 240.0,
      1.0 / 132.0,  -691.0 / 32760.0,  1.0 / 12.0,  -3617.0 / 8160.0};
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double tail = 0.0;
  for (int i = 7; i >= 0; --i) tail = (kCoef[i] + tail) * inv2;
  return result + std::log(x) - 0.5 * inv - tail;
}

namespace detail {

// Power series M(a,b,z) = sum (a)_n / (b)_n z^n / n!  (A&S 13.1.2).
// Terminates when a is a nonpositive integer.
inline SpecfunResult kummer_series(double a, double b, double z) {
  double term = 1.0;
  double sum = 1.0;
  double peak = 1.0;
  for (int n = 0; n < kSeriesMax; ++n) {
    term *= (a + n) / (b + n) * z / (n + 1);
    sum += term;
    peak = std::max(peak, std::abs(term));
    if (std::abs(term) <= kEps * std::abs(sum)) {
      return {sum, std::abs(term) + kEps * peak};
    }
  }
  return {sum, std::abs(term) + kEps * peak};
}

// A&S 13.5.1, leading exponential branch: for z -> +infinity
//   M(a,b,z) ~ Gamma(b)/Gamma(a) e^z z^{a-b} 2F0(b-a, 1-a; 1/z).
// The algebraic z^{-a} branch is exponentially subdominant on the positive
// real axis and is dropped.
inline SpecfunResult kummer_asymptotic(double a, double b, double z) {
  const double pref =
      std::tgamma(b) / std::tgamma(a) * std::exp(z + (a - b) * std::log(z));
  double term = 1.0;
  double sum = 1.0;
  for (int n = 0; n < 60; ++n) {
    const double next = term * (b - a + n) * (1.0 - a + n) / ((n + 1) * z);
    if (std::abs(next) >= std::abs(term)) break;  // optimal truncation
    term = next;
    sum += term;
    if (std::abs(term) <= kEps * std::abs(sum)) break;
  }
  return {pref * sum, std::abs(pref) * (std::abs(term) + kEps)};
}

}  // namespace detail

inline SpecfunResult kummer_m(double a, double b, double z) {
  if (detail::is_nonpositive_integer(b)) {
    throw std::domain_error("kummer_m: b is a nonpositive integer");
  }
  if (z < 0.0) {
    throw std::domain_error("kummer_m: requires z >= 0");
  }
  if (z <= detail::kKummerZSwitch || detail::is_nonpositive_integer(a)) {
    return detail::kummer_series(a, b, z);
  }
  return detail::kummer_asymptotic(a, b, z);
}

namespace detail {

// U(-m, b, z) for nonpositive integer a = -m is the terminating Kummer
// series up to a sign and Pochhammer factor: U(-m,b,z) = (-1)^m (b)_m M(-m,b,z).
inline SpecfunResult tricomi_polynomial(double a, double b, double z) {
  const int m = static_cast<int>(std::llround(-a));
  double poch = 1.0;
  for (int j = 0; j < m; ++j) poch *= (b + j);
  const SpecfunResult mres = kummer_series(a, b, z);
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  return {sign * poch * mres.value, poch * mres.abs_err_est};
}

// Logarithmic connection formula for integer second parameter b = n+1
// (A&S 13.1.6):
//   U(a,n+1,z) = (-1)^{n+1}/(n! Gamma(a-n)) [ M(a,n+1,z) ln z
//                  + sum_r (a)_r z^r / ((n+1)_r r!) (psi(a+r)-psi(1+r)-psi(n+1+r)) ]
//                + (n-1)!/Gamma(a) z^{-n} sum_{r=0}^{n-1} (a-n)_r z^r / ((1-n)_r r!).
// Cancellation grows like e^{z}, so this branch is restricted to small z.
inline SpecfunResult tricomi_log_series(double a, int n, double z) {
  const double b = n + 1;
  double csum;  // the n-term algebraic piece
  if (n == 1) {
    csum = rgamma(a) / z;
  } else {  // n == 2
    csum = rgamma(a) / (z * z) * (1.0 + (2.0 - a) * z);
  }
  const double front = ((n % 2 == 0) ? -1.0 : 1.0) * rgamma(a - n) /
                       ((n == 2) ? 2.0 : 1.0);
  if (front == 0.0) {
    return {csum, kEps * std::abs(csum)};
  }
  double term = 1.0;                                    // (a)_r z^r / ((b)_r r!)
  double phi = digamma(a) + euler_gamma - digamma(b);   // psi(a)-psi(1)-psi(b)
  double sum = phi;
  double peak = std::abs(phi);
  for (int r = 0; r < kSeriesMax; ++r) {
    term *= (a + r) / (b + r) * z / (r + 1);
    phi += 1.0 / (a + r) - 1.0 / (1.0 + r) - 1.0 / (b + r);
    const double inc = term * phi;
    sum += inc;
    peak = std::max(peak, std::abs(inc));
    if (std::abs(inc) <= kEps * (std::abs(sum) + 1.0) && r > 3) break;
  }
  const SpecfunResult mres = kummer_series(a, b, z);
  const double logpart = front * (mres.value * std::log(z) + sum);
  const double value = logpart + csum;
  const double err = kEps * (std::abs(front) * (peak + std::abs(mres.value * std::log(z))) +
                             std::abs(csum));
  return {value, err};
}

// A&S 13.5.2: U(a,b,z) ~ z^{-a} 2F0(a, a-b+1; -1/z), truncated at the
// smallest term.
inline SpecfunResult tricomi_asymptotic(double a, double b, double z) {
  const double pref = std::exp(-a * std::log(z));
  double term = 1.0;
  double sum = 1.0;
  for (int n = 0; n < 200; ++n) {
    const double next = -term * (a + n) * (a - b + 1.0 + n) / ((n + 1) * z);
    if (std::abs(next) >= std::abs(term)) break;
    term = next;
    sum += term;
    if (std::abs(term) <= kEps * std::abs(sum)) break;
  }
  return {pref * sum, pref * (std::abs(term) + kEps * std::abs(sum))};
}

// Laplace integral representation, valid for a > 0, z > 0 (A&S 13.2.5):
//   U(a,b,z) = 1/Gamma(a) int_0^inf e^{-zt} t^{a-1} (1+t)^{b-a-1} dt.
// Evaluated with exp-sinh quadrature: t = exp((pi/2) sinh u) maps the
// endpoint singularity t^{a-1} and the exponential tail to double-
// exponential decay in u. The integrand is positive, so there is no
// cancellation anywhere in this branch.
inline SpecfunResult tricomi_laplace_integral(double a, double b, double z) {
  const double c = b - a - 1.0;
  auto f = [&](double u) {
    const double s = 0.5 * M_PI * std::sinh(u);
    const double t = std::exp(s);
    const double lg = -z * t + (a - 1.0) * s + c * std::log1p(t);
    if (lg < -745.0) return 0.0;  // underflow to exact zero
    return std::exp(lg) * t * 0.5 * M_PI * std::cosh(u);
  };
  // Trapezoid sum at step h, expanding outward on each side until the tail
  // stops contributing. The left tail decays like exp(-a (pi/2) e^{|u|}),
  // so the reach needed grows as a shrinks.
  auto trapezoid = [&](double h) {
    double sum = f(0.0);
    for (int dir : {+1, -1}) {
      int quiet = 0;
      for (int k = 1; k < 4000; ++k) {
        const double v = f(dir * k * h);
        sum += v;
        if (std::abs(v) <= 1e-22 * std::abs(sum)) {
          if (++quiet >= 3) break;
        } else {
          quiet = 0;
        }
      }
    }
    return h * sum;
  };
  double h = 0.5;
  double integral = trapezoid(h);
  double err = std::abs(integral);
  for (int level = 0; level < 6; ++level) {
    h *= 0.5;
    const double refined = trapezoid(h);
    err = std::abs(refined - integral);
    integral = refined;
    if (err <= 8.0 * kEps * std::abs(integral) && level >= 2) break;
  }
  const double scale = rgamma(a);
  return {scale * integral, scale * (err + kEps * std::abs(integral))};
}

}  // namespace detail

// Tricomi U(a,b,z) for the integer second parameters the Whittaker pair at
// mu = 1/2 needs: b = 2 for the functions, b = 3 for their derivatives.
inline SpecfunResult tricomi_u(double a, double b, double z) {
  if (z <= 0.0) {
    throw std::domain_error("tricomi_u: requires z > 0");
  }
  if (b != 2.0 && b != 3.0) {
    throw std::domain_error("tricomi_u: only b = 2 and b = 3 are supported");
  }
  if (detail::is_nonpositive_integer(a)) {
    return detail::tricomi_polynomial(a, b, z);
  }
  // The log-series cancellation worsens with a as well as z; hand over to the
  // Laplace integral earlier for large a.
  const double log_max =
      std::min(detail::kTricomiLogMax,
               std::max(1.0, detail::kTricomiLogMax / std::max(a, 1.0)));
  if (z < log_max || a <= 0.0) {
    if (z < detail::kTricomiLogMax) {
      return detail::tricomi_log_series(a, static_cast<int>(b) - 1, z);
    }
    return detail::tricomi_asymptotic(a, b, z);  // a < 0 non-integer, large z
  }
  if (z >= detail::kTricomiAsymMin) {
    return detail::tricomi_asymptotic(a, b, z);
  }
  return detail::tricomi_laplace_integral(a, b, z);
}

// Whittaker pair at mu = 1/2:
//   M_{k,1/2}(rho) = e^{-rho/2} rho M(1-k, 2, rho)
//   W_{k,1/2}(rho) = e^{-rho/2} rho U(1-k, 2, rho)
// with derivatives assembled from dM/dz = (a/b) M(a+1,b+1,z) and
// dU/dz = -a U(a+1,b+1,z) (A&S 13.4.8, 13.4.21). In the rho variable the
// pair has Wronskian  W M' - M W' = 1/Gamma(1-k),  constant in rho.
inline WhittakerPair whittaker(double kappa, double rho) {
  if (rho <= 0.0) {
    throw std::domain_error("whittaker: requires rho > 0");
  }
  const double a = 1.0 - kappa;
  const double m2 = kummer_m(a, 2.0, rho).value;
  const double u2 = tricomi_u(a, 2.0, rho).value;
  const double m3 = kummer_m(a + 1.0, 3.0, rho).value;
  const double u3 = tricomi_u(a + 1.0, 3.0, rho).value;
  const double e = std::exp(-0.5 * rho);
  WhittakerPair out;
  out.m = e * rho * m2;
  out.w = e * rho * u2;
  out.m_prime = e * ((1.0 - 0.5 * rho) * m2 + rho * (0.5 * a) * m3);
  out.w_prime = e * ((1.0 - 0.5 * rho) * u2 - rho * a * u3);
  return out;
}

// Only the decaying solution, usable for any real kappa (the regular
// companion and the shared normalisation 1/Gamma(1-kappa) degenerate for
// kappa >= 1, the function itself does not).
struct WhittakerW {
  double w = 0.0;
  double w_prime = 0.0;
};

inline WhittakerW whittaker_w(double kappa, double rho) {
  if (rho <= 0.0) {
    throw std::domain_error("whittaker_w: requires rho > 0");
  }
  const double a = 1.0 - kappa;
  const double u2 = tricomi_u(a, 2.0, rho).value;
  const double u3 = tricomi_u(a + 1.0, 3.0, rho).value;
  const double e = std::exp(-0.5 * rho);
  return {e * rho * u2, e * ((1.0 - 0.5 * rho) * u2 - rho * a * u3)};
}

// Leading coefficients of W_{k,1/2}(rho) as rho -> 0:
//   W = c_const + c_rlogr rho ln rho + c_r rho + O(rho^2 ln rho).
struct WSmallRhoCoeffs {
  double c_const;
  double c_rlogr;
  double c_r;
};

inline WSmallRhoCoeffs whittaker_w_small_r_coeffs(double kappa) {
  if (kappa >= 1.0) {
    throw std::domain_error("whittaker_w_small_r_coeffs: requires kappa < 1");
  }
  const double rg = 1.0 / gamma(1.0 - kappa);
  const double c_r =
      ((2.0 - 4.0 * euler_gamma) * kappa - 2.0 * kappa * digamma(1.0 - kappa) - 1.0) *
      0.5 * rg;
  return {rg, -kappa * rg, c_r};
}

}  // namespace coulombpt::specfun
