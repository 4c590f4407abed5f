#include <catch_amalgamated.hpp>

#include <cmath>

#include "coulombpt/specfun.hpp"

using namespace coulombpt;
using Catch::Approx;

// Reference values marked "mpmath" were generated once with mpmath at 50
// digits (tests/tools/gen_reference_values.py) and frozen here.

TEST_CASE("gamma at reference points") {
  CHECK(specfun::gamma(0.5) == Approx(1.7724538509055160273).epsilon(1e-14));
  CHECK(specfun::gamma(1.0) == Approx(1.0).epsilon(1e-15));
  CHECK(specfun::gamma(5.0) == Approx(24.0).epsilon(1e-14));
  CHECK(specfun::gamma(-2.5) == Approx(-0.94530872048294188123).epsilon(1e-13));  // mpmath
  CHECK(specfun::gamma(170.2) == Approx(1.1918411166367391591e305).epsilon(1e-13));  // mpmath
  CHECK_THROWS_AS(specfun::gamma(0.0), std::domain_error);
  CHECK_THROWS_AS(specfun::gamma(-3.0), std::domain_error);
}

TEST_CASE("rgamma vanishes at poles and tracks 1/gamma elsewhere") {
  CHECK(specfun::rgamma(0.0) == 0.0);
  CHECK(specfun::rgamma(-7.0) == 0.0);
  CHECK(specfun::rgamma(3.0) == Approx(0.5).epsilon(1e-15));
  CHECK(specfun::rgamma(-2.5) == Approx(1.0 / -0.94530872048294188123).epsilon(1e-13));
  // 1/Gamma(200.5) ~ 1.8e-374 is below the double range; clean underflow to 0
  CHECK(specfun::rgamma(200.5) == Approx(0.0).margin(1e-300));
}

TEST_CASE("digamma reference values") {
  // psi(1) = -euler_gamma; psi(2) = 1 - euler_gamma; psi(1/2) = -euler_gamma - 2 ln 2
  CHECK(specfun::digamma(1.0) == Approx(-0.57721566490153286061).margin(1e-13));
  CHECK(specfun::digamma(2.0) == Approx(0.42278433509846713939).margin(1e-13));
  CHECK(specfun::digamma(0.5) == Approx(-1.9635100260214234794).margin(1e-13));
  // mpmath spot checks, both sides of the shift threshold and reflection
  CHECK(specfun::digamma(6.0) == Approx(1.7061176684318004727).margin(1e-13));
  CHECK(specfun::digamma(5.999) == Approx(1.7059363290792256641).margin(1e-13));
  CHECK(specfun::digamma(-0.5) == Approx(0.036489973978576520559).margin(1e-13));
  CHECK(specfun::digamma(-3.7) == Approx(-0.84507685887041671807).margin(1e-13));
  CHECK(specfun::digamma(-42.25) == Approx(6.896984645827928743).margin(1e-12));
  CHECK(specfun::digamma(1e6) == Approx(13.815510057964190771).margin(1e-12));
  CHECK_THROWS_AS(specfun::digamma(0.0), std::domain_error);
  CHECK_THROWS_AS(specfun::digamma(-2.0), std::domain_error);
}

TEST_CASE("digamma recurrence psi(x+1) = psi(x) + 1/x") {
  for (double x : {0.1, 0.9, 3.7, 42.0}) {
    const double lhs = specfun::digamma(x + 1.0);
    const double rhs = specfun::digamma(x) + 1.0 / x;
    CHECK(lhs == Approx(rhs).margin(1e-12));
  }
}

TEST_CASE("kummer_m basic identities and oracle values") {
  CHECK(specfun::kummer_m(0.3, 2.0, 0.0).value == Approx(1.0).epsilon(1e-15));
  // M(a,a,z) = e^z
  CHECK(specfun::kummer_m(1.0, 1.0, 2.0).value ==
        Approx(7.3890560989306502272).epsilon(1e-14));
  CHECK(specfun::kummer_m(0.5, 2.0, 1.7).value ==
        Approx(1.6948192557360045015).epsilon(1e-14));  // mpmath
  // asymptotic branch; terminating (1-a)_k makes it exact for integer a > 1
  CHECK(specfun::kummer_m(2.3, 3.0, 55.0).value ==
        Approx(7.8486968307518089603e22).epsilon(1e-12));  // mpmath
  CHECK(specfun::kummer_m(3.0, 2.0, 50.0).value ==
        Approx(std::exp(50.0) * (1.0 + 25.0)).epsilon(1e-13));  // M(3,2,z) = e^z (1+z/2)
  CHECK_THROWS_AS(specfun::kummer_m(0.5, -1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(specfun::kummer_m(0.5, 2.0, -1.0), std::domain_error);
}

TEST_CASE("tricomi_u across all evaluation branches") {
  // U(1,2,z) = 1/z exactly
  CHECK(specfun::tricomi_u(1.0, 2.0, 3.0).value == Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(specfun::tricomi_u(1.0, 2.0, 1.0).value == Approx(1.0).epsilon(1e-14));
  // mpmath references: log-series branch
  CHECK(specfun::tricomi_u(0.5, 2.0, 0.3).value ==
        Approx(2.7883195950732136767).epsilon(1e-13));
  CHECK(specfun::tricomi_u(1.7, 2.0, 0.05).value ==
        Approx(19.863665441310625908).epsilon(1e-13));
  CHECK(specfun::tricomi_u(1.7, 3.0, 0.05).value ==
        Approx(446.44729867519512882).epsilon(1e-13));
  CHECK(specfun::tricomi_u(0.5, 3.0, 2.5).value ==
        Approx(0.8473304324481795732).epsilon(1e-12));
  // negative non-integer a (small z only)
  CHECK(specfun::tricomi_u(-0.58, 2.0, 0.4).value ==
        Approx(-1.0803892437017027779).epsilon(1e-12));
  // polynomial branch: U(-2,2,z) = (2)_2 M(-2,2,z) = 6 - 6z + z^2
  CHECK(specfun::tricomi_u(-2.0, 2.0, 1.3).value == Approx(-0.11).epsilon(1e-13));
  CHECK(specfun::tricomi_u(0.0, 2.0, 5.0).value == Approx(1.0).epsilon(1e-14));
  // Laplace integral window: mpmath references
  CHECK(specfun::tricomi_u(0.5, 2.0, 10.0).value ==
        Approx(0.32386778998936886867).epsilon(1e-12));
  CHECK(specfun::tricomi_u(3.0, 2.0, 31.6).value ==
        Approx(2.6620785015369285978e-5).epsilon(1e-12));
  CHECK(specfun::tricomi_u(1.5, 2.0, 20.0).value ==
        Approx(0.010795562405991293152).epsilon(1e-12));
  CHECK(specfun::tricomi_u(4.0, 3.0, 31.6).value ==
        Approx(7.972511414534979315e-7).epsilon(1e-12));
  CHECK(specfun::tricomi_u(0.25, 2.0, 12.0).value ==
        Approx(0.54557820324194033475).epsilon(1e-12));
  CHECK(specfun::tricomi_u(2.5, 3.0, 88.0).value ==
        Approx(1.3575605722510649946e-5).epsilon(1e-12));
  CHECK(specfun::tricomi_u(21.0, 2.0, 15.0).value ==
        Approx(1.1134110804380968396e-31).epsilon(1e-11));
  // asymptotic branch and continuity across the handover at z = 100
  CHECK(specfun::tricomi_u(0.75, 2.0, 99.5).value ==
        Approx(0.031801310012808328326).epsilon(1e-12));
  CHECK(specfun::tricomi_u(0.75, 2.0, 100.5).value ==
        Approx(0.03156310723998373225).epsilon(1e-12));
  CHECK_THROWS_AS(specfun::tricomi_u(0.5, 2.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(specfun::tricomi_u(0.5, 4.0, 1.0), std::domain_error);
}

TEST_CASE("whittaker closed forms at kappa = 0") {
  // W_{0,1/2}(z) = e^{-z/2},  M_{0,1/2}(z) = 2 sinh(z/2)
  for (double z = 0.1; z <= 20.0; z *= 1.9) {
    const auto p = specfun::whittaker(0.0, z);
    CHECK(p.w == Approx(std::exp(-0.5 * z)).epsilon(1e-12));
    CHECK(p.m == Approx(2.0 * std::sinh(0.5 * z)).epsilon(1e-12));
    CHECK(p.w_prime == Approx(-0.5 * std::exp(-0.5 * z)).epsilon(1e-12));
    CHECK(p.m_prime == Approx(std::cosh(0.5 * z)).epsilon(1e-12));
  }
  const auto p2 = specfun::whittaker(0.0, 2.0);
  CHECK(p2.w == Approx(0.36787944117144233).epsilon(1e-13));
  CHECK(p2.m == Approx(2.3504023872876028).epsilon(1e-13));
}

TEST_CASE("whittaker against frozen mpmath grid") {
  // columns: kappa, rho, M, W, M', W'
  static const double grid[][6] = {
      {-2.0, 0.01, 0.010100375834636980687, 0.46169669567547306676, 1.0201128339853135644, -2.8728906535665778196},
      {-2.0, 0.8, 1.670843661358222756, 0.084329716929703429055, 3.5207062864333979501, -0.12155525987832103375},
      {-2.0, 5.0, 213.19364431231078517, 0.0014456740199499737744, 179.69178592037623321, -0.0011267890010107019665},
      {-2.0, 45.0, 6250377081647.1298246, 7.3706726314745401527e-14, 3397072555722.6362806, -3.9935655017831298853e-14},
      {-0.5, 0.01, 0.010025062578222737698, 1.097748893462007912, 1.0050187812988770006, -2.5058109932105879242},
      {-0.5, 0.8, 0.99554283037032946984, 0.48286742796116140556, 1.5381731974145059759, -0.38737201427860118857},
      {-0.5, 5.0, 29.032776946694107386, 0.032562944139514899237, 17.806227617397176729, -0.018894368005578728566},
      {-0.5, 45.0, 44488409008.682800744, 2.4817438939132298261e-11, 22744139669.130131094, -1.2675838093551897881e-11},
      {0.25, 0.01, 0.0099875468392557429392, 0.82326143088250839993, 0.99751404820859713466, 0.51723447594215400937},
      {0.25, 0.8, 0.74273160373186291235, 0.73182973867988059924, 0.8838963340431187758, -0.22779065154262917204},
      {0.25, 5.0, 7.1848783670347393368, 0.12687742190222509446, 3.1560698212427748809, -0.057845786052894745192},
      {0.25, 45.0, 1875614228.6571877757, 4.4000508228841237698e-10, 927080058.38361857219, -2.1759751844782354217e-10},
      {0.5, 0.01, 0.0099750624219725749376, 0.5794213011304198748, 0.99501871879877934431, 1.2376320694055860027},
      {0.5, 0.8, 0.66910002119661651579, 0.74447829658792621586, 0.70585177163103298313, -0.057836284164372162256},
      {0.5, 5.0, 3.8656144938071229709, 0.19216067244643834054, 1.3570318971465615503, -0.078492416185551081178},
      {0.5, 45.0, 505755822.30296423901, 1.1412138098098782647e-9, 247057253.63724860253, -5.5806462612338010882e-10},
      {0.75, 0.01, 0.009962588408363699633, 0.29231828066827676859, 0.99252650919485553423, 1.4371746847734220533},
      {0.75, 0.8, 0.60035608341745743375, 0.68540182639564285893, 0.54568184764696948245, 0.16356238387559098909},
      {0.75, 5.0, 1.7174475071661157766, 0.28448418228678932132, 0.35661909383303542441, -0.10152460020217526297},
      {0.75, 45.0, 96724077.911338217604, 2.9517747375781974738e-9, 46681790.634441045778, -1.4269614713418998665e-9},
  };
  for (const auto& row : grid) {
    const auto p = specfun::whittaker(row[0], row[1]);
    INFO("kappa=" << row[0] << " rho=" << row[1]);
    CHECK(p.m == Approx(row[2]).epsilon(2e-12));
    CHECK(p.w == Approx(row[3]).epsilon(2e-11));
    CHECK(p.m_prime == Approx(row[4]).epsilon(2e-12));
    CHECK(p.w_prime == Approx(row[5]).epsilon(2e-11));
  }
}

TEST_CASE("whittaker M leading behaviour as rho -> 0") {
  // M_{k,1/2}(rho)/rho -> 1
  for (double k : {0.5, -0.5, 0.25}) {
    const auto p = specfun::whittaker(k, 1e-8);
    CHECK(p.m / 1e-8 == Approx(1.0).epsilon(1e-7));
  }
}

TEST_CASE("wronskian constancy over rho and kappa") {
  const double kappas[] = {-2.0, -0.5, 0.25, 0.75};
  for (double k : kappas) {
    const double target = 1.0 / specfun::gamma(1.0 - k);
    for (int i = 0; i < 20; ++i) {
      const double rho = 1e-2 * std::pow(50.0 / 1e-2, i / 19.0);
      const auto p = specfun::whittaker(k, rho);
      const double wr = p.w * p.m_prime - p.m * p.w_prime;
      INFO("kappa=" << k << " rho=" << rho);
      CHECK(std::abs(wr - target) <= 1e-9 * (1.0 + std::abs(target)));
    }
  }
}

TEST_CASE("whittaker functions satisfy u'' = (1/4 - kappa/rho) u") {
  // The ODE gives u'' directly; compare against a central difference of the
  // returned first derivative.
  for (double k : {-0.5, 0.25, 0.7}) {
    for (double rho : {0.5, 5.0}) {
      const double h = 1e-4 * rho;
      const auto pm = specfun::whittaker(k, rho - h);
      const auto pp = specfun::whittaker(k, rho + h);
      const auto p0 = specfun::whittaker(k, rho);
      const double coef = 0.25 - k / rho;
      const double m_dd = (pp.m_prime - pm.m_prime) / (2.0 * h);
      const double w_dd = (pp.w_prime - pm.w_prime) / (2.0 * h);
      INFO("kappa=" << k << " rho=" << rho);
      CHECK(m_dd == Approx(coef * p0.m).epsilon(1e-6));
      CHECK(w_dd == Approx(coef * p0.w).epsilon(1e-6));
    }
  }
}

TEST_CASE("whittaker asymptotics at large rho") {
  // W(rho) e^{rho/2} rho^{-kappa} -> 1 and M(rho) Gamma(1-kappa) e^{-rho/2} rho^{kappa} -> 1
  const double rho = 200.0;
  for (double k : {-0.5, 0.25, 0.5}) {
    const auto p = specfun::whittaker(k, rho);
    CHECK(p.w * std::exp(0.5 * rho) * std::pow(rho, -k) == Approx(1.0).margin(5e-2));
    CHECK(p.m * specfun::gamma(1.0 - k) * std::exp(-0.5 * rho) * std::pow(rho, k) ==
          Approx(1.0).margin(5e-2));
  }
}

TEST_CASE("small-rho expansion coefficients of W") {
  const auto c0 = specfun::whittaker_w_small_r_coeffs(0.0);
  CHECK(c0.c_const == Approx(1.0).epsilon(1e-14));
  CHECK(c0.c_rlogr == Approx(0.0).margin(1e-15));
  CHECK(c0.c_r == Approx(-0.5).epsilon(1e-14));

  const auto c5 = specfun::whittaker_w_small_r_coeffs(0.5);
  CHECK(c5.c_const == Approx(0.5641895835477563).epsilon(1e-13));
  CHECK(c5.c_rlogr == Approx(-0.28209479177387814347).epsilon(1e-13));  // mpmath
  CHECK(c5.c_r == Approx(0.22823688633839844152).epsilon(1e-13));       // mpmath

  for (double k : {-1.5, -0.3, 0.25, 0.9}) {
    const auto c = specfun::whittaker_w_small_r_coeffs(k);
    CHECK(c.c_rlogr / c.c_const == Approx(-k).epsilon(1e-13));
  }
}

TEST_CASE("small-rho coefficients match the function") {
  // W(rho) - (c_const + c_rlogr rho ln rho + c_r rho) = O(rho^2 ln rho)
  for (double k : {-0.5, 0.25, 0.5}) {
    const auto c = specfun::whittaker_w_small_r_coeffs(k);
    for (double rho : {1e-4, 1e-5}) {
      const auto p = specfun::whittaker(k, rho);
      const double model = c.c_const + c.c_rlogr * rho * std::log(rho) + c.c_r * rho;
      CHECK(std::abs(p.w - model) <= 20.0 * rho * rho * std::abs(std::log(rho)));
    }
  }
}

TEST_CASE("whittaker_w for kappa >= 1 (decaying solution only)") {
  // theta = 2, rho: W_{2,1/2}(z) = e^{-z/2} z (z - 2), from U(-1,2,z) = z - 2
  for (double z : {0.5, 3.0, 9.0}) {
    const auto w = specfun::whittaker_w(2.0, z);
    CHECK(w.w == Approx(std::exp(-0.5 * z) * z * (z - 2.0)).epsilon(1e-12).margin(1e-14));
  }
  // non-integer kappa > 1 keeps finite values
  const auto w = specfun::whittaker_w(1.5811, 0.4);
  CHECK(std::isfinite(w.w));
  CHECK(std::isfinite(w.w_prime));
}

TEST_CASE("error estimates are finite and honest at a spot check") {
  const auto r1 = specfun::kummer_m(0.5, 2.0, 1.7);
  CHECK(std::isfinite(r1.abs_err_est));
  CHECK(std::abs(r1.value - 1.6948192557360045015) <= std::max(r1.abs_err_est, 1e-13));
  const auto r2 = specfun::tricomi_u(0.5, 2.0, 10.0);
  CHECK(std::isfinite(r2.abs_err_est));
  CHECK(std::abs(r2.value - 0.32386778998936886867) <= std::max(r2.abs_err_est, 1e-12));
}
