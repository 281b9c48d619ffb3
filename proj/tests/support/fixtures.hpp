#pragma once

// Reference values computed with mpmath at 50 digits (charfun, kernel,
// cubic coefficients) and numpy Nystrom runs (spectral) by
// tests/oracles/generate_fixtures.py. Regenerate with that script; do not edit
// by hand.

namespace fixtures {

inline constexpr double psi_1_L1 = 0.55753939422741363043;
inline constexpr double psi_prime_1_L1 = 1.1602555075575034354;
inline constexpr double kernel_at_1 = 0.24577916042895359525;           // alpha = k = 1
inline constexpr double kernel_integral_sym = 0.62514719137961770006;   // 2 int_0^1 K
inline constexpr double char_residual_minus1 = 16.624777470221045301;   // L = 2 sqrt 2
inline constexpr double char_residual_1_0001 = 0.018756543051090437399;
inline constexpr double g_inverse_half_L2 = 0.083461993411296958605;
inline constexpr double g_inverse_half_L02 = 0.11958591985342584289;
inline constexpr double ghat_inverse_half = 0.12565513657513096779;    // tan(1/8)
inline constexpr double g_inverse_3pi2_L1em5 = 2.4141723504736812117;
inline constexpr double cell_min_margin = 0.45643528396522754993;      // [0.9, 1.1] x {1}

struct Abc {
  double kappa, a, b, c;
};
inline constexpr Abc abc_kappa3 = {3.0, 3.660232304483009151, 6.7677446807248414727, 6.8774484994258838185};
inline constexpr Abc abc_near_branch = {2.41421356237309504880 + 1e-6, 3.5482589384670085266,
                                        6.4672959381175034829, 6.6752907995303123609};
inline constexpr Abc abc_1e6 = {1e6, 8.3998752017411757507e-5, 1.919969760424954081e-4,
                                1.9199692804345539431e-4};
inline constexpr double abc_sweep_min = 8.3998752017411757507e-5;

inline constexpr double lambda1_n2000 = 0.578350951060928;
inline constexpr double slope_4_12 = -4.92289267636;
inline constexpr double slope_20_60 = -4.17622035345;
inline constexpr double lambda_max_k10 = 0.0798010875553013;
inline constexpr double lambda_max_k100 = 0.0093835882360247;

}  // namespace fixtures
