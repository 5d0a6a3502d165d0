#pragma once

// Frozen regression values at alpha = 0.5.
namespace focklab::baselines {

// k_z(z)(1+|z|^2)e^{-2phi(z)}, t in [0, 20], 401 points
inline constexpr double kKernelBandLo = 0.0677576639443;
inline constexpr double kKernelBandHi = 0.159860147536;
inline constexpr double kKernelBandSpread = 2.35929248781;

// constant_shift d = 0.3, support 32, 20 draws, seed 0x5eed
inline constexpr double kInterpF2Constant = 1.144724;
// reference plus the point 1, support 33, 20 draws, seed 0x5eed
inline constexpr double kInterpFinftyConstant = 51.031280;

// 50 random polynomials of degree 30, seed 0x5eed
inline constexpr double kHalflineSupHi = 2.289735;

}  // namespace focklab::baselines
