#pragma once

#include <random>

#include "app/config.hpp"
#include "korteweg/model.hpp"

namespace korteweg::app {

/// Initial data of a preset:
///   equilibrium         rho = rho_bar, u = 0
///   smooth_bump         rho = rho_bar (1 + A b(x)), u_j = A sin x_j, b(x) = exp(-sum_j (1 - cos x_j) / w^2)
///   near_vacuum         rho = rho_bar (1 - (1 - delta) b(x - pi)), u = 0, so min rho = rho_bar delta
///   random_bandlimited  random Fourier modes with wave indices <= modes (seeded)
///   manufactured        rho = rho_bar (1 + A cos x cos y), u_j = A sin(2 x_j)
/// Coordinates are scaled so that every preset has the domain period.
PrimitiveState make_initial(const Grid& grid, const PhysParams& p, const InitialSpec& spec);

/// Zero-mean real field with Gaussian coefficients (weight 1/(1+|k|^2)) on wave
/// indices 1..modes, scaled to max |f| = 1.
RealField random_field(const Grid& g, int modes, std::mt19937_64& rng);

}  // namespace korteweg::app
