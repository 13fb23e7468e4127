#pragma once

// Small-amplitude expansions of standing waves about the constant state
// (2/p)^(1/p) at frequency 2/p. The frequency correction c2 is obtained from
// the Fredholm solvability projection of the third-order equation onto the
// generator mode, never from a closed form.

#include <optional>

#include "nls2d/field.hpp"

namespace nls2d {

struct StokesWave {
    int p = 1;
    BranchKind branch = BranchKind::SS;
    double a = 0.0;
    int order = 3;  // highest included power of a (2 or 3)
    SpectralField field;
    double c = 0.0;
    bool positivity_warning = false;  // nodal minimum of the field <= 0
};

// Expansion pieces: field = phi0 + a*phi1 + a^2*phi2 (+ a^3*phi3),
// c = 2/p + c2*a^2.
struct StokesExpansion {
    double phi0 = 0.0;
    double c2 = 0.0;
    SpectralField phi1;
    SpectralField phi2;
    std::optional<SpectralField> phi3;
};

// Frequency correction by solvability projection.
double solvability_c2(int p, BranchKind branch);

StokesExpansion stokes_expansion(int p, BranchKind branch, int order, int n);

StokesWave stokes_wave(int p, BranchKind branch, double a, int order, int n);

// Log-log slope of the stationary residual over an amplitude ladder
// a in [1e-3, 1e-1]; points below the roundoff floor are excluded.
double stokes_residual_slope(int p, BranchKind branch, int order, int n);

}  // namespace nls2d
