#pragma once

// Variational oracle: minimize B_c(u) = 1/2 int |grad u|^2 + c u^2 over the
// constraint set int |u|^(p+2) = lambda by projected gradient descent with
// multiplicative renormalization.

#include <cstdint>

#include "nls2d/field.hpp"

namespace nls2d {

struct MinimizeOptions {
    long max_iterations = 200000;
    double b_decrease_tol = 1e-12;  // relative B decrease over a 50-step window
    double grad_tol = 1e-9;         // tangential gradient norm
};

struct MinimizerRun {
    int p = 1;
    double c = 0.0;
    double lambda = 0.0;  // constraint value int |u|^(p+2)
    Sector sector = Sector::S;
    int n = 0;
    std::uint64_t seed = 0;
    long iterations = 0;
    bool converged = false;
    SpectralField field;  // satisfies the constraint
    double b_value = 0.0;
    double constraint_residual = 0.0;  // relative
    double grad_norm = 0.0;
    // Euler-Lagrange multiplier of the limit and the C1=1 rescaling
    double c1_multiplier = 0.0;
    SpectralField rescaled_field;   // solves -Delta u + c u = u^(p+1)
    double rescaled_lambda = 0.0;   // int rescaled^(p+2)
};

// B_c(u); requires c > 0 (coercivity).
double b_functional(const SpectralField& u, double c);

// int |u|^(p+2) by quadrature on an alias-aware grid.
double constraint_value(const SpectralField& u, int p);

MinimizerRun minimize(int p, double c, double lambda, Sector sector, int n, std::uint64_t seed,
                      const MinimizeOptions& opt = {});

// Same descent started from a given field instead of a random one.
MinimizerRun minimize_from(int p, double c, double lambda, const SpectralField& start,
                           const MinimizeOptions& opt = {});

struct PhaseReport {
    double nodal_minimum = 0.0;
    bool flipped = false;  // a global sign flip was applied to make the mean positive
};

// Normalizes the sign so the mean is positive and reports the nodal minimum.
PhaseReport positivity_and_phase_check(SpectralField& u);

// L2 distance after aligning over the symmetries {identity, x<->y swap} x {+-1}.
double aligned_distance(const SpectralField& u, const SpectralField& target);

}  // namespace nls2d
