#pragma once

// Newton solution of the stationary equation -Delta(phi) + c*phi - phi^(p+1) = 0
// with the generator-mode amplitude held fixed and c unknown (bordered system),
// plus amplitude-parameterized branch continuation.

#include <string>
#include <vector>

#include "nls2d/field.hpp"

namespace nls2d {

struct NewtonOptions {
    double tol = 1e-11;  // L2 norm of the stationary residual
    int max_iter = 30;
};

struct WaveBranchPoint {
    int p = 1;
    BranchKind branch = BranchKind::SS;
    double a = 0.0;
    double c = 0.0;
    SpectralField field;
    double residual = 0.0;
    double nodal_minimum = 0.0;
    int iterations = 0;
};

struct Branch {
    int p = 1;
    BranchKind branch = BranchKind::SS;
    int n = 0;
    double newton_tol = 1e-11;
    std::vector<WaveBranchPoint> points;
    bool aborted = false;
    std::string abort_reason;
};

SpectralField stationary_residual(const SpectralField& phi, double c, int p);

// Amplitude = projection of the field onto the unit generator mode.
double generator_amplitude(const SpectralField& phi, BranchKind branch);

WaveBranchPoint newton_solve_fixed_amplitude(const WaveBranchPoint& guess,
                                             const NewtonOptions& opt = {});

// Marches a from a_start to a_end in equal steps, warm-starting each solve;
// the first guess comes from the Stokes expansion. Aborts cleanly at the
// first non-convergence, returning the partial branch.
Branch continue_branch(int p, BranchKind branch, double a_start, double a_end, int steps, int n,
                       const NewtonOptions& opt = {});

// Finite-difference derivative of the field with respect to c along the
// branch (central in the interior, one-sided at the ends).
SpectralField branch_dphi_dc(const Branch& br, int index);

// d/dc of the squared L2 norm of phi along the branch, same stencils.
double branch_dmass_dc(const Branch& br, int index);

}  // namespace nls2d
