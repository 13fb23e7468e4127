#pragma once

// Dense Galerkin matrices of the linearized operators in the orthonormalized
// sector basis, full symmetric eigendecompositions with explicit kernel
// tolerances, and minimum-norm solves restricted to the range.

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "nls2d/field.hpp"

namespace nls2d {

struct BasisMode {
    bool sine = false;  // false: cos(kx)cos(jy), true: sin(kx)sin(jy)
    int k = 0, j = 0;
    double weight = 0.0;  // L2 norm squared of the plain-product mode
};

std::vector<BasisMode> sector_modes(Sector s, int n);

// Plain coefficients <-> orthonormal coordinates (scaled by sqrt(weight)).
Eigen::VectorXd to_ortho(const SpectralField& f);
SpectralField from_ortho(Sector s, int n, const Eigen::VectorXd& y);

enum class OperatorTag { L1, L2, L, JL };

struct OperatorMatrix {
    Eigen::MatrixXd mat;  // orthonormal basis; dim x dim
    Sector sector = Sector::S;
    int n = 0;
    bool symmetric = false;
    double sym_defect = 0.0;  // max |A - A^T| / ||A|| before symmetrization
    OperatorTag built_from = OperatorTag::L1;
    int dim() const { return static_cast<int>(mat.rows()); }
};

struct SpectrumCounts {
    int n_neg = 0;  // eigenvalues < -tau
    int z = 0;      // |eigenvalue| <= tau
    double tau = 0.0;
    Eigen::VectorXd eigenvalues;  // ascending
    Eigen::MatrixXd vectors;      // orthonormal columns matching eigenvalues
    Eigen::MatrixXd kernel_vectors() const { return vectors.middleCols(first_kernel, z); }
    int first_kernel = 0;
};

// Galerkin matrix of multiplication by the nodal samples g on the given grid.
Eigen::MatrixXd multiplication_matrix(Sector s, int n, const Eigen::MatrixXd& g_nodal,
                                      const TorusGrid& grid, double* sym_defect = nullptr);

// L1 = -Delta + c - (p+1) phi^p,  L2 = -Delta + c - phi^p.
Eigen::MatrixXd l1_matrix(const SpectralField& phi, double c, int p, double* defect = nullptr);
Eigen::MatrixXd l2_matrix(const SpectralField& phi, double c, int p, double* defect = nullptr);

OperatorMatrix assemble_L1(const SpectralField& phi, double c, int p);
OperatorMatrix assemble_L2(const SpectralField& phi, double c, int p);

// Full symmetric eigendecomposition; kernel counted with
// tau = max(1e-8, 1e-10 * spectral radius), or the override when positive.
SpectrumCounts eig_sym(const OperatorMatrix& a, double tau_override = -1.0);

SpectralField apply(const OperatorMatrix& a, const SpectralField& f);

// Minimum-norm solution of A x = rhs with kernel components projected out of
// both sides. Throws SolvabilityError if rhs has a kernel component larger
// than 1e-8 relative.
SpectralField solve_in_range(const OperatorMatrix& a, const SpectrumCounts& eig,
                             const SpectralField& rhs);

// <A^{-1} f, f> through solve_in_range.
double quadratic_form_inverse(const OperatorMatrix& a, const SpectrumCounts& eig,
                              const SpectralField& f);

}  // namespace nls2d
