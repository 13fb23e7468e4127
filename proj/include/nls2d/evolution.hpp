#pragma once

// Strang split-step integrator for i u_t + Delta u + |u|^p u = 0 on the
// bi-torus, with conserved-quantity monitoring. The nonlinear sub-flow is an
// exact pointwise phase rotation; the linear sub-flow is an exact Fourier
// multiplier restricted to |k|,|j| <= n (alias control).

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "nls2d/continuation.hpp"
#include "nls2d/field.hpp"

namespace nls2d {

// Complex Fourier coefficients on the full (non-symmetrized) basis
// e^{i(kx+jy)}, |k|,|j| <= n. No conjugate symmetry is assumed.
class ComplexTorusField {
  public:
    ComplexTorusField() = default;
    ComplexTorusField(int n, Eigen::MatrixXcd coef);

    static ComplexTorusField zero(int n);
    static ComplexTorusField from_real(const SpectralField& f);

    int trunc() const { return n_; }
    // coefficient of e^{i(kx+jy)}, -n <= k,j <= n
    std::complex<double> coef(int k, int j) const { return coef_(k + n_, j + n_); }
    std::complex<double>& coef(int k, int j) { return coef_(k + n_, j + n_); }
    const Eigen::MatrixXcd& coef_block() const { return coef_; }

    double l2_norm() const;

  private:
    int n_ = 0;
    Eigen::MatrixXcd coef_;  // (2n+1) x (2n+1)
};

struct ConservedQuantities {
    double e = 0.0;
    double f = 0.0;
    double quad_delta_e = 0.0;  // grid-refinement delta of the |u|^(p+2) quadrature
};

ConservedQuantities conserved_quantities(const ComplexTorusField& u, int p);

// min over theta of || u - e^{i theta} phi ||_{L2}
double phase_min_deviation(const ComplexTorusField& u, const ComplexTorusField& phi);

class StrangIntegrator {
  public:
    StrangIntegrator(int n, int p, double dt);

    double dt() const { return dt_; }
    ComplexTorusField step(const ComplexTorusField& u) const;

  private:
    int n_, p_;
    double dt_;
    TorusGrid grid_;
    Eigen::MatrixXcd modes_;       // grid x (2n+1) table of e^{i k x_m}
    Eigen::MatrixXcd propagator_;  // nodal one-step linear propagator
    Eigen::MatrixXcd to_nodal(const ComplexTorusField& u) const;
    ComplexTorusField to_coef(const Eigen::MatrixXcd& nodal) const;
};

struct EvolutionTrace {
    std::vector<double> t, e, f, deviation;
    double dt = 0.0;
    double eps = 0.0;
    std::uint64_t seed = 0;
    std::string method = "strang";
    bool blown_up = false;
    double t_blowup = 0.0;
};

// Integrates phi + eps * (random same-sector real + imaginary perturbation of
// unit L2 norm) to time T, sampling E, F and the phase-minimized deviation.
EvolutionTrace evolve_perturbed(const WaveBranchPoint& wave, double eps, double t_final,
                                double dt, std::uint64_t seed, int stride = 10);

}  // namespace nls2d
