#pragma once

// Kernel basis of L = diag(L1, L2), the matrix V_jl = (L^{-1} J Theta_j,
// J Theta_l), and the Hamiltonian Krein index bookkeeping
// k_r + k_c + k_- = n(L) - n(V) - z(V).

#include <Eigen/Dense>
#include <vector>

#include "nls2d/operators.hpp"

namespace nls2d {

enum class Verdict { Stable, Unstable, Inconclusive };

const char* verdict_name(Verdict v);

// Two-component field (first, second) in the stacked phase space.
struct PairField {
    SpectralField first, second;
};

struct KreinReport {
    int zL = 0;            // dim Ker(L) at tolerance
    int nL = 0;            // n(L) = n(L1) + n(L2)
    std::vector<PairField> theta;
    Eigen::MatrixXd V;     // zL x zL, symmetric
    double v_sym_defect = 0.0;
    int nV = 0, zV = 0;
    double tauV = 0.0;
    int rhs_index = 0;     // nL - nV - zV
    bool inconsistent = false;  // rhs_index < 0
    Verdict verdict = Verdict::Inconclusive;
    // |<v, phi-kernel>| orthogonality premise per Ker(L1) vector
    std::vector<double> kernel_orthogonality;
};

// Theta assembled as (v,0) for v in Ker(L1) and (0,w) for w in Ker(L2).
std::vector<PairField> kernel_basis_L(const OperatorMatrix& l1, const SpectrumCounts& e1,
                                      const OperatorMatrix& l2, const SpectrumCounts& e2);

// V entries via minimum-norm solves on the diagonal blocks; symmetrized, the
// deviation recorded. Throws SolvabilityError when some J Theta_j is not in
// the range of the corresponding block.
Eigen::MatrixXd build_V(const OperatorMatrix& l1, const SpectrumCounts& e1,
                        const OperatorMatrix& l2, const SpectrumCounts& e2,
                        const std::vector<PairField>& theta, double* sym_defect = nullptr);

// Index verdict: stable if nL - nV - zV = 0, unstable if odd, inconclusive
// otherwise; negative index flags a numerical inconsistency.
KreinReport krein_report(const OperatorMatrix& l1, const SpectrumCounts& e1,
                         const OperatorMatrix& l2, const SpectrumCounts& e2);

}  // namespace nls2d
