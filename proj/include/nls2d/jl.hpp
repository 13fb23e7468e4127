#pragma once

// Direct route to spectral stability: the non-self-adjoint block operator
// JL = [[0, -L2], [L1, 0]], its full spectrum, and the classification of
// eigenvalues into k_r, k_c, k_- with Krein signatures.

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "nls2d/krein.hpp"
#include "nls2d/operators.hpp"

namespace nls2d {

struct JLSpectrumReport {
    Eigen::VectorXcd eigenvalues;
    double max_real_part = 0.0;
    double eps_re = 0.0, eps_im = 0.0;
    int k_r = 0;       // real positive eigenvalues (with multiplicity)
    int k_c = 0;       // complex eigenvalues with positive real part
    int k_minus = 0;   // eigenvalues in purely imaginary pairs of negative signature
    int zero_modes = 0;        // |lambda| <= eps_re, excluded from the counts
    int ambiguous_signatures = 0;  // imaginary pairs with |<Lw,w>| below threshold
    bool stable = false;       // max |Re lambda| <= eps_re
};

// 2*dim block matrix [[0, -L2], [L1, 0]] in the stacked orthonormal basis.
OperatorMatrix assemble_JL(const OperatorMatrix& l1, const OperatorMatrix& l2);

// Full spectrum of JL plus classification. The Krein signature of a purely
// imaginary pair is the sign of <L w, w> summed over the real and imaginary
// parts of the eigenvector. Positive overrides replace the default
// eps = 1e-7 * (1 + spectral radius).
JLSpectrumReport jl_spectrum_report(const OperatorMatrix& l1, const OperatorMatrix& l2,
                                    double eps_re_override = -1.0,
                                    double eps_im_override = -1.0);

// Consistency of the two routes for one wave.
struct ConsistencyRecord {
    int k_r = 0, k_c = 0, k_minus = 0;
    int nL = 0, nV = 0, zV = 0;
    int lhs = 0, rhs = 0;   // k_r+k_c+k_-, nL-nV-zV
    bool identity_holds = false;
    Verdict krein_verdict = Verdict::Inconclusive;
    Verdict direct_verdict = Verdict::Inconclusive;
    bool verdicts_agree = false;
    int ambiguous_signatures = 0;
    double eps_re = 0.0, eps_im = 0.0, tau = 0.0, tauV = 0.0;
};

ConsistencyRecord verdict_crosscheck(const JLSpectrumReport& jl, const KreinReport& krein,
                                     double tau_eig);

// Greatest mismatch between the spectrum and its image under the map, taken
// as a multiset (nearest-neighbour matching).
double spectrum_symmetry_defect(const Eigen::VectorXcd& eigs, bool conjugate);

}  // namespace nls2d
