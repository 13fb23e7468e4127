#include "nls2d/jl.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nls2d {

OperatorMatrix assemble_JL(const OperatorMatrix& l1, const OperatorMatrix& l2) {
    if (l1.dim() != l2.dim()) throw ValidationError("assemble_JL: block dimension mismatch");
    const int d = l1.dim();
    OperatorMatrix jl;
    jl.sector = l1.sector;
    jl.n = l1.n;
    jl.built_from = OperatorTag::JL;
    jl.symmetric = false;
    jl.mat = Eigen::MatrixXd::Zero(2 * d, 2 * d);
    jl.mat.topRightCorner(d, d) = -l2.mat;
    jl.mat.bottomLeftCorner(d, d) = l1.mat;
    return jl;
}

JLSpectrumReport jl_spectrum_report(const OperatorMatrix& l1, const OperatorMatrix& l2,
                                    double eps_re_override, double eps_im_override) {
    const int d = l1.dim();
    const OperatorMatrix jl = assemble_JL(l1, l2);
    Eigen::EigenSolver<Eigen::MatrixXd> es(jl.mat);
    if (es.info() != Eigen::Success) throw NumericalError("jl_spectrum: eigensolver failed");

    JLSpectrumReport rep;
    rep.eigenvalues = es.eigenvalues();
    const double radius = rep.eigenvalues.cwiseAbs().maxCoeff();
    rep.eps_re = eps_re_override > 0.0 ? eps_re_override : 1e-7 * (1.0 + radius);
    rep.eps_im = eps_im_override > 0.0 ? eps_im_override : rep.eps_re;
    rep.max_real_part = rep.eigenvalues.real().cwiseAbs().maxCoeff();
    rep.stable = rep.max_real_part <= rep.eps_re;

    // energy quadratic form for signatures
    Eigen::MatrixXd lblock = Eigen::MatrixXd::Zero(2 * d, 2 * d);
    lblock.topLeftCorner(d, d) = l1.mat;
    lblock.bottomRightCorner(d, d) = l2.mat;

    const auto& vecs = es.eigenvectors();
    for (Eigen::Index i = 0; i < rep.eigenvalues.size(); ++i) {
        const std::complex<double> lam = rep.eigenvalues(i);
        if (std::abs(lam) <= rep.eps_re) {
            ++rep.zero_modes;  // kernel / generalized kernel, not counted
            continue;
        }
        if (lam.real() > rep.eps_re) {
            if (std::abs(lam.imag()) <= rep.eps_im)
                ++rep.k_r;
            else
                ++rep.k_c;
            continue;
        }
        if (lam.real() >= -rep.eps_re && lam.imag() > rep.eps_im) {
            // purely imaginary, upper half plane: signature decides k_-;
            // the conjugate shares the signature, so count the pair here.
            const Eigen::VectorXcd w = vecs.col(i);
            const Eigen::VectorXd u = w.real();
            const Eigen::VectorXd v = w.imag();
            const double q = u.dot(lblock * u) + v.dot(lblock * v);
            const double wnorm = u.squaredNorm() + v.squaredNorm();
            if (std::abs(q) < 1e-10 * wnorm)
                ++rep.ambiguous_signatures;
            else if (q < 0.0)
                rep.k_minus += 2;
        }
    }
    return rep;
}

ConsistencyRecord verdict_crosscheck(const JLSpectrumReport& jl, const KreinReport& krein,
                                     double tau_eig) {
    ConsistencyRecord cr;
    cr.k_r = jl.k_r;
    cr.k_c = jl.k_c;
    cr.k_minus = jl.k_minus;
    cr.nL = krein.nL;
    cr.nV = krein.nV;
    cr.zV = krein.zV;
    cr.lhs = jl.k_r + jl.k_c + jl.k_minus;
    cr.rhs = krein.rhs_index;
    cr.identity_holds = (cr.lhs == cr.rhs);
    cr.krein_verdict = krein.verdict;
    cr.direct_verdict = jl.stable ? Verdict::Stable : Verdict::Unstable;
    cr.verdicts_agree =
        (krein.verdict != Verdict::Inconclusive) && (cr.krein_verdict == cr.direct_verdict);
    cr.ambiguous_signatures = jl.ambiguous_signatures;
    cr.eps_re = jl.eps_re;
    cr.eps_im = jl.eps_im;
    cr.tau = tau_eig;
    cr.tauV = krein.tauV;
    return cr;
}

double spectrum_symmetry_defect(const Eigen::VectorXcd& eigs, bool conjugate) {
    // nearest-neighbour multiset match against the mapped spectrum
    std::vector<std::complex<double>> pool(eigs.data(), eigs.data() + eigs.size());
    double worst = 0.0;
    for (Eigen::Index i = 0; i < eigs.size(); ++i) {
        const std::complex<double> target = conjugate ? std::conj(eigs(i)) : -eigs(i);
        double best = std::numeric_limits<double>::infinity();
        std::size_t besti = 0;
        for (std::size_t k = 0; k < pool.size(); ++k) {
            const double dist = std::abs(pool[k] - target);
            if (dist < best) {
                best = dist;
                besti = k;
            }
        }
        worst = std::max(worst, best);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(besti));
    }
    return worst;
}

}  // namespace nls2d
