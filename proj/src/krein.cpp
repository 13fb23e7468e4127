#include "nls2d/krein.hpp"

#include <cmath>

namespace nls2d {

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Stable: return "stable";
        case Verdict::Unstable: return "unstable";
        default: return "inconclusive";
    }
}

std::vector<PairField> kernel_basis_L(const OperatorMatrix& l1, const SpectrumCounts& e1,
                                      const OperatorMatrix& l2, const SpectrumCounts& e2) {
    std::vector<PairField> theta;
    const Sector s = l1.sector;
    const int n = l1.n;
    const SpectralField zero = SpectralField::zero(s, n);
    const Eigen::MatrixXd k1 = e1.kernel_vectors();
    for (Eigen::Index i = 0; i < k1.cols(); ++i)
        theta.push_back({from_ortho(s, n, k1.col(i)), zero});
    const Eigen::MatrixXd k2 = e2.kernel_vectors();
    for (Eigen::Index i = 0; i < k2.cols(); ++i)
        theta.push_back({zero, from_ortho(l2.sector, l2.n, k2.col(i))});
    return theta;
}

namespace {

// J(w1, w2) = (-w2, w1)
PairField apply_J(const PairField& w) { return {-w.second, w.first}; }

}  // namespace

Eigen::MatrixXd build_V(const OperatorMatrix& l1, const SpectrumCounts& e1,
                        const OperatorMatrix& l2, const SpectrumCounts& e2,
                        const std::vector<PairField>& theta, double* sym_defect) {
    const int z = static_cast<int>(theta.size());
    Eigen::MatrixXd v(z, z);
    std::vector<PairField> jtheta, linv;
    jtheta.reserve(z);
    linv.reserve(z);
    for (const auto& th : theta) jtheta.push_back(apply_J(th));
    for (const auto& jt : jtheta)
        linv.push_back({solve_in_range(l1, e1, jt.first), solve_in_range(l2, e2, jt.second)});
    for (int a = 0; a < z; ++a)
        for (int b = 0; b < z; ++b)
            v(a, b) = inner_product(linv[a].first, jtheta[b].first) +
                      inner_product(linv[a].second, jtheta[b].second);
    if (z > 0) {
        const double scale = std::max(v.cwiseAbs().maxCoeff(), 1e-300);
        const double defect = (v - v.transpose()).cwiseAbs().maxCoeff() / scale;
        if (sym_defect) *sym_defect = defect;
        v = 0.5 * (v + v.transpose()).eval();
    } else if (sym_defect) {
        *sym_defect = 0.0;
    }
    return v;
}

KreinReport krein_report(const OperatorMatrix& l1, const SpectrumCounts& e1,
                         const OperatorMatrix& l2, const SpectrumCounts& e2) {
    KreinReport kr;
    kr.nL = e1.n_neg + e2.n_neg;
    kr.theta = kernel_basis_L(l1, e1, l2, e2);
    kr.zL = static_cast<int>(kr.theta.size());

    // orthogonality premise: Ker(L1) vectors against Ker(L2) vectors (phi)
    const Eigen::MatrixXd k1 = e1.kernel_vectors();
    const Eigen::MatrixXd k2 = e2.kernel_vectors();
    for (Eigen::Index i = 0; i < k1.cols(); ++i)
        for (Eigen::Index j = 0; j < k2.cols(); ++j)
            kr.kernel_orthogonality.push_back(std::abs(k1.col(i).dot(k2.col(j))));

    kr.V = build_V(l1, e1, l2, e2, kr.theta, &kr.v_sym_defect);
    if (kr.zL > 0) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(kr.V);
        const Eigen::VectorXd ev = es.eigenvalues();
        const double radius = ev.cwiseAbs().maxCoeff();
        kr.tauV = std::max(1e-8, 1e-10 * radius);
        for (Eigen::Index i = 0; i < ev.size(); ++i) {
            if (ev(i) < -kr.tauV) ++kr.nV;
            if (std::abs(ev(i)) <= kr.tauV) ++kr.zV;
        }
    } else {
        kr.tauV = 1e-8;  // empty matrix: nV = zV = 0, verdict from parity of nL
    }

    kr.rhs_index = kr.nL - kr.nV - kr.zV;
    if (kr.rhs_index < 0) {
        kr.inconsistent = true;
        kr.verdict = Verdict::Inconclusive;
    } else if (kr.rhs_index == 0) {
        kr.verdict = Verdict::Stable;
    } else if (kr.rhs_index % 2 == 1) {
        kr.verdict = Verdict::Unstable;
    } else {
        kr.verdict = Verdict::Inconclusive;
    }
    return kr;
}

}  // namespace nls2d
