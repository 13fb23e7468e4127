#include "nls2d/stability.hpp"

#include <algorithm>

namespace nls2d {

StabilityReport stability_report(const WaveBranchPoint& wave, const StabilityOptions& opt) {
    StabilityReport rep;
    rep.p = wave.p;
    rep.branch = wave.branch;
    rep.sector = wave.field.sector();
    rep.a = wave.a;
    rep.c = wave.c;
    rep.n = wave.field.trunc();
    rep.wave_residual = wave.residual;

    const OperatorMatrix l1 = assemble_L1(wave.field, wave.c, wave.p);
    const OperatorMatrix l2 = assemble_L2(wave.field, wave.c, wave.p);
    rep.l1_sym_defect = l1.sym_defect;
    rep.l2_sym_defect = l2.sym_defect;
    rep.l2_phi_residual = l2_norm(apply(l2, wave.field));

    const double tau_override = opt.tau.value_or(-1.0);
    const SpectrumCounts e1 = eig_sym(l1, tau_override);
    const SpectrumCounts e2 = eig_sym(l2, tau_override);
    rep.l1 = {e1.n_neg, e1.z, e1.tau, e1.eigenvalues};
    rep.l2 = {e2.n_neg, e2.z, e2.tau, e2.eigenvalues};

    // L is block diagonal, so its counts are the sums and its spectrum the union.
    rep.l.n_neg = e1.n_neg + e2.n_neg;
    rep.l.z = e1.z + e2.z;
    rep.l.tau = std::max(e1.tau, e2.tau);
    rep.l.eigenvalues.resize(e1.eigenvalues.size() + e2.eigenvalues.size());
    rep.l.eigenvalues << e1.eigenvalues, e2.eigenvalues;
    std::sort(rep.l.eigenvalues.data(), rep.l.eigenvalues.data() + rep.l.eigenvalues.size());

    rep.krein = krein_report(l1, e1, l2, e2);
    rep.jl = jl_spectrum_report(l1, l2, opt.eps_re.value_or(-1.0), opt.eps_im.value_or(-1.0));
    rep.consistency = verdict_crosscheck(rep.jl, rep.krein, rep.l.tau);

    rep.paper.stable_match_krein =
        (rep.krein.verdict == Verdict::Stable) == rep.paper.expected_stable;
    rep.paper.stable_match_direct = rep.jl.stable == rep.paper.expected_stable;
    rep.paper.n_l1_match = (e1.n_neg == rep.paper.expected_n_l1);
    rep.paper.n_l2_match = (e2.n_neg == rep.paper.expected_n_l2);
    rep.paper.z_l2_match = (e2.z == rep.paper.expected_z_l2);
    return rep;
}

}  // namespace nls2d
