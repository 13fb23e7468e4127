#pragma once

// Per-wave stability driver: assembles L1/L2, runs the Krein-index route and
// the direct JL route, cross-checks them, and records the comparison against
// the claimed small-amplitude counts and verdict.

#include <optional>

#include "nls2d/continuation.hpp"
#include "nls2d/jl.hpp"
#include "nls2d/krein.hpp"

namespace nls2d {

struct StabilityOptions {
    std::optional<double> tau;     // kernel tolerance override for L1/L2
    std::optional<double> eps_re;  // JL classification overrides
    std::optional<double> eps_im;
};

struct CountSummary {
    int n_neg = 0, z = 0;
    double tau = 0.0;
    Eigen::VectorXd eigenvalues;
};

// Expected values near the bifurcation point (stable verdict, n(L1)=1,
// n(L2)=0, z(L2)=1) against what was computed.
struct PaperComparison {
    bool expected_stable = true;
    int expected_n_l1 = 1, expected_n_l2 = 0, expected_z_l2 = 1;
    bool stable_match_krein = false;
    bool stable_match_direct = false;
    bool n_l1_match = false;
    bool n_l2_match = false;
    bool z_l2_match = false;
};

struct StabilityReport {
    int p = 1;
    BranchKind branch = BranchKind::SS;
    Sector sector = Sector::S;
    double a = 0.0, c = 0.0;
    int n = 0;
    double wave_residual = 0.0;

    CountSummary l1, l2, l;  // l holds the block-diagonal sums
    double l1_sym_defect = 0.0, l2_sym_defect = 0.0;
    double l2_phi_residual = 0.0;  // ||L2 phi|| (kernel membership)

    KreinReport krein;
    JLSpectrumReport jl;
    ConsistencyRecord consistency;
    PaperComparison paper;
};

StabilityReport stability_report(const WaveBranchPoint& wave, const StabilityOptions& opt = {});

}  // namespace nls2d
