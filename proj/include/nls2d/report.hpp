#pragma once

// File formats and command entry points. Waves and branches are JSON
// ({format_version, p, sector, branch, N, a, c, cc, ss}), eigenvalues and
// traces are CSV. All writes are atomic (write to a temp file, then rename).

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "nls2d/evolution.hpp"
#include "nls2d/minimize.hpp"
#include "nls2d/stability.hpp"
#include "nls2d/stokes.hpp"

namespace nls2d {

struct RunConfig {
    int p = 1;
    BranchKind branch = BranchKind::SS;
    int n = 16;
    // stokes / branch
    double a = 0.05;
    int order = 3;
    double a_start = 0.01, a_end = 0.2;
    int steps = 20;
    // tolerances
    double newton_tol = 1e-11;
    std::optional<double> tau, eps_re, eps_im;
    // evolution
    double t_final = 10.0, dt = 1e-3, eps = 1e-4;
    int stride = 10;
    // minimizer
    double c = 2.0, lambda = 1.0;
    std::uint64_t seed = 1;
    std::string out_dir;  // empty: $NLS2D_OUTDIR or "."

    std::filesystem::path resolve_out_dir() const;
};

void atomic_write_text(const std::filesystem::path& path, const std::string& content);

// wave files
std::string wave_to_json(const WaveBranchPoint& w);
WaveBranchPoint wave_from_json(const std::string& text);
void write_wave(const std::filesystem::path& path, const WaveBranchPoint& w);
WaveBranchPoint read_wave(const std::filesystem::path& path);

// branch files
std::string branch_to_json(const Branch& b);
Branch branch_from_json(const std::string& text);
std::string branch_to_csv(const Branch& b);  // a, c, residual, nodal_min

// reports
std::string stability_to_json(const StabilityReport& r);
std::string eigenvalues_to_csv(const Eigen::VectorXcd& eigs);  // columns re, im
std::string minimizer_to_json(const MinimizerRun& r);
std::string trace_to_csv(const EvolutionTrace& t);  // t, E, F, deviation

// command entry points (shared by the CLI tool and the tests);
// each returns the list of files written
std::vector<std::filesystem::path> cmd_stokes(const RunConfig& cfg);
std::vector<std::filesystem::path> cmd_branch(const RunConfig& cfg);
std::vector<std::filesystem::path> cmd_stability(const RunConfig& cfg,
                                                 const std::filesystem::path& input);
std::vector<std::filesystem::path> cmd_evolve(const RunConfig& cfg,
                                              const std::filesystem::path& wave_file);
std::vector<std::filesystem::path> cmd_minimize(const RunConfig& cfg,
                                                const std::optional<std::filesystem::path>& wave);
std::vector<std::filesystem::path> cmd_report(const RunConfig& cfg,
                                              const std::vector<std::filesystem::path>& inputs);

}  // namespace nls2d
