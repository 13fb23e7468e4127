// Command-line driver: stokes | branch | stability | evolve | minimize | report.
// Exit codes: 0 success, 2 validation, 3 numerical non-convergence, 4 I/O.

#include <CLI11.hpp>
#include <iostream>

#include "nls2d/report.hpp"

using namespace nls2d;

namespace {

BranchKind parse_branch(const std::string& s) {
    if (s == "ss") return BranchKind::SS;
    if (s == "eplus") return BranchKind::EPlus;
    if (s == "eminus") return BranchKind::EMinus;
    throw ValidationError("unknown branch: " + s + " (expected ss|eplus|eminus)");
}

void validate(const RunConfig& cfg) {
    if (cfg.n < 3) throw ValidationError("N must be >= 3");
    if (cfg.steps < 1) throw ValidationError("steps must be >= 1");
    if (cfg.newton_tol <= 0) throw ValidationError("newton-tol must be positive");
    if (cfg.tau && *cfg.tau <= 0) throw ValidationError("tau must be positive");
    if (cfg.eps_re && *cfg.eps_re <= 0) throw ValidationError("eps-re must be positive");
    if (cfg.eps_im && *cfg.eps_im <= 0) throw ValidationError("eps-im must be positive");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Standing waves of the 2D focusing NLS on the bi-torus: construction, "
                 "continuation, two-route spectral stability, evolution, minimization"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string branch_name_arg = "ss";
    std::string input, wave_input;
    std::vector<std::string> report_inputs;
    double tau = 0, eps_re = 0, eps_im = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out-dir", cfg.out_dir, "output directory (default $NLS2D_OUTDIR or .)");
    };

    CLI::App* stokes = app.add_subcommand("stokes", "write a small-amplitude expansion wave");
    stokes->add_option("--p", cfg.p);
    stokes->add_option("--branch", branch_name_arg, "ss|eplus|eminus");
    stokes->add_option("--a", cfg.a);
    stokes->add_option("--order", cfg.order, "2 or 3");
    stokes->add_option("--N", cfg.n);
    add_common(stokes);

    CLI::App* branch = app.add_subcommand("branch", "continue a branch in amplitude");
    branch->add_option("--p", cfg.p);
    branch->add_option("--branch", branch_name_arg);
    branch->add_option("--a0", cfg.a_start);
    branch->add_option("--a1", cfg.a_end);
    branch->add_option("--steps", cfg.steps);
    branch->add_option("--N", cfg.n);
    branch->add_option("--newton-tol", cfg.newton_tol);
    add_common(branch);

    CLI::App* stability = app.add_subcommand("stability", "two-route stability report");
    stability->add_option("--input", input, "wave or branch JSON file")->required();
    stability->add_option("--tau", tau, "kernel tolerance override");
    stability->add_option("--eps-re", eps_re);
    stability->add_option("--eps-im", eps_im);
    add_common(stability);

    CLI::App* evolve = app.add_subcommand("evolve", "split-step evolution of a perturbed wave");
    evolve->add_option("--input", input, "wave JSON file")->required();
    evolve->add_option("--T", cfg.t_final);
    evolve->add_option("--dt", cfg.dt);
    evolve->add_option("--eps", cfg.eps);
    evolve->add_option("--seed", cfg.seed);
    evolve->add_option("--stride", cfg.stride);
    add_common(evolve);

    CLI::App* minimize = app.add_subcommand("minimize", "constrained minimization oracle");
    minimize->add_option("--p", cfg.p);
    minimize->add_option("--c", cfg.c);
    minimize->add_option("--lambda", cfg.lambda);
    minimize->add_option("--branch", branch_name_arg, "selects the sector");
    minimize->add_option("--N", cfg.n);
    minimize->add_option("--seed", cfg.seed);
    minimize->add_option("--wave", wave_input, "take c and lambda from a wave file");
    add_common(minimize);

    CLI::App* report = app.add_subcommand("report", "merge stability reports into one table");
    report->add_option("--inputs", report_inputs, "stability JSON files")->required();
    add_common(report);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        cfg.branch = parse_branch(branch_name_arg);
        if (tau > 0) cfg.tau = tau;
        if (eps_re > 0) cfg.eps_re = eps_re;
        if (eps_im > 0) cfg.eps_im = eps_im;
        validate(cfg);

        std::vector<std::filesystem::path> written;
        if (stokes->parsed()) written = cmd_stokes(cfg);
        if (branch->parsed()) written = cmd_branch(cfg);
        if (stability->parsed()) written = cmd_stability(cfg, input);
        if (evolve->parsed()) written = cmd_evolve(cfg, input);
        if (minimize->parsed())
            written = cmd_minimize(cfg, wave_input.empty()
                                            ? std::nullopt
                                            : std::optional<std::filesystem::path>(wave_input));
        if (report->parsed())
            written = cmd_report(
                cfg, std::vector<std::filesystem::path>(report_inputs.begin(),
                                                        report_inputs.end()));
        for (const auto& f : written) std::cout << f.string() << "\n";
        return 0;
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
