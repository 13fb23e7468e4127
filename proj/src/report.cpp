#include "nls2d/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <nlohmann/json.hpp>

namespace nls2d {

using nlohmann::json;

namespace {

constexpr int kFormatVersion = 1;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

BranchKind branch_from_name(const std::string& s) {
    if (s == "ss") return BranchKind::SS;
    if (s == "eplus") return BranchKind::EPlus;
    if (s == "eminus") return BranchKind::EMinus;
    throw ValidationError("unknown branch name: " + s);
}

Sector sector_from_name(const std::string& s) {
    if (s == "S") return Sector::S;
    if (s == "E") return Sector::E;
    throw ValidationError("unknown sector name: " + s);
}

std::vector<double> flatten(const Eigen::MatrixXd& m) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(m.size()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)  // row-major per the file contract
        for (Eigen::Index j = 0; j < m.cols(); ++j) out.push_back(m(i, j));
    return out;
}

Eigen::MatrixXd unflatten(const std::vector<double>& v, Eigen::Index rows, Eigen::Index cols,
                          const char* what) {
    if (static_cast<Eigen::Index>(v.size()) != rows * cols)
        throw ValidationError(std::string("bad coefficient array length for field '") + what +
                              "'");
    Eigen::MatrixXd m(rows, cols);
    std::size_t idx = 0;
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = v[idx++];
    return m;
}

json field_to_json_fields(const SpectralField& f) {
    json j;
    j["sector"] = sector_name(f.sector());
    j["N"] = f.trunc();
    j["cc"] = flatten(f.cc_block());
    if (f.has_ss()) j["ss"] = flatten(f.ss_block());
    return j;
}

json verdict_json(Verdict v) { return verdict_name(v); }

}  // namespace

std::filesystem::path RunConfig::resolve_out_dir() const {
    if (!out_dir.empty()) return out_dir;
    if (const char* env = std::getenv("NLS2D_OUTDIR")) return env;
    return ".";
}

void atomic_write_text(const std::filesystem::path& path, const std::string& content) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open for writing: " + tmp.string());
        out << content;
        if (!out.good()) {
            out.close();
            std::filesystem::remove(tmp, ec);
            throw IoError("write failed: " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw IoError("rename failed for " + path.string());
    }
}

std::string wave_to_json(const WaveBranchPoint& w) {
    json j;
    j["format_version"] = kFormatVersion;
    j["p"] = w.p;
    j["sector"] = sector_name(w.field.sector());
    j["branch"] = branch_name(w.branch);
    j["N"] = w.field.trunc();
    j["a"] = w.a;
    j["c"] = w.c;
    j["cc"] = flatten(w.field.cc_block());
    if (w.field.has_ss()) j["ss"] = flatten(w.field.ss_block());
    j["residual"] = w.residual;
    j["nodal_min"] = w.nodal_minimum;
    return j.dump(2) + "\n";
}

namespace {

WaveBranchPoint wave_from_json_obj(const json& j) {
    try {
        WaveBranchPoint w;
        w.p = j.at("p").get<int>();
        const Sector sector = sector_from_name(j.at("sector").get<std::string>());
        w.branch = branch_from_name(j.at("branch").get<std::string>());
        const int n = j.at("N").get<int>();
        w.a = j.at("a").get<double>();
        w.c = j.at("c").get<double>();
        SpectralField f = SpectralField::zero(sector, n);
        f.cc_block() = unflatten(j.at("cc").get<std::vector<double>>(), n + 1, n + 1, "cc");
        if (sector == Sector::E) {
            if (!j.contains("ss")) throw ValidationError("E-sector wave file missing 'ss'");
            f.ss_block() = unflatten(j.at("ss").get<std::vector<double>>(), n, n, "ss");
        }
        w.field = f;
        w.residual = j.value("residual", 0.0);
        w.nodal_minimum = j.value("nodal_min", 0.0);
        return w;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("wave file schema violation: ") + e.what());
    }
}

}  // namespace

WaveBranchPoint wave_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("wave file parse error: ") + e.what());
    }
    return wave_from_json_obj(j);
}

void write_wave(const std::filesystem::path& path, const WaveBranchPoint& w) {
    atomic_write_text(path, wave_to_json(w));
}

WaveBranchPoint read_wave(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return wave_from_json(text);
}

std::string branch_to_json(const Branch& b) {
    json j;
    j["format_version"] = kFormatVersion;
    j["p"] = b.p;
    j["branch"] = branch_name(b.branch);
    j["sector"] = sector_name(branch_sector(b.branch));
    j["N"] = b.n;
    j["newton_tol"] = b.newton_tol;
    j["status"] = b.aborted ? "partial" : "complete";
    if (b.aborted) j["abort_reason"] = b.abort_reason;
    j["points"] = json::array();
    for (const auto& w : b.points) j["points"].push_back(json::parse(wave_to_json(w)));
    return j.dump(2) + "\n";
}

Branch branch_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
        Branch b;
        b.p = j.at("p").get<int>();
        b.branch = branch_from_name(j.at("branch").get<std::string>());
        b.n = j.at("N").get<int>();
        b.newton_tol = j.value("newton_tol", 1e-11);
        b.aborted = j.value("status", "complete") == std::string("partial");
        b.abort_reason = j.value("abort_reason", "");
        for (const auto& pt : j.at("points")) b.points.push_back(wave_from_json_obj(pt));
        return b;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("branch file schema violation: ") + e.what());
    }
}

std::string branch_to_csv(const Branch& b) {
    std::string out = "a,c,residual,nodal_min\n";
    for (const auto& w : b.points)
        out += format_double(w.a) + "," + format_double(w.c) + "," + format_double(w.residual) +
               "," + format_double(w.nodal_minimum) + "\n";
    return out;
}

std::string eigenvalues_to_csv(const Eigen::VectorXcd& eigs) {
    std::string out = "re,im\n";
    for (Eigen::Index i = 0; i < eigs.size(); ++i)
        out += format_double(eigs(i).real()) + "," + format_double(eigs(i).imag()) + "\n";
    return out;
}

std::string stability_to_json(const StabilityReport& r) {
    json j;
    j["format_version"] = kFormatVersion;
    j["wave"] = {{"p", r.p},          {"sector", sector_name(r.sector)},
                 {"branch", branch_name(r.branch)}, {"a", r.a},
                 {"c", r.c},          {"N", r.n},
                 {"residual", r.wave_residual}};
    auto counts = [](const CountSummary& s) {
        return json{{"n", s.n_neg}, {"z", s.z}, {"tau", s.tau}};
    };
    j["L1"] = counts(r.l1);
    j["L2"] = counts(r.l2);
    j["L"] = counts(r.l);
    j["L1"]["sym_defect"] = r.l1_sym_defect;
    j["L2"]["sym_defect"] = r.l2_sym_defect;
    j["L2"]["phi_residual"] = r.l2_phi_residual;

    json kj;
    kj["zL"] = r.krein.zL;
    kj["nL"] = r.krein.nL;
    kj["V"] = flatten(r.krein.V);
    kj["v_sym_defect"] = r.krein.v_sym_defect;
    kj["nV"] = r.krein.nV;
    kj["zV"] = r.krein.zV;
    kj["tauV"] = r.krein.tauV;
    kj["rhs_index"] = r.krein.rhs_index;
    kj["inconsistent"] = r.krein.inconsistent;
    kj["verdict"] = verdict_json(r.krein.verdict);
    kj["kernel_orthogonality"] = r.krein.kernel_orthogonality;
    j["krein"] = kj;

    json dj;
    dj["k_r"] = r.jl.k_r;
    dj["k_c"] = r.jl.k_c;
    dj["k_minus"] = r.jl.k_minus;
    dj["zero_modes"] = r.jl.zero_modes;
    dj["ambiguous_signatures"] = r.jl.ambiguous_signatures;
    dj["max_real_part"] = r.jl.max_real_part;
    dj["eps_re"] = r.jl.eps_re;
    dj["eps_im"] = r.jl.eps_im;
    dj["verdict"] = r.jl.stable ? "stable" : "unstable";
    j["direct"] = dj;

    json cj;
    cj["lhs_kr_kc_kminus"] = r.consistency.lhs;
    cj["rhs_index"] = r.consistency.rhs;
    cj["identity_holds"] = r.consistency.identity_holds;
    cj["verdicts_agree"] = r.consistency.verdicts_agree;
    j["consistency"] = cj;

    json pj;
    pj["expected_stable"] = r.paper.expected_stable;
    pj["expected_n_L1"] = r.paper.expected_n_l1;
    pj["expected_n_L2"] = r.paper.expected_n_l2;
    pj["expected_z_L2"] = r.paper.expected_z_l2;
    pj["stable_match_krein"] = r.paper.stable_match_krein;
    pj["stable_match_direct"] = r.paper.stable_match_direct;
    pj["n_L1_match"] = r.paper.n_l1_match;
    pj["n_L2_match"] = r.paper.n_l2_match;
    pj["z_L2_match"] = r.paper.z_l2_match;
    j["paper_comparison"] = pj;
    return j.dump(2) + "\n";
}

std::string minimizer_to_json(const MinimizerRun& r) {
    json j;
    j["format_version"] = kFormatVersion;
    j["p"] = r.p;
    j["c"] = r.c;
    j["lambda"] = r.lambda;
    j["seed"] = r.seed;
    j["iterations"] = r.iterations;
    j["converged"] = r.converged;
    j["B_value"] = r.b_value;
    j["constraint_residual"] = r.constraint_residual;
    j["grad_norm"] = r.grad_norm;
    j["C1_multiplier"] = r.c1_multiplier;
    j["rescaled_lambda"] = r.rescaled_lambda;
    j["field"] = field_to_json_fields(r.field);
    j["rescaled_field"] = field_to_json_fields(r.rescaled_field);
    return j.dump(2) + "\n";
}

std::string trace_to_csv(const EvolutionTrace& t) {
    std::string out = "# dt=" + format_double(t.dt) + " eps=" + format_double(t.eps) +
                      " seed=" + std::to_string(t.seed) + " method=" + t.method;
    if (t.blown_up) out += " blowup_t=" + format_double(t.t_blowup);
    out += "\nt,E,F,deviation\n";
    for (std::size_t i = 0; i < t.t.size(); ++i)
        out += format_double(t.t[i]) + "," + format_double(t.e[i]) + "," + format_double(t.f[i]) +
               "," + format_double(t.deviation[i]) + "\n";
    return out;
}

std::vector<std::filesystem::path> cmd_stokes(const RunConfig& cfg) {
    const StokesWave sw = stokes_wave(cfg.p, cfg.branch, cfg.a, cfg.order, cfg.n);
    WaveBranchPoint w;
    w.p = cfg.p;
    w.branch = cfg.branch;
    w.a = sw.a;
    w.c = sw.c;
    w.field = sw.field;
    w.residual = l2_norm(stationary_residual(sw.field, sw.c, cfg.p));
    w.nodal_minimum = nodal_min(sw.field);
    const auto path = cfg.resolve_out_dir() /
                      ("stokes_" + std::string(branch_name(cfg.branch)) + "_p" +
                       std::to_string(cfg.p) + ".json");
    write_wave(path, w);
    return {path};
}

std::vector<std::filesystem::path> cmd_branch(const RunConfig& cfg) {
    NewtonOptions nopt;
    nopt.tol = cfg.newton_tol;
    const Branch br =
        continue_branch(cfg.p, cfg.branch, cfg.a_start, cfg.a_end, cfg.steps, cfg.n, nopt);
    const std::string stem =
        "branch_" + std::string(branch_name(cfg.branch)) + "_p" + std::to_string(cfg.p);
    const auto dir = cfg.resolve_out_dir();
    const auto jpath = dir / (stem + ".json");
    const auto cpath = dir / (stem + ".csv");
    atomic_write_text(jpath, branch_to_json(br));
    atomic_write_text(cpath, branch_to_csv(br));
    if (br.aborted)
        throw NoConvergenceError("branch aborted after " + std::to_string(br.points.size()) +
                                     " points: " + br.abort_reason,
                                 0.0);
    return {jpath, cpath};
}

namespace {

std::vector<std::filesystem::path> stability_for_wave(const RunConfig& cfg,
                                                      const WaveBranchPoint& w,
                                                      const std::string& stem) {
    StabilityOptions sopt;
    sopt.tau = cfg.tau;
    sopt.eps_re = cfg.eps_re;
    sopt.eps_im = cfg.eps_im;
    const StabilityReport rep = stability_report(w, sopt);
    const auto dir = cfg.resolve_out_dir();
    const auto jpath = dir / (stem + ".json");
    const auto epath = dir / (stem + "_jl_eigs.csv");
    atomic_write_text(jpath, stability_to_json(rep));
    atomic_write_text(epath, eigenvalues_to_csv(rep.jl.eigenvalues));
    return {jpath, epath};
}

}  // namespace

std::vector<std::filesystem::path> cmd_stability(const RunConfig& cfg,
                                                 const std::filesystem::path& input) {
    std::ifstream in(input, std::ios::binary);
    if (!in) throw IoError("cannot open " + input.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::vector<std::filesystem::path> written;
    if (text.find("\"points\"") != std::string::npos) {
        const Branch br = branch_from_json(text);
        int idx = 0;
        for (const auto& w : br.points) {
            char suffix[16];
            std::snprintf(suffix, sizeof suffix, "_%03d", idx++);
            const auto files =
                stability_for_wave(cfg, w, "stability_" + input.stem().string() + suffix);
            written.insert(written.end(), files.begin(), files.end());
        }
    } else {
        const WaveBranchPoint w = wave_from_json(text);
        const auto files = stability_for_wave(cfg, w, "stability_" + input.stem().string());
        written.insert(written.end(), files.begin(), files.end());
    }
    return written;
}

std::vector<std::filesystem::path> cmd_evolve(const RunConfig& cfg,
                                              const std::filesystem::path& wave_file) {
    const WaveBranchPoint w = read_wave(wave_file);
    const EvolutionTrace tr =
        evolve_perturbed(w, cfg.eps, cfg.t_final, cfg.dt, cfg.seed, cfg.stride);
    const auto path = cfg.resolve_out_dir() / ("trace_" + wave_file.stem().string() + ".csv");
    atomic_write_text(path, trace_to_csv(tr));
    return {path};
}

std::vector<std::filesystem::path> cmd_minimize(const RunConfig& cfg,
                                                const std::optional<std::filesystem::path>& wave) {
    double c = cfg.c, lambda = cfg.lambda;
    Sector sector = branch_sector(cfg.branch);
    if (wave) {
        const WaveBranchPoint w = read_wave(*wave);
        c = w.c;
        lambda = constraint_value(w.field, w.p);
        sector = w.field.sector();
    }
    const MinimizerRun run = minimize(cfg.p, c, lambda, sector, cfg.n, cfg.seed);
    const auto path = cfg.resolve_out_dir() / ("minimize_p" + std::to_string(cfg.p) + "_seed" +
                                               std::to_string(cfg.seed) + ".json");
    atomic_write_text(path, minimizer_to_json(run));
    return {path};
}

std::vector<std::filesystem::path> cmd_report(const RunConfig& cfg,
                                              const std::vector<std::filesystem::path>& inputs) {
    std::string csv =
        "p,sector,branch,a,c,N,nL1,zL1,nL2,zL2,nL,zL,nV,zV,k_r,k_c,k_minus,"
        "identity_holds,krein_verdict,direct_verdict,verdicts_agree,max_real_part,"
        "paper_stable_match\n";
    for (const auto& path : inputs) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw IoError("cannot open " + path.string());
        json j;
        try {
            in >> j;
            const auto& w = j.at("wave");
            csv += std::to_string(w.at("p").get<int>()) + "," +
                   w.at("sector").get<std::string>() + "," + w.at("branch").get<std::string>() +
                   "," + format_double(w.at("a").get<double>()) + "," +
                   format_double(w.at("c").get<double>()) + "," +
                   std::to_string(w.at("N").get<int>()) + "," +
                   std::to_string(j.at("L1").at("n").get<int>()) + "," +
                   std::to_string(j.at("L1").at("z").get<int>()) + "," +
                   std::to_string(j.at("L2").at("n").get<int>()) + "," +
                   std::to_string(j.at("L2").at("z").get<int>()) + "," +
                   std::to_string(j.at("L").at("n").get<int>()) + "," +
                   std::to_string(j.at("L").at("z").get<int>()) + "," +
                   std::to_string(j.at("krein").at("nV").get<int>()) + "," +
                   std::to_string(j.at("krein").at("zV").get<int>()) + "," +
                   std::to_string(j.at("direct").at("k_r").get<int>()) + "," +
                   std::to_string(j.at("direct").at("k_c").get<int>()) + "," +
                   std::to_string(j.at("direct").at("k_minus").get<int>()) + "," +
                   (j.at("consistency").at("identity_holds").get<bool>() ? "1" : "0") + "," +
                   j.at("krein").at("verdict").get<std::string>() + "," +
                   j.at("direct").at("verdict").get<std::string>() + "," +
                   (j.at("consistency").at("verdicts_agree").get<bool>() ? "1" : "0") + "," +
                   format_double(j.at("direct").at("max_real_part").get<double>()) + "," +
                   (j.at("paper_comparison").at("stable_match_direct").get<bool>() ? "1" : "0") +
                   "\n";
        } catch (const json::exception& e) {
            throw ValidationError("report: " + path.string() + ": " + e.what());
        }
    }
    const auto out = cfg.resolve_out_dir() / "stability_table.csv";
    atomic_write_text(out, csv);
    return {out};
}

}  // namespace nls2d
