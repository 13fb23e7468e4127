#include "nls2d/continuation.hpp"

#include <Eigen/LU>
#include <cmath>

#include "nls2d/operators.hpp"
#include "nls2d/stokes.hpp"

namespace nls2d {

SpectralField stationary_residual(const SpectralField& phi, double c, int p) {
    return -laplacian(phi) + c * phi - field_power(phi, p + 1);
}

double generator_amplitude(const SpectralField& phi, BranchKind branch) {
    const SpectralField gen = SpectralField::generator(branch, phi.trunc());
    return inner_product(phi, gen) / inner_product(gen, gen);
}

WaveBranchPoint newton_solve_fixed_amplitude(const WaveBranchPoint& guess,
                                             const NewtonOptions& opt) {
    const int n = guess.field.trunc();
    const Sector sec = guess.field.sector();
    const int dim = static_cast<int>(sector_modes(sec, n).size());

    const SpectralField gen = SpectralField::generator(guess.branch, n);
    const Eigen::VectorXd gen_ortho = to_ortho(gen);
    const double gen_norm_sq = inner_product(gen, gen);

    SpectralField phi = guess.field;
    double c = guess.c;

    WaveBranchPoint out = guess;
    double rnorm = 0.0;
    int iter = 0;
    for (; iter <= opt.max_iter; ++iter) {
        const SpectralField res = stationary_residual(phi, c, guess.p);
        const double amp_defect =
            std::abs(inner_product(phi, gen) / gen_norm_sq - guess.a);
        rnorm = l2_norm(res);
        const bool pinned = amp_defect <= 1e-12 * std::max(1.0, std::abs(guess.a));
        // keep polishing below tol while progress is quadratic; stop at floor
        if (pinned && (rnorm <= 1e-13 || (rnorm <= opt.tol && iter > 0))) break;
        if (iter == opt.max_iter)
            throw NoConvergenceError("newton: max iterations exceeded, last residual " +
                                         std::to_string(rnorm),
                                     rnorm);

        Eigen::MatrixXd jac(dim + 1, dim + 1);
        jac.topLeftCorner(dim, dim) = l1_matrix(phi, c, guess.p);
        jac.topRightCorner(dim, 1) = to_ortho(phi);
        jac.bottomLeftCorner(1, dim) = gen_ortho.transpose();
        jac(dim, dim) = 0.0;

        Eigen::VectorXd rhs(dim + 1);
        rhs.head(dim) = -to_ortho(res);
        rhs(dim) = -(inner_product(phi, gen) - guess.a * gen_norm_sq);

        Eigen::FullPivLU<Eigen::MatrixXd> lu(jac);
        if (!lu.isInvertible())
            throw ContinuationBreakdownError("newton: singular bordered Jacobian");
        const Eigen::VectorXd step = lu.solve(rhs);
        phi += from_ortho(sec, n, step.head(dim));
        c += step(dim);
    }

    out.field = phi;
    out.c = c;
    out.a = generator_amplitude(phi, guess.branch);
    out.residual = rnorm;
    out.nodal_minimum = nodal_min(phi);
    out.iterations = iter;
    if (rnorm > opt.tol)
        throw NoConvergenceError("newton: stagnated above tolerance, residual " +
                                     std::to_string(rnorm),
                                 rnorm);
    return out;
}

Branch continue_branch(int p, BranchKind branch, double a_start, double a_end, int steps, int n,
                       const NewtonOptions& opt) {
    if (steps < 1) throw ValidationError("continue_branch: steps must be >= 1");
    if (a_end < a_start) throw ValidationError("continue_branch: a_end must be >= a_start");

    Branch br;
    br.p = p;
    br.branch = branch;
    br.n = n;
    br.newton_tol = opt.tol;

    const int order = (p == 1) ? 3 : 2;
    for (int i = 0; i < steps; ++i) {
        const double a =
            (steps == 1) ? a_start
                         : a_start + (a_end - a_start) * static_cast<double>(i) / (steps - 1);
        WaveBranchPoint guess;
        guess.p = p;
        guess.branch = branch;
        guess.a = a;
        if (br.points.empty()) {
            const StokesWave sw = stokes_wave(p, branch, a, order, n);
            guess.field = sw.field;
            guess.c = sw.c;
        } else {
            guess.field = br.points.back().field;
            guess.c = br.points.back().c;
        }
        try {
            br.points.push_back(newton_solve_fixed_amplitude(guess, opt));
        } catch (const NumericalError& e) {
            br.aborted = true;
            br.abort_reason = e.what();
            if (steps > 1) br.abort_reason += " (consider refining the amplitude step)";
            break;
        }
    }
    return br;
}

namespace {

void check_index(const Branch& br, int index) {
    if (index < 0 || index >= static_cast<int>(br.points.size()))
        throw ValidationError("branch index out of range");
    if (br.points.size() < 2) throw ValidationError("branch derivative needs >= 2 points");
}

double spacing_guard(double dc) {
    if (std::abs(dc) < 1e-14)
        throw NumericalError("branch derivative unavailable: degenerate spacing in c");
    return dc;
}

}  // namespace

SpectralField branch_dphi_dc(const Branch& br, int index) {
    check_index(br, index);
    const auto& pts = br.points;
    const int last = static_cast<int>(pts.size()) - 1;
    if (index == 0) {
        const double dc = spacing_guard(pts[1].c - pts[0].c);
        return (1.0 / dc) * (pts[1].field - pts[0].field);
    }
    if (index == last) {
        const double dc = spacing_guard(pts[last].c - pts[last - 1].c);
        return (1.0 / dc) * (pts[last].field - pts[last - 1].field);
    }
    // non-uniform central stencil
    const double hm = spacing_guard(pts[index].c - pts[index - 1].c);
    const double hp = spacing_guard(pts[index + 1].c - pts[index].c);
    const double denom = hm * hp * (hm + hp);
    return (1.0 / denom) * (hm * hm * (pts[index + 1].field - pts[index].field) +
                            hp * hp * (pts[index].field - pts[index - 1].field));
}

double branch_dmass_dc(const Branch& br, int index) {
    check_index(br, index);
    const auto& pts = br.points;
    auto mass = [](const WaveBranchPoint& w) { return inner_product(w.field, w.field); };
    const int last = static_cast<int>(pts.size()) - 1;
    if (index == 0) return (mass(pts[1]) - mass(pts[0])) / spacing_guard(pts[1].c - pts[0].c);
    if (index == last)
        return (mass(pts[last]) - mass(pts[last - 1])) /
               spacing_guard(pts[last].c - pts[last - 1].c);
    const double hm = spacing_guard(pts[index].c - pts[index - 1].c);
    const double hp = spacing_guard(pts[index + 1].c - pts[index].c);
    const double denom = hm * hp * (hm + hp);
    return (hm * hm * (mass(pts[index + 1]) - mass(pts[index])) +
            hp * hp * (mass(pts[index]) - mass(pts[index - 1]))) /
           denom;
}

}  // namespace nls2d
