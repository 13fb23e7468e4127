#include "nls2d/minimize.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

namespace nls2d {

double b_functional(const SpectralField& u, double c) {
    if (c <= 0.0) throw ValidationError("B_c requires c > 0");
    const int n = u.trunc();
    double acc = 0.0;
    for (int k = 0; k <= n; ++k)
        for (int j = 0; j <= n; ++j)
            acc += (k * k + j * j + c) * mode_weight_cc(k, j) * u.cc(k, j) * u.cc(k, j);
    if (u.has_ss())
        for (int k = 1; k <= n; ++k)
            for (int j = 1; j <= n; ++j)
                acc += (k * k + j * j + c) * mode_weight_ss() * u.ss(k, j) * u.ss(k, j);
    return 0.5 * acc;
}

double constraint_value(const SpectralField& u, int p) {
    const TorusGrid g = alias_free_grid(u.trunc(), p + 2);
    const Eigen::MatrixXd nodal = coeff_to_nodal(u, g);
    const double h = 2.0 * pi / g.m;
    return nodal.array().abs().pow(p + 2).sum() * h * h;
}

namespace {

// nonlinear term |u|^p u projected back to the truncation
SpectralField constraint_gradient_direction(const SpectralField& u, int p) {
    const TorusGrid g = alias_free_grid(u.trunc(), p + 2);
    Eigen::MatrixXd nodal = coeff_to_nodal(u, g);
    Eigen::MatrixXd out = nodal.array().abs().pow(p).matrix().cwiseProduct(nodal);
    return nodal_to_coeff(out, u.sector(), u.trunc(), false);
}

SpectralField renormalize(const SpectralField& u, int p, double lambda) {
    const double cur = constraint_value(u, p);
    if (cur <= 0.0) throw NumericalError("minimize: degenerate iterate (zero constraint)");
    return std::pow(lambda / cur, 1.0 / (p + 2)) * u;
}

SpectralField b_gradient(const SpectralField& u, double c) { return -laplacian(u) + c * u; }

MinimizerRun run_descent(int p, double c, double lambda, SpectralField u, std::uint64_t seed,
                         const MinimizeOptions& opt) {
    if (c <= 0.0) throw ValidationError("minimize requires c > 0");
    if (lambda <= 0.0) throw ValidationError("minimize requires lambda > 0");
    const int n = u.trunc();

    MinimizerRun run;
    run.p = p;
    run.c = c;
    run.lambda = lambda;
    run.sector = u.sector();
    run.n = n;
    run.seed = seed;

    u = renormalize(u, p, lambda);
    double b = b_functional(u, c);
    const double base_step = 1.0 / (2.0 * n * n + c);  // inverse of the largest B curvature
    std::deque<double> window;

    long it = 0;
    double gnorm = 0.0;
    for (; it < opt.max_iterations; ++it) {
        const SpectralField g = b_gradient(u, c);
        // tangential part relative to the constraint manifold
        const SpectralField t = constraint_gradient_direction(u, p);
        const double tnorm2 = inner_product(t, t);
        const SpectralField gt = g - (inner_product(g, t) / tnorm2) * t;
        gnorm = l2_norm(gt);
        if (gnorm < opt.grad_tol) {
            run.converged = true;
            break;
        }

        // fixed base step, per-step backtracking halving on B increase
        double step = base_step;
        SpectralField next = renormalize(u - step * g, p, lambda);
        double bn = b_functional(next, c);
        int halvings = 0;
        while (bn > b + 1e-14 * std::abs(b) && halvings < 60) {
            step *= 0.5;
            next = renormalize(u - step * g, p, lambda);
            bn = b_functional(next, c);
            ++halvings;
        }
        u = next;

        window.push_back(b - bn);
        if (window.size() > 50) window.pop_front();
        if (window.size() == 50) {
            double total = 0.0;
            for (double d : window) total += d;
            if (total < opt.b_decrease_tol * std::abs(bn)) {
                b = bn;
                ++it;
                run.converged = true;
                break;
            }
        }
        b = bn;
    }

    run.iterations = it;
    run.field = u;
    run.b_value = b;
    run.constraint_residual = std::abs(constraint_value(u, p) - lambda) / lambda;
    run.grad_norm = gnorm;

    // Euler-Lagrange multiplier of the limit: (-Delta + c) u = C1 |u|^p u.
    const SpectralField lin = b_gradient(u, c);
    const SpectralField t = constraint_gradient_direction(u, p);
    run.c1_multiplier = inner_product(lin, t) / inner_product(t, t);
    if (run.c1_multiplier > 0.0) {
        run.rescaled_field = std::pow(run.c1_multiplier, 1.0 / p) * u;
        run.rescaled_lambda = constraint_value(run.rescaled_field, p);
    } else {
        run.rescaled_field = u;
        run.rescaled_lambda = lambda;
    }
    return run;
}

}  // namespace

MinimizerRun minimize(int p, double c, double lambda, Sector sector, int n, std::uint64_t seed,
                      const MinimizeOptions& opt) {
    SpectralField u = random_field(sector, n, seed, 0.4);
    // keep the start away from the zero field
    u.cc(0, 0) += 1.0;
    return run_descent(p, c, lambda, u, seed, opt);
}

MinimizerRun minimize_from(int p, double c, double lambda, const SpectralField& start,
                           const MinimizeOptions& opt) {
    return run_descent(p, c, lambda, start, 0, opt);
}

PhaseReport positivity_and_phase_check(SpectralField& u) {
    PhaseReport rep;
    const double scale = l2_norm(u);
    if (scale == 0.0) throw ValidationError("positivity check: zero field is degenerate");
    const double mean = u.cc(0, 0);
    if (mean < 0.0) {
        u *= -1.0;
        rep.flipped = true;
    }
    rep.nodal_minimum = nodal_min(u);
    return rep;
}

double aligned_distance(const SpectralField& u, const SpectralField& target) {
    double best = std::numeric_limits<double>::infinity();
    for (int swap = 0; swap < 2; ++swap) {
        SpectralField v = swap ? swap_xy(u) : u;
        for (int sign = 0; sign < 2; ++sign) {
            const SpectralField w = sign ? -v : v;
            best = std::min(best, l2_norm(w - target));
        }
    }
    return best;
}

}  // namespace nls2d
