#include "nls2d/stokes.hpp"

#include <cmath>
#include <vector>

namespace nls2d {

namespace {

double binom(int m, int q) {
    if (q < 0 || q > m) return 0.0;
    double r = 1.0;
    for (int i = 0; i < q; ++i) r = r * (m - i) / (i + 1);
    return r;
}

// Solve (-Delta - 2) u = rhs mode by mode. Modes with k^2+j^2 = 2 are the
// kernel; the rhs must not load them.
SpectralField helmholtz_minus2_solve(const SpectralField& rhs) {
    const int n = rhs.trunc();
    const double scale = std::max(1.0, l2_norm(rhs));
    SpectralField u = SpectralField::zero(rhs.sector(), n);
    for (int k = 0; k <= n; ++k)
        for (int j = 0; j <= n; ++j) {
            const double sym = static_cast<double>(k * k + j * j) - 2.0;
            if (k * k + j * j == 2) {
                if (std::abs(rhs.cc(k, j)) > 1e-12 * scale)
                    throw NumericalError("helmholtz solve: rhs loads a kernel mode");
                continue;
            }
            u.cc(k, j) = rhs.cc(k, j) / sym;
        }
    if (rhs.has_ss())
        for (int k = 1; k <= n; ++k)
            for (int j = 1; j <= n; ++j) {
                const double sym = static_cast<double>(k * k + j * j) - 2.0;
                if (k * k + j * j == 2) {
                    if (std::abs(rhs.ss(k, j)) > 1e-12 * scale)
                        throw NumericalError("helmholtz solve: rhs loads a kernel mode");
                    continue;
                }
                u.ss(k, j) = rhs.ss(k, j) / sym;
            }
    return u;
}

void validate_inputs(int p, int order, int n) {
    if (p < 1) throw ValidationError("stokes: p must be a positive integer");
    if (n < 3) throw ValidationError("stokes: truncation n must be >= 3");
    if (order != 2 && order != 3) throw ValidationError("stokes: order must be 2 or 3");
    if (order == 3 && p != 1)
        throw ValidationError("stokes: order 3 is only implemented for p = 1 (unsupported order)");
}

}  // namespace

double solvability_c2(int p, BranchKind branch) {
    if (p < 1) throw ValidationError("solvability_c2: p must be a positive integer");
    const int n = 4;  // the projection involves modes up to degree 4 only
    const double w = std::pow(2.0 / p, 1.0 / p);
    const SpectralField phi1 = SpectralField::generator(branch, n);
    const double b2 = binom(p + 1, 2) * std::pow(w, p - 1);
    const double b3 = binom(p + 1, 3) * ((p == 1) ? 0.0 : std::pow(w, p - 2));

    // phi2 = phi2_0 + c2 * (w/2), with (-Delta - 2) phi2_0 = b2 * phi1^2.
    const SpectralField phi1sq = field_power(phi1, 2);
    const SpectralField phi2_0 = helmholtz_minus2_solve(b2 * phi1sq);

    // Projection of the O(a^3) equation onto phi1:
    //   -c2 |phi1|^2 + p(p+1) w^(p-1) <phi1 phi2, phi1> + b3 <phi1^3, phi1> = 0
    // after substituting phi2 the c2 terms collect to p*|phi1|^2.
    const double norm1sq = inner_product(phi1, phi1);
    const double t_mix = p * (p + 1) * std::pow(w, p - 1) * inner_product(phi2_0, phi1sq);
    const double t_cube = b3 * inner_product(phi1sq, phi1sq);
    return -(t_mix + t_cube) / (p * norm1sq);
}

StokesExpansion stokes_expansion(int p, BranchKind branch, int order, int n) {
    validate_inputs(p, order, n);
    const double w = std::pow(2.0 / p, 1.0 / p);
    const double c2 = solvability_c2(p, branch);

    StokesExpansion ex;
    ex.phi0 = w;
    ex.c2 = c2;
    ex.phi1 = SpectralField::generator(branch, n);

    const double b2 = binom(p + 1, 2) * std::pow(w, p - 1);
    const SpectralField phi1sq = field_power(ex.phi1, 2);
    SpectralField rhs2 = b2 * phi1sq - SpectralField::constant(ex.phi1.sector(), n, c2 * w);
    ex.phi2 = helmholtz_minus2_solve(rhs2);

    if (order == 3) {
        // p = 1 only: (-Delta - 2) phi3 = 2 phi1 phi2 - c2 phi1.
        SpectralField rhs3 = 2.0 * field_product(ex.phi1, ex.phi2) - c2 * ex.phi1;
        ex.phi3 = helmholtz_minus2_solve(rhs3);
    }
    return ex;
}

StokesWave stokes_wave(int p, BranchKind branch, double a, int order, int n) {
    validate_inputs(p, order, n);
    StokesWave wave;
    wave.p = p;
    wave.branch = branch;
    wave.a = a;
    wave.order = order;

    if (a == 0.0) {
        wave.field = SpectralField::constant(branch_sector(branch), n, std::pow(2.0 / p, 1.0 / p));
        wave.c = 2.0 / p;
        return wave;
    }

    const StokesExpansion ex = stokes_expansion(p, branch, order, n);
    wave.field = SpectralField::constant(ex.phi1.sector(), n, ex.phi0) + a * ex.phi1 +
                 (a * a) * ex.phi2;
    if (ex.phi3) wave.field += (a * a * a) * (*ex.phi3);
    wave.c = 2.0 / p + ex.c2 * a * a;
    wave.positivity_warning = (nodal_min(wave.field) <= 0.0);
    return wave;
}

double stokes_residual_slope(int p, BranchKind branch, int order, int n) {
    const int points = 13;
    std::vector<double> la, lr;
    for (int i = 0; i < points; ++i) {
        const double a = 1e-3 * std::pow(100.0, static_cast<double>(i) / (points - 1));
        const StokesWave w = stokes_wave(p, branch, a, order, n);
        const SpectralField res =
            -laplacian(w.field) + w.c * w.field - field_power(w.field, p + 1);
        const double r = l2_norm(res);
        if (r < 1e-12) continue;  // below roundoff floor of the assembly
        la.push_back(std::log(a));
        lr.push_back(std::log(r));
    }
    if (la.size() < 4) throw NumericalError("residual slope: too few resolvable points");
    // least-squares slope
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const auto m = static_cast<double>(la.size());
    for (std::size_t i = 0; i < la.size(); ++i) {
        sx += la[i];
        sy += lr[i];
        sxx += la[i] * la[i];
        sxy += la[i] * lr[i];
    }
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace nls2d
