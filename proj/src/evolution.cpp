#include "nls2d/evolution.hpp"

#include <cmath>

namespace nls2d {

using cplx = std::complex<double>;

ComplexTorusField::ComplexTorusField(int n, Eigen::MatrixXcd coef) : n_(n), coef_(std::move(coef)) {
    if (coef_.rows() != 2 * n + 1 || coef_.cols() != 2 * n + 1)
        throw ValidationError("ComplexTorusField: coefficient block must be (2n+1)^2");
}

ComplexTorusField ComplexTorusField::zero(int n) {
    return ComplexTorusField(n, Eigen::MatrixXcd::Zero(2 * n + 1, 2 * n + 1));
}

ComplexTorusField ComplexTorusField::from_real(const SpectralField& f) {
    const int n = f.trunc();
    ComplexTorusField u = zero(n);
    // cos(kx)cos(jy) = 1/4 sum over the four sign choices of e^{i(+-kx +- jy)}
    for (int k = 0; k <= n; ++k)
        for (int j = 0; j <= n; ++j) {
            const double a = f.cc(k, j);
            if (a == 0.0) continue;
            u.coef(k, j) += 0.25 * a;
            u.coef(k, -j) += 0.25 * a;
            u.coef(-k, j) += 0.25 * a;
            u.coef(-k, -j) += 0.25 * a;
        }
    if (f.has_ss())
        // sin(kx)sin(jy) = -1/4 (e^{i(kx+jy)} - e^{i(kx-jy)} - e^{i(-kx+jy)} + e^{i(-kx-jy)})
        for (int k = 1; k <= n; ++k)
            for (int j = 1; j <= n; ++j) {
                const double a = f.ss(k, j);
                if (a == 0.0) continue;
                u.coef(k, j) += -0.25 * a;
                u.coef(k, -j) += 0.25 * a;
                u.coef(-k, j) += 0.25 * a;
                u.coef(-k, -j) += -0.25 * a;
            }
    return u;
}

double ComplexTorusField::l2_norm() const {
    return 2.0 * pi * std::sqrt(coef_.squaredNorm());
}

namespace {

Eigen::MatrixXcd mode_table(const TorusGrid& g, int n) {
    Eigen::MatrixXcd e(g.m, 2 * n + 1);
    for (int i = 0; i < g.m; ++i)
        for (int k = -n; k <= n; ++k) e(i, k + n) = std::polar(1.0, k * g.node(i));
    return e;
}

double abs_pow_sum(const Eigen::MatrixXcd& nodal, int p) {
    return nodal.array().abs().pow(p + 2).sum();
}

}  // namespace

ConservedQuantities conserved_quantities(const ComplexTorusField& u, int p) {
    ConservedQuantities q;
    const int n = u.trunc();
    double grad = 0.0, mass = 0.0;
    for (int k = -n; k <= n; ++k)
        for (int j = -n; j <= n; ++j) {
            const double a2 = std::norm(u.coef(k, j));
            grad += (k * k + j * j) * a2;
            mass += a2;
        }
    const double w = 4.0 * pi * pi;  // Parseval weight of e^{i(kx+jy)}
    q.f = 0.5 * w * mass;

    const TorusGrid g1 = alias_free_grid(n, p + 2);
    const TorusGrid g2{g1.m + (g1.m + 1) / 2 / 8 * 8 + 8};  // ~1.5x refinement
    const Eigen::MatrixXcd e1 = mode_table(g1, n), e2 = mode_table(g2, n);
    const double s1 = abs_pow_sum(e1 * u.coef_block() * e1.transpose(), p) *
                      (2.0 * pi / g1.m) * (2.0 * pi / g1.m);
    const double s2 = abs_pow_sum(e2 * u.coef_block() * e2.transpose(), p) *
                      (2.0 * pi / g2.m) * (2.0 * pi / g2.m);
    q.e = 0.5 * w * grad - s2 / (p + 2);
    q.quad_delta_e = std::abs(s2 - s1) / (p + 2);
    return q;
}

double phase_min_deviation(const ComplexTorusField& u, const ComplexTorusField& phi) {
    if (u.trunc() != phi.trunc()) throw ValidationError("deviation: truncation mismatch");
    // optimal phase from the inner product, then the difference taken
    // coefficient-wise (avoids cancellation between large norms)
    const cplx ip = (u.coef_block().cwiseProduct(phi.coef_block().conjugate())).sum();
    const cplx rot = (std::abs(ip) == 0.0) ? cplx(1.0, 0.0) : ip / std::abs(ip);
    return 2.0 * pi * (u.coef_block() - rot * phi.coef_block()).norm();
}

StrangIntegrator::StrangIntegrator(int n, int p, double dt) : n_(n), p_(p), dt_(dt) {
    if (dt <= 0.0) throw ValidationError("strang: dt must be positive");
    grid_ = alias_free_grid(n, p + 2);
    modes_ = mode_table(grid_, n);
    Eigen::VectorXcd mult(2 * n + 1);
    for (int k = -n; k <= n; ++k) mult(k + n) = std::polar(1.0, -static_cast<double>(k * k) * dt);
    // nodal one-step multiplier: P = E diag(mult) E^H / m
    propagator_ = modes_ * mult.asDiagonal() * modes_.adjoint() / static_cast<double>(grid_.m);
}

Eigen::MatrixXcd StrangIntegrator::to_nodal(const ComplexTorusField& u) const {
    return modes_ * u.coef_block() * modes_.transpose();
}

ComplexTorusField StrangIntegrator::to_coef(const Eigen::MatrixXcd& nodal) const {
    const double m2 = static_cast<double>(grid_.m) * grid_.m;
    return ComplexTorusField(n_, (modes_.adjoint() * nodal * modes_.conjugate()) / m2);
}

ComplexTorusField StrangIntegrator::step(const ComplexTorusField& u) const {
    Eigen::MatrixXcd nodal = to_nodal(u);
    auto half_rotation = [&](Eigen::MatrixXcd& v) {
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            cplx& z = v.data()[i];
            z *= std::polar(1.0, 0.5 * dt_ * std::pow(std::abs(z), p_));
        }
    };
    half_rotation(nodal);
    nodal = (propagator_ * nodal * propagator_.transpose()).eval();
    half_rotation(nodal);
    return to_coef(nodal);
}

EvolutionTrace evolve_perturbed(const WaveBranchPoint& wave, double eps, double t_final,
                                double dt, std::uint64_t seed, int stride) {
    if (eps < 0.0 || t_final <= 0.0 || dt <= 0.0)
        throw ValidationError("evolve: eps >= 0 and T, dt > 0 required");
    const int n = wave.field.trunc();
    const ComplexTorusField phi = ComplexTorusField::from_real(wave.field);

    ComplexTorusField u = phi;
    if (eps > 0.0) {
        const SpectralField xr = random_field(wave.field.sector(), n, seed, 0.5);
        const SpectralField xi = random_field(wave.field.sector(), n, seed + 1, 0.5);
        Eigen::MatrixXcd pert = ComplexTorusField::from_real(xr).coef_block() +
                                cplx(0, 1) * ComplexTorusField::from_real(xi).coef_block();
        const double norm = 2.0 * pi * pert.norm();
        u = ComplexTorusField(n, u.coef_block() + (eps / norm) * pert);
    }

    const StrangIntegrator integ(n, wave.p, dt);
    const long steps = std::lround(t_final / dt);

    EvolutionTrace trace;
    trace.dt = dt;
    trace.eps = eps;
    trace.seed = seed;

    auto sample = [&](double t) {
        const ConservedQuantities q = conserved_quantities(u, wave.p);
        trace.t.push_back(t);
        trace.e.push_back(q.e);
        trace.f.push_back(q.f);
        trace.deviation.push_back(phase_min_deviation(u, phi));
    };
    sample(0.0);
    const TorusGrid guard = alias_free_grid(n, 2);
    const Eigen::MatrixXcd guard_modes = mode_table(guard, n);
    for (long s = 1; s <= steps; ++s) {
        u = integ.step(u);
        if (s % std::max(stride, 1) == 0 || s == steps) {
            const double peak =
                (guard_modes * u.coef_block() * guard_modes.transpose()).cwiseAbs().maxCoeff();
            if (peak > 1e6) {
                trace.blown_up = true;
                trace.t_blowup = s * dt;
                break;
            }
            sample(s * dt);
        }
    }
    return trace;
}

}  // namespace nls2d
