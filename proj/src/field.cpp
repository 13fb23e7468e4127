#include "nls2d/field.hpp"

#include <cmath>
#include <random>

namespace nls2d {

Sector branch_sector(BranchKind b) { return b == BranchKind::SS ? Sector::S : Sector::E; }

const char* sector_name(Sector s) { return s == Sector::S ? "S" : "E"; }

const char* branch_name(BranchKind b) {
    switch (b) {
        case BranchKind::SS: return "ss";
        case BranchKind::EPlus: return "eplus";
        default: return "eminus";
    }
}

TorusGrid alias_free_grid(int n, int power) {
    int m0 = std::max(2 * n + 1, power * n + 1);
    return TorusGrid{((m0 + 7) / 8) * 8};
}

SpectralField SpectralField::zero(Sector s, int n) {
    SpectralField f;
    f.sector_ = s;
    f.n_ = n;
    f.cc_ = Eigen::MatrixXd::Zero(n + 1, n + 1);
    if (s == Sector::E) f.ss_ = Eigen::MatrixXd::Zero(n, n);
    return f;
}

SpectralField SpectralField::constant(Sector s, int n, double value) {
    SpectralField f = zero(s, n);
    f.cc_(0, 0) = value;
    return f;
}

SpectralField SpectralField::generator(BranchKind b, int n) {
    SpectralField f = zero(branch_sector(b), n);
    f.cc(1, 1) = 1.0;
    if (b == BranchKind::EPlus) f.ss(1, 1) = -1.0;  // cos(x+y) = cc - ss
    if (b == BranchKind::EMinus) f.ss(1, 1) = 1.0;
    return f;
}

void require_compatible(const SpectralField& a, const SpectralField& b) {
    if (a.sector() != b.sector() || a.trunc() != b.trunc())
        throw ValidationError("field sector/truncation mismatch");
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
    require_compatible(*this, o);
    cc_ += o.cc_;
    if (has_ss()) ss_ += o.ss_;
    return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
    require_compatible(*this, o);
    cc_ -= o.cc_;
    if (has_ss()) ss_ -= o.ss_;
    return *this;
}

SpectralField& SpectralField::operator*=(double s) {
    cc_ *= s;
    if (has_ss()) ss_ *= s;
    return *this;
}

double mode_weight_cc(int k, int j) {
    return pi * pi * (k == 0 ? 2.0 : 1.0) * (j == 0 ? 2.0 : 1.0);
}

namespace {

// m x (n+1) matrix of cos(k*x_i) and m x n matrix of sin(k*x_i), k >= 1.
Eigen::MatrixXd cos_table(const TorusGrid& g, int n) {
    Eigen::MatrixXd c(g.m, n + 1);
    for (int i = 0; i < g.m; ++i)
        for (int k = 0; k <= n; ++k) c(i, k) = std::cos(k * g.node(i));
    return c;
}

Eigen::MatrixXd sin_table(const TorusGrid& g, int n) {
    Eigen::MatrixXd s(g.m, n);
    for (int i = 0; i < g.m; ++i)
        for (int k = 1; k <= n; ++k) s(i, k - 1) = std::sin(k * g.node(i));
    return s;
}

void check_nodal_symmetry(const Eigen::MatrixXd& v, Sector s) {
    const int m = static_cast<int>(v.rows());
    const double scale = std::max(1.0, v.cwiseAbs().maxCoeff());
    double asym = 0.0;
    if (s == Sector::S) {
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                asym = std::max(asym, std::abs(v(i, j) - v((m - i) % m, j)));
                asym = std::max(asym, std::abs(v(i, j) - v(i, (m - j) % m)));
            }
    } else {
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                asym = std::max(asym, std::abs(v(i, j) - v((m - i) % m, (m - j) % m)));
    }
    if (asym > 1e-10 * scale)
        throw SectorMismatchError("nodal data violates sector symmetry, asymmetry = " +
                                  std::to_string(asym));
}

}  // namespace

Eigen::MatrixXd coeff_to_nodal(const SpectralField& f, const TorusGrid& g) {
    if (g.m < 2 * f.trunc() + 1)
        throw ResolutionError("grid too small: m = " + std::to_string(g.m) + ", need >= " +
                              std::to_string(2 * f.trunc() + 1));
    const Eigen::MatrixXd c = cos_table(g, f.trunc());
    Eigen::MatrixXd nodal = c * f.cc_block() * c.transpose();
    if (f.has_ss() && f.trunc() > 0) {
        const Eigen::MatrixXd s = sin_table(g, f.trunc());
        nodal += s * f.ss_block() * s.transpose();
    }
    return nodal;
}

SpectralField nodal_to_coeff(const Eigen::MatrixXd& values, Sector s, int n,
                             bool check_symmetry) {
    const int m = static_cast<int>(values.rows());
    if (values.cols() != m) throw ValidationError("nodal array must be square");
    if (m < 2 * n + 1) throw ResolutionError("grid too small for requested truncation");
    if (check_symmetry) check_nodal_symmetry(values, s);

    const TorusGrid g{m};
    SpectralField f = SpectralField::zero(s, n);
    const Eigen::MatrixXd c = cos_table(g, n);
    Eigen::MatrixXd proj = c.transpose() * values * c;  // (n+1) x (n+1)
    for (int k = 0; k <= n; ++k)
        for (int j = 0; j <= n; ++j) {
            const double ek = (k == 0) ? 1.0 : 2.0;
            const double ej = (j == 0) ? 1.0 : 2.0;
            f.cc(k, j) = proj(k, j) * ek * ej / (static_cast<double>(m) * m);
        }
    if (s == Sector::E && n > 0) {
        const Eigen::MatrixXd st = sin_table(g, n);
        Eigen::MatrixXd sproj = st.transpose() * values * st;
        f.ss_block() = sproj * 4.0 / (static_cast<double>(m) * m);
    }
    return f;
}

SpectralField laplacian(const SpectralField& f) {
    SpectralField out = f;
    const int n = f.trunc();
    for (int k = 0; k <= n; ++k)
        for (int j = 0; j <= n; ++j) out.cc(k, j) *= -static_cast<double>(k * k + j * j);
    if (f.has_ss())
        for (int k = 1; k <= n; ++k)
            for (int j = 1; j <= n; ++j) out.ss(k, j) *= -static_cast<double>(k * k + j * j);
    return out;
}

SpectralField field_power(const SpectralField& f, int q) {
    if (q < 1) throw ValidationError("field_power: exponent must be >= 1");
    if (q == 1) return f;
    const TorusGrid g = alias_free_grid(f.trunc(), q);
    Eigen::MatrixXd nodal = coeff_to_nodal(f, g);
    const double peak = nodal.cwiseAbs().maxCoeff();
    if (peak > 0.0 && q * std::log10(peak) > 280.0)
        throw NumericRangeError("field_power: intermediate nodal values overflow");
    Eigen::MatrixXd acc = nodal;
    for (int i = 1; i < q; ++i) acc = acc.cwiseProduct(nodal);
    return nodal_to_coeff(acc, f.sector(), f.trunc(), false);
}

SpectralField field_product(const SpectralField& f, const SpectralField& g) {
    require_compatible(f, g);
    const TorusGrid grid = alias_free_grid(f.trunc(), 3);
    Eigen::MatrixXd prod = coeff_to_nodal(f, grid).cwiseProduct(coeff_to_nodal(g, grid));
    return nodal_to_coeff(prod, f.sector(), f.trunc(), false);
}

double inner_product(const SpectralField& f, const SpectralField& h) {
    require_compatible(f, h);
    const int n = f.trunc();
    double acc = 0.0;
    for (int k = 0; k <= n; ++k)
        for (int j = 0; j <= n; ++j) acc += mode_weight_cc(k, j) * f.cc(k, j) * h.cc(k, j);
    if (f.has_ss()) acc += mode_weight_ss() * f.ss_block().cwiseProduct(h.ss_block()).sum();
    return acc;
}

double l2_norm(const SpectralField& f) { return std::sqrt(inner_product(f, f)); }

double nodal_min(const SpectralField& f) {
    const TorusGrid g = alias_free_grid(std::max(f.trunc(), 16), 4);
    return coeff_to_nodal(f, g).minCoeff();
}

SpectralField embed_in_e(const SpectralField& f) {
    if (f.sector() == Sector::E) return f;
    SpectralField out = SpectralField::zero(Sector::E, f.trunc());
    out.cc_block() = f.cc_block();
    return out;
}

SpectralField truncate_to(const SpectralField& f, int n) {
    SpectralField out = SpectralField::zero(f.sector(), n);
    const int common = std::min(n, f.trunc());
    out.cc_block().topLeftCorner(common + 1, common + 1) =
        f.cc_block().topLeftCorner(common + 1, common + 1);
    if (f.has_ss() && common > 0)
        out.ss_block().topLeftCorner(common, common) = f.ss_block().topLeftCorner(common, common);
    return out;
}

SpectralField swap_xy(const SpectralField& f) {
    SpectralField out = f;
    out.cc_block() = f.cc_block().transpose().eval();
    if (f.has_ss()) out.ss_block() = f.ss_block().transpose().eval();
    return out;
}

SpectralField mirror_y(const SpectralField& f) {
    SpectralField out = f;
    if (f.has_ss()) out.ss_block() = -f.ss_block();
    return out;
}

SpectralField random_field(Sector s, int n, std::uint64_t seed, double decay) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    SpectralField f = SpectralField::zero(s, n);
    for (int k = 0; k <= n; ++k)
        for (int j = 0; j <= n; ++j) f.cc(k, j) = gauss(rng) * std::exp(-decay * (k + j));
    if (s == Sector::E)
        for (int k = 1; k <= n; ++k)
            for (int j = 1; j <= n; ++j) f.ss(k, j) = gauss(rng) * std::exp(-decay * (k + j));
    return f;
}

}  // namespace nls2d
