#include "nls2d/operators.hpp"

#include <cmath>

namespace nls2d {

std::vector<BasisMode> sector_modes(Sector s, int n) {
    std::vector<BasisMode> modes;
    modes.reserve(static_cast<std::size_t>((n + 1) * (n + 1) + (s == Sector::E ? n * n : 0)));
    for (int k = 0; k <= n; ++k)
        for (int j = 0; j <= n; ++j) modes.push_back({false, k, j, mode_weight_cc(k, j)});
    if (s == Sector::E)
        for (int k = 1; k <= n; ++k)
            for (int j = 1; j <= n; ++j) modes.push_back({true, k, j, mode_weight_ss()});
    return modes;
}

Eigen::VectorXd to_ortho(const SpectralField& f) {
    const auto modes = sector_modes(f.sector(), f.trunc());
    Eigen::VectorXd y(modes.size());
    for (std::size_t i = 0; i < modes.size(); ++i) {
        const auto& m = modes[i];
        const double x = m.sine ? f.ss(m.k, m.j) : f.cc(m.k, m.j);
        y(static_cast<Eigen::Index>(i)) = x * std::sqrt(m.weight);
    }
    return y;
}

SpectralField from_ortho(Sector s, int n, const Eigen::VectorXd& y) {
    const auto modes = sector_modes(s, n);
    if (y.size() != static_cast<Eigen::Index>(modes.size()))
        throw ValidationError("from_ortho: coordinate size mismatch");
    SpectralField f = SpectralField::zero(s, n);
    for (std::size_t i = 0; i < modes.size(); ++i) {
        const auto& m = modes[i];
        const double x = y(static_cast<Eigen::Index>(i)) / std::sqrt(m.weight);
        if (m.sine)
            f.ss(m.k, m.j) = x;
        else
            f.cc(m.k, m.j) = x;
    }
    return f;
}

Eigen::MatrixXd multiplication_matrix(Sector s, int n, const Eigen::MatrixXd& g_nodal,
                                      const TorusGrid& grid, double* sym_defect) {
    const auto modes = sector_modes(s, n);
    const int dim = static_cast<int>(modes.size());
    const int m = grid.m;
    if (g_nodal.rows() != m || g_nodal.cols() != m)
        throw ValidationError("multiplication_matrix: nodal array does not match grid");

    // B(node, a) = e_a(node) * (2*pi/m) / sqrt(w_a); then A = B^T diag(g) B is
    // the exact Galerkin matrix on an alias-free grid.
    Eigen::MatrixXd ct(m, n + 1), st(m, std::max(n, 0));
    for (int i = 0; i < m; ++i) {
        for (int k = 0; k <= n; ++k) ct(i, k) = std::cos(k * grid.node(i));
        for (int k = 1; k <= n; ++k) st(i, k - 1) = std::sin(k * grid.node(i));
    }
    const double h = 2.0 * pi / m;
    Eigen::MatrixXd b(m * m, dim);
    Eigen::MatrixXd outer(m, m);
    for (int a = 0; a < dim; ++a) {
        const auto& md = modes[a];
        if (md.sine)
            outer = st.col(md.k - 1) * st.col(md.j - 1).transpose();
        else
            outer = ct.col(md.k) * ct.col(md.j).transpose();
        b.col(a) = Eigen::Map<const Eigen::VectorXd>(outer.data(), m * m) *
                   (h / std::sqrt(md.weight));
    }
    Eigen::VectorXd gv = Eigen::Map<const Eigen::VectorXd>(g_nodal.data(), m * m);
    Eigen::MatrixXd gb = gv.asDiagonal() * b;
    Eigen::MatrixXd a = b.transpose() * gb;

    const double norm = std::max(a.cwiseAbs().maxCoeff(), 1e-300);
    const double defect = (a - a.transpose()).cwiseAbs().maxCoeff() / norm;
    if (sym_defect) *sym_defect = defect;
    a = 0.5 * (a + a.transpose()).eval();
    return a;
}

namespace {

Eigen::MatrixXd helmholtz_plus_mult(const SpectralField& phi, double c, double factor, int p,
                                    double* defect) {
    const int n = phi.trunc();
    const TorusGrid grid = alias_free_grid(n, p + 2);
    Eigen::MatrixXd phin = coeff_to_nodal(phi, grid);
    Eigen::MatrixXd g = phin;
    for (int i = 1; i < p; ++i) g = g.cwiseProduct(phin);
    g *= factor;
    Eigen::MatrixXd a = multiplication_matrix(phi.sector(), n, g, grid, defect);
    const auto modes = sector_modes(phi.sector(), n);
    for (std::size_t i = 0; i < modes.size(); ++i) {
        const auto idx = static_cast<Eigen::Index>(i);
        a(idx, idx) += modes[i].k * modes[i].k + modes[i].j * modes[i].j + c;
    }
    return a;
}

}  // namespace

Eigen::MatrixXd l1_matrix(const SpectralField& phi, double c, int p, double* defect) {
    return helmholtz_plus_mult(phi, c, -(p + 1.0), p, defect);
}

Eigen::MatrixXd l2_matrix(const SpectralField& phi, double c, int p, double* defect) {
    return helmholtz_plus_mult(phi, c, -1.0, p, defect);
}

OperatorMatrix assemble_L1(const SpectralField& phi, double c, int p) {
    OperatorMatrix op;
    op.sector = phi.sector();
    op.n = phi.trunc();
    op.built_from = OperatorTag::L1;
    op.mat = l1_matrix(phi, c, p, &op.sym_defect);
    op.symmetric = true;
    return op;
}

OperatorMatrix assemble_L2(const SpectralField& phi, double c, int p) {
    OperatorMatrix op;
    op.sector = phi.sector();
    op.n = phi.trunc();
    op.built_from = OperatorTag::L2;
    op.mat = l2_matrix(phi, c, p, &op.sym_defect);
    op.symmetric = true;
    return op;
}

SpectrumCounts eig_sym(const OperatorMatrix& a, double tau_override) {
    if (!a.symmetric) throw ValidationError("eig_sym: operator not flagged symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a.mat);
    if (es.info() != Eigen::Success) throw NumericalError("eig_sym: eigensolver failed");
    SpectrumCounts sc;
    sc.eigenvalues = es.eigenvalues();
    sc.vectors = es.eigenvectors();
    const double radius =
        std::max(std::abs(sc.eigenvalues(0)), std::abs(sc.eigenvalues(sc.eigenvalues.size() - 1)));
    sc.tau = tau_override > 0.0 ? tau_override : std::max(1e-8, 1e-10 * radius);
    for (Eigen::Index i = 0; i < sc.eigenvalues.size(); ++i) {
        if (sc.eigenvalues(i) < -sc.tau) ++sc.n_neg;
        if (std::abs(sc.eigenvalues(i)) <= sc.tau) ++sc.z;
    }
    sc.first_kernel = sc.n_neg;
    return sc;
}

SpectralField apply(const OperatorMatrix& a, const SpectralField& f) {
    return from_ortho(a.sector, a.n, a.mat * to_ortho(f));
}

SpectralField solve_in_range(const OperatorMatrix& a, const SpectrumCounts& eig,
                             const SpectralField& rhs) {
    Eigen::VectorXd r = to_ortho(rhs);
    const double rnorm = r.norm();
    if (rnorm == 0.0) return SpectralField::zero(a.sector, a.n);
    Eigen::VectorXd comp = eig.vectors.transpose() * r;
    for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
        if (std::abs(eig.eigenvalues(i)) <= eig.tau) {
            const double proj = std::abs(comp(i)) / rnorm;
            if (proj > 1e-8)
                throw SolvabilityError(
                    "solve_in_range: rhs has kernel component (relative " + std::to_string(proj) +
                        ")",
                    proj);
            comp(i) = 0.0;
        } else {
            comp(i) /= eig.eigenvalues(i);
        }
    }
    return from_ortho(a.sector, a.n, eig.vectors * comp);
}

double quadratic_form_inverse(const OperatorMatrix& a, const SpectrumCounts& eig,
                              const SpectralField& f) {
    return inner_product(solve_in_range(a, eig, f), f);
}

}  // namespace nls2d
