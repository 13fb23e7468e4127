#pragma once

// Symmetry-adapted spectral representation of real functions on the
// 2pi x 2pi torus.
//
// Two sectors are supported:
//   S : f(-x,y) = f(x,y) and f(x,-y) = f(x,y); basis cos(kx)cos(jy), k,j >= 0.
//   E : f(-x,-y) = f(x,y); basis adds sin(kx)sin(jy), k,j >= 1.
// S embeds losslessly into E. Stored coefficients multiply the plain
// products cos(kx)cos(jy) / sin(kx)sin(jy), no orthonormal scaling.

#include <Eigen/Dense>
#include <cstdint>

#include "nls2d/errors.hpp"

namespace nls2d {

inline constexpr double pi = 3.14159265358979323846;

enum class Sector { S, E };

// Bifurcation family: SS generated by cos(x)cos(y) in the S sector,
// EPlus/EMinus by cos(x+y)/cos(x-y) in the E sector.
enum class BranchKind { SS, EPlus, EMinus };

Sector branch_sector(BranchKind b);
const char* sector_name(Sector s);
const char* branch_name(BranchKind b);

struct TorusGrid {
    int m = 0;  // nodal points per direction, nodes x_i = 2*pi*i/m
    double node(int i) const { return 2.0 * pi * static_cast<double>(i) / m; }
};

// Smallest transform grid that represents degree-(power*n) products exactly,
// rounded up to a multiple of 8.
TorusGrid alias_free_grid(int n, int power);

class SpectralField {
  public:
    SpectralField() = default;

    static SpectralField zero(Sector s, int n);
    static SpectralField constant(Sector s, int n, double value);
    // Unit-amplitude generator mode of a branch: cos(x)cos(y) or cos(x +- y).
    static SpectralField generator(BranchKind b, int n);

    Sector sector() const { return sector_; }
    int trunc() const { return n_; }
    bool has_ss() const { return sector_ == Sector::E; }

    double cc(int k, int j) const { return cc_(k, j); }
    double& cc(int k, int j) { return cc_(k, j); }
    // sin(kx)sin(jy) coefficient, 1 <= k,j <= n (E sector only)
    double ss(int k, int j) const { return ss_(k - 1, j - 1); }
    double& ss(int k, int j) { return ss_(k - 1, j - 1); }

    const Eigen::MatrixXd& cc_block() const { return cc_; }
    Eigen::MatrixXd& cc_block() { return cc_; }
    const Eigen::MatrixXd& ss_block() const { return ss_; }
    Eigen::MatrixXd& ss_block() { return ss_; }

    SpectralField& operator+=(const SpectralField& o);
    SpectralField& operator-=(const SpectralField& o);
    SpectralField& operator*=(double s);

    friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
    friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
    friend SpectralField operator*(double s, SpectralField f) { return f *= s; }
    friend SpectralField operator*(SpectralField f, double s) { return f *= s; }
    friend SpectralField operator-(SpectralField f) { return f *= -1.0; }

  private:
    Sector sector_ = Sector::S;
    int n_ = 0;
    Eigen::MatrixXd cc_;  // (n+1) x (n+1)
    Eigen::MatrixXd ss_;  // n x n, E sector only (ss_(k-1,j-1) <-> sin(kx)sin(jy))
};

void require_compatible(const SpectralField& a, const SpectralField& b);

// Parseval weight of a basis mode: integral of its square over the torus.
double mode_weight_cc(int k, int j);
inline double mode_weight_ss() { return pi * pi; }

// Exact evaluation of the trigonometric polynomial at all grid nodes.
// Requires g.m >= 2*f.trunc()+1.
Eigen::MatrixXd coeff_to_nodal(const SpectralField& f, const TorusGrid& g);

// Quadrature projection onto the truncated basis; exact when the samples come
// from a truncation-n polynomial of the claimed sector. Checks the nodal
// symmetry to 1e-10 and throws SectorMismatchError on violation.
SpectralField nodal_to_coeff(const Eigen::MatrixXd& values, Sector s, int n,
                             bool check_symmetry = true);

SpectralField laplacian(const SpectralField& f);

// Galerkin truncation of f^q, computed on an alias-free grid. q >= 1.
SpectralField field_power(const SpectralField& f, int q);
SpectralField field_product(const SpectralField& f, const SpectralField& g);

double inner_product(const SpectralField& f, const SpectralField& h);
double l2_norm(const SpectralField& f);

// Minimum of the field on a fine evaluation grid.
double nodal_min(const SpectralField& f);

SpectralField embed_in_e(const SpectralField& f);
SpectralField truncate_to(const SpectralField& f, int n);
SpectralField swap_xy(const SpectralField& f);
SpectralField mirror_y(const SpectralField& f);  // y -> -y

// Deterministic pseudo-random field: coefficient (k,j) ~ N(0,1)*exp(-decay*(k+j)).
SpectralField random_field(Sector s, int n, std::uint64_t seed, double decay = 0.25);

}  // namespace nls2d
