#include <doctest.h>

#include "nls2d/field.hpp"

using namespace nls2d;

TEST_SUITE_BEGIN("field");

TEST_CASE("constant field evaluates to its value everywhere") {
    const auto f = SpectralField::constant(Sector::S, 4, 1.0);
    const auto nodal = coeff_to_nodal(f, TorusGrid{16});
    CHECK(nodal.minCoeff() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(nodal.maxCoeff() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("cos(x)cos(y) at selected nodes") {
    auto f = SpectralField::zero(Sector::S, 4);
    f.cc(1, 1) = 1.0;
    const TorusGrid g{16};
    const auto nodal = coeff_to_nodal(f, g);
    CHECK(nodal(0, 0) == doctest::Approx(1.0));
    CHECK(nodal(8, 8) == doctest::Approx(1.0));  // (pi, pi)
    CHECK(nodal(4, 4) == doctest::Approx(0.0).epsilon(1e-14));  // (pi/2, pi/2)
}

TEST_CASE("round-trip coeff->nodal->coeff is the identity") {
    for (int n : {4, 8, 16, 32}) {
        for (Sector s : {Sector::S, Sector::E}) {
            const auto f = random_field(s, n, 42 + n, 0.0);
            const auto g = alias_free_grid(n, 2);
            const auto back = nodal_to_coeff(coeff_to_nodal(f, g), s, n);
            CHECK(l2_norm(back - f) < 1e-12 * l2_norm(f));
        }
    }
}

TEST_CASE("grid too small raises a resolution error") {
    const auto f = SpectralField::constant(Sector::S, 8, 1.0);
    CHECK_THROWS_AS(coeff_to_nodal(f, TorusGrid{9}), ResolutionError);
}

TEST_CASE("projection of plain data") {
    const int m = 16;
    SUBCASE("constant 2") {
        Eigen::MatrixXd v = Eigen::MatrixXd::Constant(m, m, 2.0);
        const auto f = nodal_to_coeff(v, Sector::S, 4);
        CHECK(f.cc(0, 0) == doctest::Approx(2.0));
        CHECK(l2_norm(f - SpectralField::constant(Sector::S, 4, 2.0)) < 1e-13);
    }
    SUBCASE("cos(2x)cos(2y)") {
        Eigen::MatrixXd v(m, m);
        const TorusGrid g{m};
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                v(i, j) = std::cos(2 * g.node(i)) * std::cos(2 * g.node(j));
        const auto f = nodal_to_coeff(v, Sector::S, 4);
        CHECK(f.cc(2, 2) == doctest::Approx(1.0));
        auto expect = SpectralField::zero(Sector::S, 4);
        expect.cc(2, 2) = 1.0;
        CHECK(l2_norm(f - expect) < 1e-13);
    }
    SUBCASE("sin(x)sin(y) against the S sector is a sector mismatch") {
        Eigen::MatrixXd v(m, m);
        const TorusGrid g{m};
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) v(i, j) = std::sin(g.node(i)) * std::sin(g.node(j));
        CHECK_THROWS_AS(nodal_to_coeff(v, Sector::S, 4), SectorMismatchError);
        CHECK_NOTHROW(nodal_to_coeff(v, Sector::E, 4));
    }
}

TEST_CASE("laplacian multiplies modes by -(k^2+j^2)") {
    auto f = SpectralField::constant(Sector::S, 4, 3.0);
    CHECK(l2_norm(laplacian(f)) == 0.0);

    auto g = SpectralField::zero(Sector::S, 4);
    g.cc(1, 1) = 1.0;
    CHECK(l2_norm(laplacian(g) + 2.0 * g) < 1e-15);

    auto h = SpectralField::zero(Sector::S, 4);
    h.cc(3, 1) = 1.0;
    CHECK(l2_norm(laplacian(h) + 10.0 * h) < 1e-15);
}

TEST_CASE("laplacian is symmetric for the L2 pairing") {
    const auto f = random_field(Sector::E, 10, 7, 0.1);
    const auto h = random_field(Sector::E, 10, 8, 0.1);
    CHECK(inner_product(laplacian(f), h) ==
          doctest::Approx(inner_product(f, laplacian(h))).epsilon(1e-11));
}

TEST_CASE("field_power") {
    SUBCASE("constant squared") {
        const auto f = SpectralField::constant(Sector::S, 4, 2.0);
        const auto f2 = field_power(f, 2);
        CHECK(l2_norm(f2 - SpectralField::constant(Sector::S, 4, 4.0)) < 1e-13);
    }
    SUBCASE("(cos x cos y)^2 product-to-sum") {
        auto f = SpectralField::zero(Sector::S, 4);
        f.cc(1, 1) = 1.0;
        const auto f2 = field_power(f, 2);
        auto expect = SpectralField::zero(Sector::S, 4);
        expect.cc(0, 0) = 0.25;
        expect.cc(2, 0) = 0.25;
        expect.cc(0, 2) = 0.25;
        expect.cc(2, 2) = 0.25;
        CHECK(l2_norm(f2 - expect) < 1e-14);
    }
    SUBCASE("truncation at N=1 keeps only the constant") {
        auto f = SpectralField::zero(Sector::S, 1);
        f.cc(1, 1) = 1.0;
        const auto f2 = field_power(f, 2);
        CHECK(f2.cc(0, 0) == doctest::Approx(0.25));
        CHECK(f2.cc(1, 1) == doctest::Approx(0.0).epsilon(1e-15));
        CHECK(f2.cc(1, 0) == doctest::Approx(0.0).epsilon(1e-15));
    }
    SUBCASE("power 1 is exact identity") {
        const auto f = random_field(Sector::E, 6, 3);
        const auto g = field_power(f, 1);
        CHECK(l2_norm(g - f) == 0.0);
    }
    SUBCASE("overflow guard") {
        const auto f = SpectralField::constant(Sector::S, 3, 1e60);
        CHECK_THROWS_AS(field_power(f, 6), NumericRangeError);
    }
}

TEST_CASE("inner products of low modes") {
    const auto one = SpectralField::constant(Sector::S, 3, 1.0);
    CHECK(inner_product(one, one) == doctest::Approx(4 * pi * pi));

    auto cxy = SpectralField::zero(Sector::S, 3);
    cxy.cc(1, 1) = 1.0;
    CHECK(inner_product(cxy, cxy) == doctest::Approx(pi * pi));

    auto c2 = SpectralField::zero(Sector::S, 3);
    c2.cc(2, 2) = 1.0;
    CHECK(inner_product(cxy, c2) == 0.0);
}

TEST_CASE("parseval matches nodal quadrature") {
    const int n = 8;
    const auto f = random_field(Sector::E, n, 5, 0.2);
    const auto h = random_field(Sector::E, n, 6, 0.2);
    const auto g = alias_free_grid(n, 2);
    const double quad = coeff_to_nodal(f, g).cwiseProduct(coeff_to_nodal(h, g)).sum() *
                        (2 * pi / g.m) * (2 * pi / g.m);
    CHECK(inner_product(f, h) == doctest::Approx(quad).epsilon(1e-11));
}

TEST_CASE("sector embedding and coefficient symmetries") {
    const auto f = random_field(Sector::S, 5, 9);
    const auto fe = embed_in_e(f);
    CHECK(inner_product(fe, fe) == doctest::Approx(inner_product(f, f)));

    const auto g = random_field(Sector::E, 5, 10);
    const auto gm = mirror_y(g);
    CHECK(gm.cc(2, 1) == g.cc(2, 1));
    CHECK(gm.ss(2, 1) == -g.ss(2, 1));
    const auto gs = swap_xy(g);
    CHECK(gs.cc(2, 1) == g.cc(1, 2));
}

TEST_CASE("addition requires equal sector and truncation") {
    const auto a = SpectralField::constant(Sector::S, 4, 1.0);
    const auto b = SpectralField::constant(Sector::S, 5, 1.0);
    CHECK_THROWS_AS(a + b, ValidationError);
    const auto c = truncate_to(b, 4);
    CHECK_NOTHROW(a + c);
}

TEST_SUITE_END();
