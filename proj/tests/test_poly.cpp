#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "attikit/poly.hpp"
#include "support/oracles.hpp"

using namespace attikit;

namespace {

NormalPoly<double, 3> random_normal_poly(std::mt19937_64& gen, int degree, double scale = 1.0)
{
    std::vector<Vec3d> c(static_cast<std::size_t>(degree) + 1);
    for (auto& v : c) v = oracles::random_vec3(gen, scale);
    return NormalPoly<double, 3>(std::move(c));
}

ChebPoly<double, 3> random_cheb_poly(std::mt19937_64& gen, int degree, double t_span,
                                     double scale = 1.0)
{
    std::vector<Vec3d> c(static_cast<std::size_t>(degree) + 1);
    for (auto& v : c) v = oracles::random_vec3(gen, scale);
    return ChebPoly<double, 3>(std::move(c), t_span);
}

}  // namespace

TEST_CASE("normal evaluation")
{
    NormalPoly<double, 3> constant = NormalPoly<double, 3>::constant(Vec3d(1, 2, 3));
    CHECK((constant.eval(0.0) - Vec3d(1, 2, 3)).norm() == 0.0);
    CHECK((constant.eval(17.5) - Vec3d(1, 2, 3)).norm() == 0.0);

    NormalPoly<double, 3> linear(std::vector<Vec3d>{Vec3d::Zero(), Vec3d(1, 0, 0)});
    CHECK((linear.eval(2.0) - Vec3d(2, 0, 0)).norm() == 0.0);

    // Horner agrees with the naive term-by-term sum
    auto gen = oracles::rng(3);
    const auto p = random_normal_poly(gen, 7);
    for (double t : {-1.3, -0.4, 0.0, 0.7, 1.9}) {
        Vec3d naive = Vec3d::Zero();
        for (int i = 0; i <= p.degree(); ++i) naive += p[i] * std::pow(t, i);
        CHECK((p.eval(t) - naive).norm() < 1e-13 * (1.0 + naive.norm()));
    }
}

TEST_CASE("chebyshev basis evaluation and the product identity numbers")
{
    CHECK(cheb_basis(2, 0.5) == doctest::Approx(-0.5));
    CHECK(cheb_basis(0, -0.73) == 1.0);
    CHECK(cheb_basis(0, 0.2) == 1.0);

    const double lhs = cheb_basis(1, 0.3) * cheb_basis(2, 0.3);
    const double rhs = 0.5 * (cheb_basis(3, 0.3) + cheb_basis(1, 0.3));
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-14));
    CHECK(lhs == doctest::Approx(-0.246).epsilon(1e-12));
}

TEST_CASE("cheb series evaluation enforces its domain")
{
    auto gen = oracles::rng(4);
    const auto p = random_cheb_poly(gen, 5, 2.0);
    CHECK_NOTHROW(p.eval(1.0));
    CHECK_NOTHROW(p.eval(-1.0));
    CHECK_THROWS_AS(p.eval(1.0 + 1e-9), std::domain_error);
}

TEST_CASE("cheb_defint endpoints and quadrature oracle")
{
    CHECK(cheb_defint(0, -1.0, 1.0) == doctest::Approx(2.0));
    CHECK(cheb_defint(1, -1.0, 1.0) == doctest::Approx(0.0));
    CHECK(cheb_defint(2, -1.0, 1.0) == doctest::Approx(-2.0 / 3.0).epsilon(1e-14));

    auto gen = oracles::rng(9);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i <= 40; ++i) {
        double a = u(gen);
        double b = u(gen);
        if (a > b) std::swap(a, b);
        const double direct = cheb_defint(i, a, b);
        const double quad =
            oracles::adaptive_simpson([i](double x) { return cheb_basis(i, x); }, a, b, 1e-15);
        CHECK(std::abs(direct - quad) < 1e-12);
    }

    CHECK_THROWS_AS(cheb_defint(2, -1.5, 0.0), std::domain_error);
    CHECK_THROWS_AS(cheb_defint(2, 0.5, 0.0), std::invalid_argument);
}

TEST_CASE("cheb_defint is additive over subintervals")
{
    for (int i : {0, 1, 2, 3, 7, 15}) {
        const double whole = cheb_defint(i, -0.9, 0.8);
        const double split = cheb_defint(i, -0.9, 0.1) + cheb_defint(i, 0.1, 0.8);
        CHECK(std::abs(whole - split) < 1e-13);
    }
}

TEST_CASE("normal antiderivative")
{
    NormalPoly<double, 3> constant = NormalPoly<double, 3>::constant(Vec3d(2, -1, 0.5));
    const auto integral = constant.antiderivative();
    CHECK(integral.degree() == 1);
    CHECK(integral[0].norm() == 0.0);
    CHECK((integral[1] - Vec3d(2, -1, 0.5)).norm() == 0.0);

    NormalPoly<double, 3> linear(std::vector<Vec3d>{Vec3d(1, 0, 0), Vec3d(0, 4, 0)});
    const auto li = linear.antiderivative();
    CHECK((li[1] - Vec3d(1, 0, 0)).norm() == 0.0);
    CHECK((li[2] - Vec3d(0, 2, 0)).norm() == 0.0);

    auto gen = oracles::rng(12);
    const auto p = random_normal_poly(gen, 6);
    const auto back = p.antiderivative().derivative();
    for (int i = 0; i <= p.degree(); ++i) CHECK((back.at(i) - p[i]).norm() < 1e-14);
}

TEST_CASE("truncate")
{
    auto gen = oracles::rng(21);
    auto p = random_normal_poly(gen, 3);
    const auto copy = p;
    p.truncate(5);
    CHECK(p.degree() == 3);
    for (int i = 0; i <= 3; ++i) CHECK((p[i] - copy[i]).norm() == 0.0);

    auto q = random_normal_poly(gen, 10);
    const auto qc = q;
    q.truncate(7);
    CHECK(q.degree() == 7);
    for (int i = 0; i <= 7; ++i) CHECK((q[i] - qc[i]).norm() == 0.0);

    CHECK_THROWS_AS(q.truncate(-1), std::invalid_argument);
}

TEST_CASE("cheb truncation error is bounded by the dropped coefficient mass")
{
    auto gen = oracles::rng(33);
    const auto p = random_cheb_poly(gen, 12, 1.0);
    auto t = p;
    t.truncate(6);
    double dropped = 0.0;
    for (int i = 7; i <= p.degree(); ++i) dropped += p[i].norm();
    for (int k = 0; k <= 64; ++k) {
        const double tau = -1.0 + 2.0 * k / 64.0;
        CHECK((p.eval(tau) - t.eval(tau)).norm() <= dropped * (1.0 + 1e-12));
    }
}

TEST_CASE("coeff_discrepancy")
{
    auto gen = oracles::rng(8);
    const auto p = random_normal_poly(gen, 4);
    CHECK(coeff_discrepancy(p, p) == 0.0);

    auto q = p;
    q[2] += Vec3d(3, 4, 0);
    CHECK(coeff_discrepancy(p, q) == doctest::Approx(5.0));

    // invariant under explicit trailing zeros
    auto padded = p.coeffs();
    padded.push_back(Vec3d::Zero());
    padded.push_back(Vec3d::Zero());
    const NormalPoly<double, 3> r(padded);
    CHECK(coeff_discrepancy(p, r) == 0.0);
    CHECK(coeff_discrepancy(q, r) == doctest::Approx(5.0));

    const auto c1 = random_cheb_poly(gen, 3, 2.0);
    const ChebPoly<double, 3> c2(c1.coeffs(), 3.0);
    CHECK_THROWS_AS(coeff_discrepancy(c1, c2), std::invalid_argument);
}

TEST_CASE("basis equivalence: expanding a cheb series into monomials preserves values")
{
    auto gen = oracles::rng(14);
    const auto p = random_cheb_poly(gen, 12, 1.0);
    const auto q = to_normal_basis(p);
    for (int k = 0; k <= 40; ++k) {
        const double tau = -1.0 + 2.0 * k / 40.0;
        CHECK((p.eval(tau) - q.eval(tau)).norm() < 1e-10);
    }
}

TEST_CASE("cheb_integrate matches cheb_defint pointwise")
{
    auto gen = oracles::rng(25);
    const auto p = random_cheb_poly(gen, 9, 1.0);
    const auto ip = cheb_integrate(p);
    CHECK(ip.degree() == p.degree() + 1);
    CHECK(ip.eval(-1.0).norm() < 1e-15);
    for (double tau : {-0.8, -0.2, 0.0, 0.4, 1.0}) {
        Vec3d expected = Vec3d::Zero();
        for (int i = 0; i <= p.degree(); ++i) expected += p[i] * cheb_defint(i, -1.0, tau);
        CHECK((ip.eval(tau) - expected).norm() < 1e-13);
    }
}

TEST_CASE("convolve in both bases against pointwise products")
{
    auto gen = oracles::rng(30);
    const auto dot_op = [](const Vec3d& a, const Vec3d& b) {
        return Eigen::Matrix<double, 1, 1>(a.dot(b));
    };

    const auto a = random_normal_poly(gen, 5);
    const auto b = random_normal_poly(gen, 4);
    const auto ab = convolve(a, b, dot_op);
    CHECK(ab.degree() == 9);
    for (double t : {-0.9, 0.1, 0.5, 1.0}) {
        CHECK(ab.eval(t)[0] == doctest::Approx(a.eval(t).dot(b.eval(t))).epsilon(1e-12));
    }

    const auto ca = random_cheb_poly(gen, 6, 1.0);
    const auto cb = random_cheb_poly(gen, 5, 1.0);
    const auto cab = cheb_convolve(ca, cb, dot_op);
    CHECK(cab.degree() == 11);
    for (int k = 0; k <= 50; ++k) {
        const double tau = -1.0 + 2.0 * k / 50.0;
        CHECK(cab.eval(tau)[0] ==
              doctest::Approx(ca.eval(tau).dot(cb.eval(tau))).epsilon(1e-12));
    }
}

TEST_CASE("with_time_scaled")
{
    auto gen = oracles::rng(31);
    const auto p = random_normal_poly(gen, 5);
    const auto scaled = with_time_scaled(p, 0.25);
    for (double t : {-1.0, 0.3, 2.0}) {
        CHECK((scaled.eval(t) - p.eval(0.25 * t)).norm() < 1e-14);
    }
}
