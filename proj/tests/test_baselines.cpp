#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "attikit/baselines.hpp"
#include "attikit/fit.hpp"
#include "attikit/taylor.hpp"
#include "support/oracles.hpp"

using namespace attikit;

TEST_CASE("parallel increments add up without a cross correction")
{
    const Vec3d v(0.01, -0.02, 0.005);
    CHECK((classic_two_sample(v, v) - 2.0 * v).norm() == 0.0);
    CHECK((classic_three_sample(v, v, v) - 3.0 * v).norm() == 0.0);
}

TEST_CASE("two-sample cross coefficient")
{
    const double a = 0.013;
    const double b = -0.008;
    const Vec3d out = classic_two_sample(Vec3d(a, 0, 0), Vec3d(0, b, 0));
    CHECK(out[0] == doctest::Approx(a));
    CHECK(out[1] == doctest::Approx(b));
    CHECK(out[2] == doctest::Approx(2.0 * a * b / 3.0).epsilon(1e-14));
}

TEST_CASE("three-sample cross coefficients recovered from basis increments")
{
    const Vec3d e1(1, 0, 0);
    const Vec3d e2(0, 1, 0);
    // only d1 x d3 active
    Vec3d out = classic_three_sample(e1, Vec3d::Zero(), e2);
    CHECK((out - (e1 + e2 + 0.4125 * e1.cross(e2))).norm() < 1e-15);
    // only d2 x d3 active
    out = classic_three_sample(Vec3d::Zero(), e1, e2);
    CHECK((out - (e1 + e2 + 0.7125 * e1.cross(e2))).norm() < 1e-15);
    // only d2 x d1 active: d2 x (0 - d1) flips into +0.7125 d1 x d2
    out = classic_three_sample(e1, e2, Vec3d::Zero());
    CHECK((out - (e1 + e2 + 0.7125 * e1.cross(e2))).norm() < 1e-15);
}

TEST_CASE("closed baselines equal the simplified series on fitted increments")
{
    auto gen = oracles::rng(2024);
    const double T = 0.001;
    for (int trial = 0; trial < 100; ++trial) {
        const Vec3d d1 = oracles::random_vec3(gen, 0.02);
        const Vec3d d2 = oracles::random_vec3(gen, 0.02);
        const Vec3d d3 = oracles::random_vec3(gen, 0.02);

        GyroBatchd two;
        two.kind = GyroKind::Increment;
        two.dt = T;
        two.samples = {d1, d2};
        const auto series2 = taylor_rot(fit_normal_increments(two, 1), 6, RotVariant::T2s);
        const Vec3d direct2 = classic_two_sample(d1, d2);
        CHECK((series2.eval(2 * T) - direct2).norm() < 1e-13 * std::max(1.0, direct2.norm()));

        GyroBatchd three;
        three.kind = GyroKind::Increment;
        three.dt = T;
        three.samples = {d1, d2, d3};
        const auto series3 = taylor_rot(fit_normal_increments(three, 2), 8, RotVariant::T2s);
        const Vec3d direct3 = classic_three_sample(d1, d2, d3);
        CHECK((series3.eval(3 * T) - direct3).norm() < 1e-13 * std::max(1.0, direct3.norm()));
    }
}

TEST_CASE("rotating every increment rotates the output")
{
    auto gen = oracles::rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const Quatd r = oracles::random_unit_quat(gen);
        const auto rotate = [&](const Vec3d& v) -> Vec3d {
            const Quatd out = quat_mul(quat_mul(r, quat_pure(v)), quat_conjugate(r));
            return out.tail<3>();
        };
        const Vec3d d1 = oracles::random_vec3(gen, 0.05);
        const Vec3d d2 = oracles::random_vec3(gen, 0.05);
        const Vec3d d3 = oracles::random_vec3(gen, 0.05);

        const Vec3d direct2 = rotate(classic_two_sample(d1, d2));
        const Vec3d rotated2 = classic_two_sample(rotate(d1), rotate(d2));
        CHECK((direct2 - rotated2).norm() < 1e-12);

        const Vec3d direct3 = rotate(classic_three_sample(d1, d2, d3));
        const Vec3d rotated3 = classic_three_sample(rotate(d1), rotate(d2), rotate(d3));
        CHECK((direct3 - rotated3).norm() < 1e-12);
    }
}
