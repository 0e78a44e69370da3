#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <stdexcept>

namespace attikit {

template <typename Scalar>
using Vec3 = Eigen::Matrix<Scalar, 3, 1>;

// Attitude quaternion stored scalar-first: q = [s, x, y, z].
template <typename Scalar>
using Quat = Eigen::Matrix<Scalar, 4, 1>;

using Vec3d = Vec3<double>;
using Quatd = Quat<double>;

template <typename Scalar>
Quat<Scalar> quat_identity()
{
    return Quat<Scalar>(Scalar(1), Scalar(0), Scalar(0), Scalar(0));
}

/// Embeds a 3-vector as a quaternion with zero scalar part.
template <typename Derived>
Quat<typename Derived::Scalar> quat_pure(const Eigen::MatrixBase<Derived>& v)
{
    EIGEN_STATIC_ASSERT_VECTOR_SPECIFIC_SIZE(Derived, 3);
    return Quat<typename Derived::Scalar>(typename Derived::Scalar(0), v[0], v[1], v[2]);
}

template <typename Derived>
Quat<typename Derived::Scalar> quat_conjugate(const Eigen::MatrixBase<Derived>& q)
{
    EIGEN_STATIC_ASSERT_VECTOR_SPECIFIC_SIZE(Derived, 4);
    return Quat<typename Derived::Scalar>(q[0], -q[1], -q[2], -q[3]);
}

template <typename Derived>
Quat<typename Derived::Scalar> quat_normalized(const Eigen::MatrixBase<Derived>& q)
{
    EIGEN_STATIC_ASSERT_VECTOR_SPECIFIC_SIZE(Derived, 4);
    return q / q.norm();
}

/// Quaternion product a ∘ b (scalar-first convention).
template <typename DerivedA, typename DerivedB>
Quat<typename DerivedA::Scalar> quat_mul(const Eigen::MatrixBase<DerivedA>& a,
                                         const Eigen::MatrixBase<DerivedB>& b)
{
    EIGEN_STATIC_ASSERT_VECTOR_SPECIFIC_SIZE(DerivedA, 4);
    EIGEN_STATIC_ASSERT_VECTOR_SPECIFIC_SIZE(DerivedB, 4);
    using Scalar = typename DerivedA::Scalar;
    const Scalar sa = a[0];
    const Scalar sb = b[0];
    const Vec3<Scalar> va = a.template tail<3>();
    const Vec3<Scalar> vb = b.template tail<3>();
    Quat<Scalar> out;
    out[0] = sa * sb - va.dot(vb);
    out.template tail<3>() = sa * vb + sb * va + va.cross(vb);
    return out;
}

/// Unit quaternion of a rotation vector (axis times angle, rad).
template <typename Derived>
Quat<typename Derived::Scalar> quat_from_rotvec(const Eigen::MatrixBase<Derived>& sigma_in)
{
    EIGEN_STATIC_ASSERT_VECTOR_SPECIFIC_SIZE(Derived, 3);
    using Scalar = typename Derived::Scalar;
    const Vec3<Scalar> sigma = sigma_in;
    const Scalar angle = sigma.norm();
    Quat<Scalar> q;
    if (angle < Scalar(1e-8)) {
        // series limits of cos(a/2) and sin(a/2)/a; avoids 0/0 at sigma = 0
        q[0] = Scalar(1) - angle * angle / Scalar(8);
        q.template tail<3>() = sigma / Scalar(2);
    } else {
        q[0] = std::cos(angle / Scalar(2));
        q.template tail<3>() = (std::sin(angle / Scalar(2)) / angle) * sigma;
    }
    return q;
}

/// Unit quaternion of a Rodrigues vector g = 2 tan(angle/2) axis.
template <typename Derived>
Quat<typename Derived::Scalar> quat_from_rodrigues(const Eigen::MatrixBase<Derived>& g_in)
{
    EIGEN_STATIC_ASSERT_VECTOR_SPECIFIC_SIZE(Derived, 3);
    using Scalar = typename Derived::Scalar;
    const Vec3<Scalar> g = g_in;
    Quat<Scalar> q(Scalar(2), g[0], g[1], g[2]);
    return q / std::sqrt(Scalar(4) + g.squaredNorm());
}

/// Principal rotation angle between two unit attitude quaternions, in [0, 2] rad.
/// Antipodal inputs compare equal: q and -q encode the same attitude.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar attitude_error(const Eigen::MatrixBase<DerivedA>& q_true,
                                         const Eigen::MatrixBase<DerivedB>& q_est)
{
    EIGEN_STATIC_ASSERT_VECTOR_SPECIFIC_SIZE(DerivedA, 4);
    EIGEN_STATIC_ASSERT_VECTOR_SPECIFIC_SIZE(DerivedB, 4);
    using Scalar = typename DerivedA::Scalar;
    using std::abs;
    if (abs(q_true.norm() - Scalar(1)) > Scalar(1e-6) ||
        abs(q_est.norm() - Scalar(1)) > Scalar(1e-6)) {
        throw std::invalid_argument("attitude_error: inputs must be unit quaternions");
    }
    const Quat<Scalar> err = quat_mul(quat_conjugate(q_true), q_est);
    return Scalar(2) * err.template tail<3>().norm();
}

// Gain of the double-cross term in the rotation-vector rate equation,
// A(x) = (1 - (x/2) cot(x/2)) / x^2, expanded as a power series in x^2.
template <typename Scalar>
constexpr std::array<Scalar, 6> bortz_gain_series()
{
    return {Scalar(1) / Scalar(12),
            Scalar(1) / Scalar(720),
            Scalar(1) / Scalar(30240),
            Scalar(1) / Scalar(1209600),
            Scalar(1) / Scalar(47900160),
            Scalar(691) / Scalar(1307674368000)};
}

/// Pointwise A(x); series below x = 0.25 where the closed form cancels badly.
template <typename Scalar>
Scalar bortz_gain(Scalar x)
{
    using std::abs;
    if (abs(x) < Scalar(0.25)) {
        const auto a = bortz_gain_series<Scalar>();
        const Scalar u = x * x;
        Scalar acc = a[5];
        for (int i = 4; i >= 0; --i) acc = a[i] + u * acc;
        return acc;
    }
    const Scalar half = x / Scalar(2);
    return (Scalar(1) - half * std::cos(half) / std::sin(half)) / (x * x);
}

}  // namespace attikit
