#pragma once

#include "attikit/attitude.hpp"

namespace attikit {

/// Mainstream two-sample update: rotation vector over one interval of two
/// angular increments.
template <typename DerivedA, typename DerivedB>
Vec3<typename DerivedA::Scalar> classic_two_sample(const Eigen::MatrixBase<DerivedA>& d1_in,
                                                   const Eigen::MatrixBase<DerivedB>& d2_in)
{
    using Scalar = typename DerivedA::Scalar;
    const Vec3<Scalar> d1 = d1_in;
    const Vec3<Scalar> d2 = d2_in;
    return d1 + d2 + (Scalar(2) / Scalar(3)) * d1.cross(d2);
}

/// Mainstream three-sample update (non-coning-optimized coefficients).
template <typename DerivedA, typename DerivedB, typename DerivedC>
Vec3<typename DerivedA::Scalar> classic_three_sample(const Eigen::MatrixBase<DerivedA>& d1_in,
                                                     const Eigen::MatrixBase<DerivedB>& d2_in,
                                                     const Eigen::MatrixBase<DerivedC>& d3_in)
{
    using Scalar = typename DerivedA::Scalar;
    const Vec3<Scalar> d1 = d1_in;
    const Vec3<Scalar> d2 = d2_in;
    const Vec3<Scalar> d3 = d3_in;
    return d1 + d2 + d3 + Scalar(0.4125) * d1.cross(d3) + Scalar(0.7125) * d2.cross(d3 - d1);
}

}  // namespace attikit
