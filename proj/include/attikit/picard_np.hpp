#pragma once

#include <limits>
#include <stdexcept>
#include <utility>

#include "attikit/attitude.hpp"
#include "attikit/poly.hpp"
#include "attikit/solve_types.hpp"

namespace attikit {

// Fixed-point iterate over the monomial basis, truncated to max_degree after
// every update.
template <typename Scalar, int Dim>
struct NpIterState {
    NormalPoly<Scalar, Dim> iterate;
    int iteration = 0;
    int max_degree = 0;
    Scalar last_dpc = std::numeric_limits<Scalar>::infinity();
    int pre_truncation_degree = -1;
};

namespace detail {

template <typename Scalar, int Dim>
NpIterState<Scalar, Dim> finish_np_step(const NpIterState<Scalar, Dim>& prev,
                                        NormalPoly<Scalar, Dim> next, int expected_degree)
{
    NpIterState<Scalar, Dim> out;
    out.pre_truncation_degree = next.degree();
    if (expected_degree >= 0 && next.degree() != expected_degree) {
        throw std::logic_error("picard_np_step: unexpected order growth");
    }
    next.truncate(prev.max_degree);
    out.last_dpc = coeff_discrepancy(next, prev.iterate);
    out.iterate = std::move(next);
    out.iteration = prev.iteration + 1;
    out.max_degree = prev.max_degree;
    return out;
}

template <typename Scalar>
struct NpOps {
    static Quat<Scalar> quat_rate(const Quat<Scalar>& b, const Vec3<Scalar>& d)
    {
        return quat_mul(b, quat_pure(d));
    }
    static Vec3<Scalar> cross(const Vec3<Scalar>& x, const Vec3<Scalar>& y) { return x.cross(y); }
    static Eigen::Matrix<Scalar, 1, 1> dot(const Vec3<Scalar>& x, const Vec3<Scalar>& y)
    {
        return Eigen::Matrix<Scalar, 1, 1>(x.dot(y));
    }
    static Vec3<Scalar> stretch(const Vec3<Scalar>& x, const Eigen::Matrix<Scalar, 1, 1>& s)
    {
        return x * s[0];
    }
};

}  // namespace detail

/// One quaternion update q <- q(0) + (1/2) ∫ q∘ω dt in shared time units.
template <typename Scalar>
NpIterState<Scalar, 4> picard_np_quat_step(const NpIterState<Scalar, 4>& state,
                                           const NormalPoly<Scalar, 3>& omega,
                                           const Quat<Scalar>& q0)
{
    using O = detail::NpOps<Scalar>;
    NormalPoly<Scalar, 4> next = convolve(state.iterate, omega, O::quat_rate).antiderivative() *
                                 Scalar(0.5);
    next[0] += q0;
    return detail::finish_np_step(state, std::move(next),
                                  state.iterate.degree() + omega.degree() + 1);
}

/// One vector-parameter update; the incremental initial value is zero.
template <typename Scalar>
NpIterState<Scalar, 3> picard_np_vec_step(const NpIterState<Scalar, 3>& state,
                                          const NormalPoly<Scalar, 3>& omega, VecKinematics kin)
{
    using O = detail::NpOps<Scalar>;
    const NormalPoly<Scalar, 3>& g = state.iterate;
    NormalPoly<Scalar, 3> rate = omega;
    rate += Scalar(0.5) * convolve(g, omega, O::cross);
    int expected = g.degree() + omega.degree() + 1;
    switch (kin) {
        case VecKinematics::Rodrigues:
            rate += Scalar(0.25) * convolve(g, convolve(g, omega, O::dot), O::stretch);
            expected = 2 * g.degree() + omega.degree() + 1;
            break;
        case VecKinematics::RotT3:
            rate += (Scalar(1) / Scalar(12)) * convolve(g, convolve(g, omega, O::cross), O::cross);
            expected = 2 * g.degree() + omega.degree() + 1;
            break;
        case VecKinematics::RotT2:
            break;
        case VecKinematics::RotFull:
            throw std::invalid_argument(
                "picard_np_vec_step: the exact double-cross gain is not closed-form integrable "
                "over the monomial basis; use RotT3 or RotT2");
    }
    return detail::finish_np_step(state, rate.antiderivative(), expected);
}

namespace detail {

template <typename Scalar, int Dim, typename StepFn>
PicardResult<NormalPoly<Scalar, Dim>> run_np_solve(NpIterState<Scalar, Dim> state, Scalar t_span,
                                                   const StopRule& stop, StepFn&& step)
{
    if (stop.kind == StopRule::Kind::Hot) {
        throw std::invalid_argument("picard solve: stop rule must be dpc or maxiter");
    }
    PicardResult<NormalPoly<Scalar, Dim>> out;
    for (int j = 1; j <= stop.max_iterations; ++j) {
        state = step(state);
        if (stop.kind == StopRule::Kind::Dpc && state.last_dpc < Scalar(stop.tolerance)) {
            out.converged = true;
            break;
        }
    }
    if (stop.kind == StopRule::Kind::MaxIter) out.converged = true;
    out.iterations = state.iteration;
    out.last_dpc = static_cast<double>(state.last_dpc);
    // back to caller time units
    out.solution = with_time_scaled(state.iterate, Scalar(1) / t_span);
    return out;
}

// Iterating over unit time keeps coefficient magnitudes bounded, which makes
// the coefficient discrepancy a meaningful absolute measure; the interval
// length is folded into the rate polynomial.
template <typename Scalar>
NormalPoly<Scalar, 3> unit_time_rates(const NormalPoly<Scalar, 3>& omega, Scalar t_span)
{
    if (!(t_span > Scalar(0))) throw std::invalid_argument("picard solve: t_span must be positive");
    return with_time_scaled(omega, t_span) * t_span;
}

template <typename Scalar>
void check_np_degree(const NormalPoly<Scalar, 3>& omega, int max_degree)
{
    if (max_degree < omega.degree() + 1) {
        throw std::invalid_argument("picard solve: max_degree must be at least n + 1");
    }
}

}  // namespace detail

/// Iterates the quaternion update until the stop rule fires; omega and the
/// returned polynomial are in seconds over [0, t_span].
template <typename Scalar>
PicardResult<NormalPoly<Scalar, 4>> picard_np_quat_solve(const NormalPoly<Scalar, 3>& omega,
                                                         Scalar t_span, const Quat<Scalar>& q0,
                                                         int max_degree, const StopRule& stop)
{
    detail::check_np_degree(omega, max_degree);
    const auto w = detail::unit_time_rates(omega, t_span);
    NpIterState<Scalar, 4> state;
    state.iterate = NormalPoly<Scalar, 4>::constant(q0);
    state.max_degree = max_degree;
    return detail::run_np_solve(std::move(state), t_span, stop,
                                [&](const NpIterState<Scalar, 4>& s) {
                                    return picard_np_quat_step(s, w, q0);
                                });
}

template <typename Scalar>
PicardResult<NormalPoly<Scalar, 3>> picard_np_vec_solve(const NormalPoly<Scalar, 3>& omega,
                                                        Scalar t_span, VecKinematics kin,
                                                        int max_degree, const StopRule& stop)
{
    detail::check_np_degree(omega, max_degree);
    const auto w = detail::unit_time_rates(omega, t_span);
    NpIterState<Scalar, 3> state;
    state.iterate = NormalPoly<Scalar, 3>::zero(0);
    state.max_degree = max_degree;
    return detail::run_np_solve(std::move(state), t_span, stop,
                                [&](const NpIterState<Scalar, 3>& s) {
                                    return picard_np_vec_step(s, w, kin);
                                });
}

}  // namespace attikit
