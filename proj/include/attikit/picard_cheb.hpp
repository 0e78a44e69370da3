#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

#include "attikit/attitude.hpp"
#include "attikit/poly.hpp"
#include "attikit/solve_types.hpp"

namespace attikit {

template <typename Scalar, int Dim>
struct ChebIterState {
    ChebPoly<Scalar, Dim> iterate;
    int iteration = 0;
    int max_degree = 0;
    Scalar last_dpc = std::numeric_limits<Scalar>::infinity();
    int pre_truncation_degree = -1;
};

/// Interpolation coefficients of eta on [-1, 1] from its values at the
/// node_count Chebyshev nodes; exact when eta is a polynomial of degree below
/// node_count.
template <typename Scalar, typename F>
auto gamma_coeffs(F&& eta, int max_degree, int node_count)
{
    using OutVec = std::decay_t<decltype(eta(Scalar(0)))>;
    if (max_degree < 0) throw std::invalid_argument("gamma_coeffs: max_degree must be >= 0");
    if (node_count < max_degree + 1) {
        throw std::invalid_argument("gamma_coeffs: need node_count >= max_degree + 1");
    }
    const Scalar pi = Scalar(3.14159265358979323846L);
    std::vector<OutVec> values(static_cast<std::size_t>(node_count));
    for (int s = 0; s < node_count; ++s) {
        values[s] = eta(std::cos((Scalar(s) + Scalar(0.5)) * pi / Scalar(node_count)));
    }
    std::vector<OutVec> gamma(static_cast<std::size_t>(max_degree) + 1);
    for (int k = 0; k <= max_degree; ++k) {
        OutVec acc = OutVec::Zero();
        for (int s = 0; s < node_count; ++s) {
            acc += std::cos(Scalar(k) * (Scalar(s) + Scalar(0.5)) * pi / Scalar(node_count)) *
                   values[s];
        }
        gamma[k] = acc * (k == 0 ? Scalar(1) : Scalar(2)) / Scalar(node_count);
    }
    return gamma;
}

namespace detail {

template <typename Scalar, int Dim>
ChebIterState<Scalar, Dim> finish_cheb_step(const ChebIterState<Scalar, Dim>& prev,
                                            ChebPoly<Scalar, Dim> next, int expected_degree)
{
    ChebIterState<Scalar, Dim> out;
    out.pre_truncation_degree = next.degree();
    if (expected_degree >= 0 && next.degree() != expected_degree) {
        throw std::logic_error("picard_cheb_step: unexpected order growth");
    }
    next.truncate(prev.max_degree);
    out.last_dpc = coeff_discrepancy(next, prev.iterate);
    out.iterate = std::move(next);
    out.iteration = prev.iteration + 1;
    out.max_degree = prev.max_degree;
    return out;
}

template <typename Scalar>
struct ChebOps {
    static Quat<Scalar> quat_rate(const Quat<Scalar>& b, const Vec3<Scalar>& c)
    {
        return quat_mul(b, quat_pure(c));
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

/// One quaternion update q <- q(0) + (t_span/4) ∫ q∘ω dτ.
template <typename Scalar>
ChebIterState<Scalar, 4> picard_cheb_quat_step(const ChebIterState<Scalar, 4>& state,
                                               const ChebPoly<Scalar, 3>& omega,
                                               const Quat<Scalar>& q0)
{
    using O = detail::ChebOps<Scalar>;
    ChebPoly<Scalar, 4> next = cheb_integrate(cheb_convolve(state.iterate, omega, O::quat_rate)) *
                               (omega.t_span() / Scalar(4));
    next[0] += q0;
    return detail::finish_cheb_step(state, std::move(next),
                                    state.iterate.degree() + omega.degree() + 1);
}

/// One vector-parameter update; for RotFull the double-cross term is sampled
/// at Chebyshev nodes and re-expanded with gamma_coeffs before integrating.
template <typename Scalar>
ChebIterState<Scalar, 3> picard_cheb_vec_step(const ChebIterState<Scalar, 3>& state,
                                              const ChebPoly<Scalar, 3>& omega, VecKinematics kin,
                                              int gamma_nodes = -1)
{
    using O = detail::ChebOps<Scalar>;
    const ChebPoly<Scalar, 3>& g = state.iterate;
    ChebPoly<Scalar, 3> rate = omega;
    rate += Scalar(0.5) * cheb_convolve(g, omega, O::cross);
    int expected = g.degree() + omega.degree() + 1;
    switch (kin) {
        case VecKinematics::Rodrigues:
            rate += Scalar(0.25) * cheb_convolve(g, cheb_convolve(g, omega, O::dot), O::stretch);
            expected = 2 * g.degree() + omega.degree() + 1;
            break;
        case VecKinematics::RotT3:
            rate += (Scalar(1) / Scalar(12)) *
                    cheb_convolve(g, cheb_convolve(g, omega, O::cross), O::cross);
            expected = 2 * g.degree() + omega.degree() + 1;
            break;
        case VecKinematics::RotT2:
            break;
        case VecKinematics::RotFull: {
            const int q = gamma_nodes > 0 ? gamma_nodes : 2 * state.max_degree + 1;
            const auto eta = [&](Scalar x) -> Vec3<Scalar> {
                const Vec3<Scalar> s = g.eval(x);
                const Vec3<Scalar> w = omega.eval(x);
                return bortz_gain(s.norm()) * s.cross(s.cross(w));
            };
            rate += ChebPoly<Scalar, 3>(gamma_coeffs<Scalar>(eta, state.max_degree, q),
                                        omega.t_span());
            expected = -1;  // degree set by the node interpolation, not a product law
            break;
        }
    }
    return detail::finish_cheb_step(state, cheb_integrate(rate) * (omega.t_span() / Scalar(2)),
                                    expected);
}

namespace detail {

template <typename Scalar, int Dim, typename StepFn>
PicardResult<ChebPoly<Scalar, Dim>> run_cheb_solve(ChebIterState<Scalar, Dim> state,
                                                   const StopRule& stop, StepFn&& step)
{
    if (stop.kind == StopRule::Kind::Hot) {
        throw std::invalid_argument("picard solve: stop rule must be dpc or maxiter");
    }
    PicardResult<ChebPoly<Scalar, Dim>> out;
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
    out.solution = std::move(state.iterate);
    return out;
}

template <typename Scalar>
void check_cheb_degree(const ChebPoly<Scalar, 3>& omega, int max_degree)
{
    if (max_degree < omega.degree() + 1) {
        throw std::invalid_argument("picard solve: max_degree must be at least n + 1");
    }
}

}  // namespace detail

template <typename Scalar>
PicardResult<ChebPoly<Scalar, 4>> picard_cheb_quat_solve(const ChebPoly<Scalar, 3>& omega,
                                                         const Quat<Scalar>& q0, int max_degree,
                                                         const StopRule& stop)
{
    detail::check_cheb_degree(omega, max_degree);
    ChebIterState<Scalar, 4> state;
    state.iterate = ChebPoly<Scalar, 4>::constant(q0, omega.t_span());
    state.max_degree = max_degree;
    return detail::run_cheb_solve(std::move(state), stop, [&](const ChebIterState<Scalar, 4>& s) {
        return picard_cheb_quat_step(s, omega, q0);
    });
}

template <typename Scalar>
PicardResult<ChebPoly<Scalar, 3>> picard_cheb_vec_solve(const ChebPoly<Scalar, 3>& omega,
                                                        VecKinematics kin, int max_degree,
                                                        const StopRule& stop, int gamma_nodes = -1)
{
    detail::check_cheb_degree(omega, max_degree);
    ChebIterState<Scalar, 3> state;
    state.iterate = ChebPoly<Scalar, 3>::zero(0, omega.t_span());
    state.max_degree = max_degree;
    return detail::run_cheb_solve(std::move(state), stop, [&](const ChebIterState<Scalar, 3>& s) {
        return picard_cheb_vec_step(s, omega, kin, gamma_nodes);
    });
}

}  // namespace attikit
