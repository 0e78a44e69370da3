#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "attikit/attitude.hpp"
#include "attikit/poly.hpp"
#include "attikit/solve_types.hpp"

namespace attikit {

// Raw time derivatives at t = 0, index j holding the j-th derivative (no
// factorial scaling); scaling by 1/j! happens once at series assembly.
template <typename Scalar, int Dim>
struct DerivTable {
    std::vector<Eigen::Matrix<Scalar, Dim, 1>> values;
};

namespace detail {

template <typename Scalar>
std::vector<std::vector<Scalar>> binomial_rows(int max_n)
{
    std::vector<std::vector<Scalar>> rows(static_cast<std::size_t>(max_n) + 1);
    for (int n = 0; n <= max_n; ++n) {
        rows[n].assign(static_cast<std::size_t>(n) + 1, Scalar(1));
        for (int k = 1; k < n; ++k) rows[n][k] = rows[n - 1][k - 1] + rows[n - 1][k];
    }
    return rows;
}

// omega^{(i)}(0) = i! d_i for i within the fitted degree, zero beyond.
template <typename Scalar>
std::vector<Vec3<Scalar>> omega_derivatives(const NormalPoly<Scalar, 3>& omega, int count)
{
    std::vector<Vec3<Scalar>> w(static_cast<std::size_t>(count), Vec3<Scalar>::Zero());
    Scalar fact = Scalar(1);
    for (int i = 0; i < count; ++i) {
        if (i > 0) fact *= Scalar(i);
        if (i <= omega.degree()) w[i] = fact * omega[i];
    }
    return w;
}

template <typename Scalar, int Dim>
NormalPoly<Scalar, Dim> series_from_derivatives(
    const std::vector<Eigen::Matrix<Scalar, Dim, 1>>& table)
{
    std::vector<Eigen::Matrix<Scalar, Dim, 1>> coeffs(table.size());
    Scalar fact = Scalar(1);
    for (std::size_t j = 0; j < table.size(); ++j) {
        if (j > 0) fact *= Scalar(j);
        coeffs[j] = table[j] / fact;
    }
    return NormalPoly<Scalar, Dim>(std::move(coeffs));
}

}  // namespace detail

/// Quaternion derivative table for q' = q∘ω/2 via the Leibniz recursion
/// q^{(j)} = (1/2) Σ_i C(j-1,i) q^{(j-1-i)} ∘ ω^{(i)}.
template <typename Scalar>
DerivTable<Scalar, 4> taylor_quat_derivatives(const NormalPoly<Scalar, 3>& omega,
                                              const Quat<Scalar>& q0, int order)
{
    if (order < 0) throw std::invalid_argument("taylor_quat: order must be >= 0");
    const auto binom = detail::binomial_rows<Scalar>(std::max(order - 1, 0));
    const auto w = detail::omega_derivatives(omega, std::max(order, 1));
    DerivTable<Scalar, 4> table;
    table.values.resize(static_cast<std::size_t>(order) + 1, Quat<Scalar>::Zero());
    table.values[0] = q0;
    for (int j = 1; j <= order; ++j) {
        Quat<Scalar> acc = Quat<Scalar>::Zero();
        const int top = std::min(j - 1, omega.degree());
        for (int i = 0; i <= top; ++i) {
            acc += binom[j - 1][i] * quat_mul(table.values[j - 1 - i], quat_pure(w[i]));
        }
        table.values[j] = acc / Scalar(2);
    }
    return table;
}

template <typename Scalar>
NormalPoly<Scalar, 4> taylor_quat(const NormalPoly<Scalar, 3>& omega, const Quat<Scalar>& q0,
                                  int order)
{
    return detail::series_from_derivatives(taylor_quat_derivatives(omega, q0, order).values);
}

/// Rodrigues-vector series for the incremental update g(0) = 0.
template <typename Scalar>
NormalPoly<Scalar, 3> taylor_rod(const NormalPoly<Scalar, 3>& omega, int order)
{
    if (order < 0) throw std::invalid_argument("taylor_rod: order must be >= 0");
    const auto binom = detail::binomial_rows<Scalar>(std::max(order - 1, 0));
    const auto w = detail::omega_derivatives(omega, std::max(order, 1));
    std::vector<Vec3<Scalar>> g(static_cast<std::size_t>(order) + 1, Vec3<Scalar>::Zero());
    for (int j = 1; j <= order; ++j) {
        Vec3<Scalar> acc = (j - 1 < static_cast<int>(w.size())) ? w[j - 1] : Vec3<Scalar>::Zero();
        for (int i = 0; i <= std::min(j - 1, omega.degree()); ++i) {
            acc += Scalar(0.5) * binom[j - 1][i] * g[j - 1 - i].cross(w[i]);
        }
        for (int i = 0; i <= j - 1; ++i) {
            for (int k = 0; k <= std::min(i, omega.degree()); ++k) {
                acc += Scalar(0.25) * binom[j - 1][i] * binom[i][k] * g[j - 1 - i] *
                       g[i - k].dot(w[k]);
            }
        }
        g[j] = acc;
    }
    return detail::series_from_derivatives(g);
}

enum class RotVariant { Full, T2, T2s };

/// Gain polynomial A(|σ(t)|) as a truncated composition of the A series with
/// u(t) = σ(t)·σ(t); exact for the incremental update where σ(0) = 0.
template <typename Scalar>
NormalPoly<Scalar, 1> a_series_compose(const NormalPoly<Scalar, 3>& sigma, int order)
{
    using C1 = Eigen::Matrix<Scalar, 1, 1>;
    using P1 = NormalPoly<Scalar, 1>;
    if (order < 0) throw std::invalid_argument("a_series_compose: order must be >= 0");
    const auto a = bortz_gain_series<Scalar>();
    const auto dot_op = [](const Vec3<Scalar>& x, const Vec3<Scalar>& y) -> C1 {
        return C1(x.dot(y));
    };
    const auto mul_op = [](const C1& x, const C1& y) -> C1 { return C1(x[0] * y[0]); };
    const P1 u = convolve(sigma, sigma, dot_op, order);
    P1 result = P1::constant(C1(a[0]));
    P1 upow = P1::constant(C1(Scalar(1)));
    for (std::size_t p = 1; p < a.size(); ++p) {
        upow = convolve(upow, u, mul_op, order);
        result += a[p] * upow;
    }
    return result;
}

/// Rotation-vector series for σ(0) = 0. Full keeps the exact double-cross
/// gain; T2 keeps only the first two rate terms; T2s further replaces σ by the
/// running integral of ω inside the cross product.
template <typename Scalar>
NormalPoly<Scalar, 3> taylor_rot(const NormalPoly<Scalar, 3>& omega, int order, RotVariant variant)
{
    if (order < 0) throw std::invalid_argument("taylor_rot: order must be >= 0");
    const auto binom = detail::binomial_rows<Scalar>(std::max(order - 1, 0));
    const auto w = detail::omega_derivatives(omega, std::max(order, 1));

    if (variant == RotVariant::T2) {
        std::vector<Vec3<Scalar>> s(static_cast<std::size_t>(order) + 1, Vec3<Scalar>::Zero());
        for (int j = 1; j <= order; ++j) {
            Vec3<Scalar> acc = (j - 1 < static_cast<int>(w.size())) ? w[j - 1] : Vec3<Scalar>::Zero();
            for (int i = 0; i <= std::min(j - 1, omega.degree()); ++i) {
                acc += Scalar(0.5) * binom[j - 1][i] * s[j - 1 - i].cross(w[i]);
            }
            s[j] = acc;
        }
        return detail::series_from_derivatives(s);
    }

    if (variant == RotVariant::T2s) {
        // the cross factor carries one fewer time derivative; index -1 means the
        // vanishing running integral of ω at t = 0
        std::vector<Vec3<Scalar>> s(static_cast<std::size_t>(order) + 1, Vec3<Scalar>::Zero());
        for (int j = 1; j <= order; ++j) {
            Vec3<Scalar> acc = (j - 1 < static_cast<int>(w.size())) ? w[j - 1] : Vec3<Scalar>::Zero();
            for (int i = 0; i <= std::min(j - 1, omega.degree()); ++i) {
                const int left = j - 2 - i;
                if (left >= 0 && left <= omega.degree()) {
                    acc += Scalar(0.5) * binom[j - 1][i] * w[left].cross(w[i]);
                }
            }
            s[j] = acc;
        }
        return detail::series_from_derivatives(s);
    }

    // Full: grow the series coefficient by coefficient; the rate coefficient at
    // degree j-1 only needs σ up to degree j-1, so each pass is exact.
    const auto cross_op = [](const Vec3<Scalar>& x, const Vec3<Scalar>& y) -> Vec3<Scalar> {
        return x.cross(y);
    };
    NormalPoly<Scalar, 3> sigma = NormalPoly<Scalar, 3>::zero(0);
    std::vector<Vec3<Scalar>> coeffs(static_cast<std::size_t>(order) + 1, Vec3<Scalar>::Zero());
    for (int j = 1; j <= order; ++j) {
        const int d = j - 1;
        Vec3<Scalar> r = omega.at(d);
        for (int k = 1; k <= std::min(d, sigma.degree()); ++k) {
            r += Scalar(0.5) * sigma[k].cross(omega.at(d - k));
        }
        const auto inner = convolve(sigma, omega, cross_op, d);
        const auto triple = convolve(sigma, inner, cross_op, d);
        const auto gain = a_series_compose(sigma, d);
        for (int p = 0; p <= std::min(d, gain.degree()); ++p) {
            r += gain[p][0] * triple.at(d - p);
        }
        coeffs[static_cast<std::size_t>(j)] = r / Scalar(j);
        sigma = NormalPoly<Scalar, 3>(std::vector<Vec3<Scalar>>(coeffs.begin(), coeffs.begin() + j + 1));
    }
    return NormalPoly<Scalar, 3>(std::move(coeffs));
}

/// True when the degree-`degree` term cannot contribute more than tol over the
/// interval: |b| t_span^degree for the monomial basis.
template <typename Scalar, int Dim>
bool hot_check(const NormalPoly<Scalar, Dim>& p, int degree, Scalar t_span, Scalar tol)
{
    return p.at(degree).norm() * std::pow(t_span, Scalar(degree)) < tol;
}

/// Chebyshev variant: |F_i| <= 1 on the interval, so the coefficient norm is
/// already the contribution bound.
template <typename Scalar, int Dim>
bool hot_check(const ChebPoly<Scalar, Dim>& p, int degree, Scalar tol)
{
    return p.at(degree).norm() < tol;
}

template <typename PolyT>
struct TaylorRun {
    PolyT series;
    int orders_used = 0;
    bool converged = true;
};

namespace detail {

// The recursions are triangular in the order, so computing the full table and
// cutting at the first negligible term matches stopping the recursion there.
template <typename Scalar, int Dim>
TaylorRun<NormalPoly<Scalar, Dim>> finish_taylor(NormalPoly<Scalar, Dim> series, Scalar t_span,
                                                 int max_order, const StopRule& stop)
{
    TaylorRun<NormalPoly<Scalar, Dim>> run;
    if (stop.kind == StopRule::Kind::Hot) {
        for (int j = 1; j <= max_order; ++j) {
            if (hot_check(series, j, t_span, Scalar(stop.tolerance))) {
                series.truncate(j);
                run.series = std::move(series);
                run.orders_used = j;
                return run;
            }
        }
        run.series = std::move(series);
        run.orders_used = max_order;
        run.converged = false;
        return run;
    }
    if (stop.kind == StopRule::Kind::MaxIter) {
        const int j = std::min(stop.max_iterations, max_order);
        series.truncate(std::max(j, 0));
        run.series = std::move(series);
        run.orders_used = j;
        return run;
    }
    throw std::invalid_argument("taylor solve: stop rule must be hot or maxiter");
}

}  // namespace detail

template <typename Scalar>
TaylorRun<NormalPoly<Scalar, 4>> taylor_quat_solve(const NormalPoly<Scalar, 3>& omega,
                                                   const Quat<Scalar>& q0, Scalar t_span,
                                                   int max_order, const StopRule& stop)
{
    return detail::finish_taylor(taylor_quat(omega, q0, max_order), t_span, max_order, stop);
}

template <typename Scalar>
TaylorRun<NormalPoly<Scalar, 3>> taylor_rod_solve(const NormalPoly<Scalar, 3>& omega,
                                                  Scalar t_span, int max_order,
                                                  const StopRule& stop)
{
    return detail::finish_taylor(taylor_rod(omega, max_order), t_span, max_order, stop);
}

template <typename Scalar>
TaylorRun<NormalPoly<Scalar, 3>> taylor_rot_solve(const NormalPoly<Scalar, 3>& omega,
                                                  Scalar t_span, int max_order, RotVariant variant,
                                                  const StopRule& stop)
{
    return detail::finish_taylor(taylor_rot(omega, max_order, variant), t_span, max_order, stop);
}

}  // namespace attikit
