#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "attikit/attitude.hpp"
#include "attikit/poly.hpp"

namespace attikit {

enum class GyroKind { Rate, Increment };

// One update interval of equally spaced gyro output. Sample k (1-based) is the
// angular rate at t = k dt, or the angular increment over [(k-1) dt, k dt].
template <typename Scalar>
struct GyroBatch {
    GyroKind kind = GyroKind::Rate;
    std::vector<Vec3<Scalar>> samples;
    Scalar dt = Scalar(0);

    int count() const { return static_cast<int>(samples.size()); }
    Scalar span() const { return dt * Scalar(count()); }

    void validate() const
    {
        if (samples.empty()) throw std::invalid_argument("GyroBatch: need at least one sample");
        if (!(dt > Scalar(0))) throw std::invalid_argument("GyroBatch: dt must be positive");
    }
};

using GyroBatchd = GyroBatch<double>;

namespace detail {

template <typename Scalar>
void check_fit_args(const GyroBatch<Scalar>& batch, GyroKind expected, int degree, const char* what)
{
    batch.validate();
    if (batch.kind != expected) {
        throw std::invalid_argument(std::string(what) + ": wrong batch kind");
    }
    if (degree < 0 || degree > batch.count() - 1) {
        throw std::invalid_argument(std::string(what) + ": fit degree " + std::to_string(degree) +
                                    " outside [0, N-1] with N = " + std::to_string(batch.count()));
    }
}

// Column-equilibrated least squares; rank loss reported rather than silently
// producing a minimum-norm fit.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 3> solve_fit(
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a,
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 3>& rhs, const char* what)
{
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> scale(a.cols());
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        const Scalar n = a.col(j).norm();
        scale[j] = n > Scalar(0) ? n : Scalar(1);
        a.col(j) /= scale[j];
    }
    Eigen::ColPivHouseholderQR<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>> qr(a);
    if (qr.rank() < a.cols()) {
        throw std::runtime_error(std::string(what) + ": rank-deficient fit system");
    }
    Eigen::Matrix<Scalar, Eigen::Dynamic, 3> x = qr.solve(rhs);
    for (Eigen::Index j = 0; j < a.cols(); ++j) x.row(j) /= scale[j];
    return x;
}

template <typename Scalar, typename PolyT>
PolyT rows_to_poly(const Eigen::Matrix<Scalar, Eigen::Dynamic, 3>& x, PolyT proto)
{
    for (int i = 0; i < x.rows(); ++i) proto[i] = x.row(i).transpose();
    return proto;
}

}  // namespace detail

/// Least-squares monomial fit through rate samples; interpolates when degree = N-1.
template <typename Scalar>
NormalPoly<Scalar, 3> fit_normal_rates(const GyroBatch<Scalar>& batch, int degree)
{
    detail::check_fit_args(batch, GyroKind::Rate, degree, "fit_normal_rates");
    const int n = batch.count();
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a(n, degree + 1);
    Eigen::Matrix<Scalar, Eigen::Dynamic, 3> rhs(n, 3);
    for (int k = 1; k <= n; ++k) {
        const Scalar tk = Scalar(k) * batch.dt;
        Scalar pw = Scalar(1);
        for (int i = 0; i <= degree; ++i) {
            a(k - 1, i) = pw;
            pw *= tk;
        }
        rhs.row(k - 1) = batch.samples[static_cast<std::size_t>(k) - 1].transpose();
    }
    const auto x = detail::solve_fit<Scalar>(a, rhs, "fit_normal_rates");
    return detail::rows_to_poly<Scalar>(x, NormalPoly<Scalar, 3>::zero(degree));
}

/// Monomial fit whose running integral over each sampling interval reproduces
/// the measured increments (in the least-squares sense below degree N-1).
template <typename Scalar>
NormalPoly<Scalar, 3> fit_normal_increments(const GyroBatch<Scalar>& batch, int degree)
{
    detail::check_fit_args(batch, GyroKind::Increment, degree, "fit_normal_increments");
    const int n = batch.count();
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a(n, degree + 1);
    Eigen::Matrix<Scalar, Eigen::Dynamic, 3> rhs(n, 3);
    for (int k = 1; k <= n; ++k) {
        const Scalar t1 = Scalar(k) * batch.dt;
        const Scalar t0 = Scalar(k - 1) * batch.dt;
        Scalar p1 = t1;
        Scalar p0 = t0;
        for (int i = 0; i <= degree; ++i) {
            a(k - 1, i) = (p1 - p0) / Scalar(i + 1);
            p1 *= t1;
            p0 *= t0;
        }
        rhs.row(k - 1) = batch.samples[static_cast<std::size_t>(k) - 1].transpose();
    }
    const auto x = detail::solve_fit<Scalar>(a, rhs, "fit_normal_increments");
    return detail::rows_to_poly<Scalar>(x, NormalPoly<Scalar, 3>::zero(degree));
}

/// Chebyshev-basis fit through rate samples over the mapped interval.
template <typename Scalar>
ChebPoly<Scalar, 3> fit_cheb_rates(const GyroBatch<Scalar>& batch, int degree)
{
    detail::check_fit_args(batch, GyroKind::Rate, degree, "fit_cheb_rates");
    const int n = batch.count();
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a(n, degree + 1);
    Eigen::Matrix<Scalar, Eigen::Dynamic, 3> rhs(n, 3);
    for (int k = 1; k <= n; ++k) {
        const Scalar tau = Scalar(2 * k) / Scalar(n) - Scalar(1);
        for (int i = 0; i <= degree; ++i) a(k - 1, i) = cheb_basis(i, tau);
        rhs.row(k - 1) = batch.samples[static_cast<std::size_t>(k) - 1].transpose();
    }
    const auto x = detail::solve_fit<Scalar>(a, rhs, "fit_cheb_rates");
    return detail::rows_to_poly<Scalar>(x, ChebPoly<Scalar, 3>::zero(degree, batch.span()));
}

/// Chebyshev-basis fit constrained by per-interval increments.
template <typename Scalar>
ChebPoly<Scalar, 3> fit_cheb_increments(const GyroBatch<Scalar>& batch, int degree)
{
    detail::check_fit_args(batch, GyroKind::Increment, degree, "fit_cheb_increments");
    const int n = batch.count();
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a(n, degree + 1);
    Eigen::Matrix<Scalar, Eigen::Dynamic, 3> rhs(n, 3);
    for (int k = 1; k <= n; ++k) {
        const Scalar tau1 = Scalar(2 * k) / Scalar(n) - Scalar(1);
        const Scalar tau0 = Scalar(2 * (k - 1)) / Scalar(n) - Scalar(1);
        for (int i = 0; i <= degree; ++i) a(k - 1, i) = cheb_defint(i, tau0, tau1);
        rhs.row(k - 1) =
            (Scalar(2) / batch.span()) * batch.samples[static_cast<std::size_t>(k) - 1].transpose();
    }
    const auto x = detail::solve_fit<Scalar>(a, rhs, "fit_cheb_increments");
    return detail::rows_to_poly<Scalar>(x, ChebPoly<Scalar, 3>::zero(degree, batch.span()));
}

}  // namespace attikit
