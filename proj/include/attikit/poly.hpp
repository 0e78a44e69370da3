#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <utility>
#include <vector>

namespace attikit {

// Vector-valued polynomial in the monomial basis: p(t) = sum_i coeffs[i] t^i.
// Trailing zero coefficients are kept; the structural degree is len - 1.
template <typename Scalar, int Dim>
class NormalPoly {
public:
    using Coeff = Eigen::Matrix<Scalar, Dim, 1>;

    NormalPoly() : coeffs_{Coeff::Zero()} {}

    explicit NormalPoly(std::vector<Coeff> coeffs) : coeffs_(std::move(coeffs))
    {
        if (coeffs_.empty()) coeffs_.push_back(Coeff::Zero());
    }

    static NormalPoly constant(const Coeff& c) { return NormalPoly(std::vector<Coeff>{c}); }

    static NormalPoly zero(int degree = 0)
    {
        return NormalPoly(std::vector<Coeff>(static_cast<std::size_t>(degree) + 1, Coeff::Zero()));
    }

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<Coeff>& coeffs() const { return coeffs_; }
    Coeff& operator[](int i) { return coeffs_[static_cast<std::size_t>(i)]; }
    const Coeff& operator[](int i) const { return coeffs_[static_cast<std::size_t>(i)]; }

    /// Coefficient at degree i, zero beyond the stored range.
    Coeff at(int i) const { return i >= 0 && i <= degree() ? (*this)[i] : Coeff::Zero(); }

    Coeff eval(Scalar t) const
    {
        Coeff acc = coeffs_.back();
        for (int i = degree() - 1; i >= 0; --i) acc = (*this)[i] + t * acc;
        return acc;
    }

    /// Antiderivative with zero constant term; degree grows by one.
    NormalPoly antiderivative() const
    {
        std::vector<Coeff> out(coeffs_.size() + 1, Coeff::Zero());
        for (int i = 0; i <= degree(); ++i) out[static_cast<std::size_t>(i) + 1] = (*this)[i] / Scalar(i + 1);
        return NormalPoly(std::move(out));
    }

    NormalPoly derivative() const
    {
        if (degree() == 0) return zero();
        std::vector<Coeff> out(coeffs_.size() - 1, Coeff::Zero());
        for (int i = 1; i <= degree(); ++i) out[static_cast<std::size_t>(i) - 1] = Scalar(i) * (*this)[i];
        return NormalPoly(std::move(out));
    }

    void truncate(int max_degree)
    {
        if (max_degree < 0) throw std::invalid_argument("truncate: max_degree must be >= 0");
        if (degree() > max_degree) coeffs_.resize(static_cast<std::size_t>(max_degree) + 1);
    }

    NormalPoly& operator+=(const NormalPoly& rhs)
    {
        if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), Coeff::Zero());
        for (int i = 0; i <= rhs.degree(); ++i) (*this)[i] += rhs[i];
        return *this;
    }

    NormalPoly& operator*=(Scalar s)
    {
        for (auto& c : coeffs_) c *= s;
        return *this;
    }

    friend NormalPoly operator+(NormalPoly lhs, const NormalPoly& rhs) { return lhs += rhs; }
    friend NormalPoly operator*(NormalPoly p, Scalar s) { return p *= s; }
    friend NormalPoly operator*(Scalar s, NormalPoly p) { return p *= s; }

private:
    std::vector<Coeff> coeffs_;
};

/// p(s t): coefficient i picks up a factor s^i.
template <typename Scalar, int Dim>
NormalPoly<Scalar, Dim> with_time_scaled(const NormalPoly<Scalar, Dim>& p, Scalar s)
{
    std::vector<typename NormalPoly<Scalar, Dim>::Coeff> out(p.coeffs());
    Scalar f = Scalar(1);
    for (int i = 1; i <= p.degree(); ++i) {
        f *= s;
        out[static_cast<std::size_t>(i)] *= f;
    }
    return NormalPoly<Scalar, Dim>(std::move(out));
}

// --- Chebyshev basis (first kind) -------------------------------------------

/// F_i(x) by the three-term recurrence.
template <typename Scalar>
Scalar cheb_basis(int i, Scalar x)
{
    if (i == 0) return Scalar(1);
    Scalar fm = Scalar(1);
    Scalar f = x;
    for (int k = 2; k <= i; ++k) {
        const Scalar fn = Scalar(2) * x * f - fm;
        fm = f;
        f = fn;
    }
    return f;
}

namespace detail {

template <typename Scalar>
void check_cheb_domain(Scalar x, const char* what)
{
    if (std::abs(x) > Scalar(1) + Scalar(1e-12)) {
        throw std::domain_error(std::string(what) + ": argument outside [-1, 1]");
    }
}

template <typename Scalar>
void check_same_span(Scalar a, Scalar b)
{
    if (std::abs(a - b) > Scalar(1e-12) * std::max(a, b)) {
        throw std::invalid_argument("ChebPoly: mismatched time spans");
    }
}

/// Antiderivative of F_i evaluated at x (integration constant arbitrary).
template <typename Scalar>
Scalar cheb_antiderivative_at(int i, Scalar x)
{
    if (i == 0) return x;
    if (i == 1) return x * x / Scalar(2);
    return cheb_basis(i + 1, x) / Scalar(2 * (i + 1)) - cheb_basis(i - 1, x) / Scalar(2 * (i - 1));
}

}  // namespace detail

/// Definite integral of F_i over [a, b] within [-1, 1].
template <typename Scalar>
Scalar cheb_defint(int i, Scalar a, Scalar b)
{
    if (i < 0) throw std::invalid_argument("cheb_defint: negative degree");
    detail::check_cheb_domain(a, "cheb_defint");
    detail::check_cheb_domain(b, "cheb_defint");
    if (a > b) throw std::invalid_argument("cheb_defint: require a <= b");
    return detail::cheb_antiderivative_at(i, b) - detail::cheb_antiderivative_at(i, a);
}

// Vector-valued Chebyshev series p(tau) = sum_i coeffs[i] F_i(tau) on tau in [-1, 1],
// with the affine time map t = (1 + tau) t_span / 2 onto the physical interval.
template <typename Scalar, int Dim>
class ChebPoly {
public:
    using Coeff = Eigen::Matrix<Scalar, Dim, 1>;

    ChebPoly() : coeffs_{Coeff::Zero()}, t_span_(Scalar(1)) {}

    ChebPoly(std::vector<Coeff> coeffs, Scalar t_span) : coeffs_(std::move(coeffs)), t_span_(t_span)
    {
        if (coeffs_.empty()) coeffs_.push_back(Coeff::Zero());
        if (!(t_span_ > Scalar(0))) throw std::invalid_argument("ChebPoly: t_span must be positive");
    }

    static ChebPoly constant(const Coeff& c, Scalar t_span)
    {
        return ChebPoly(std::vector<Coeff>{c}, t_span);
    }

    static ChebPoly zero(int degree, Scalar t_span)
    {
        return ChebPoly(std::vector<Coeff>(static_cast<std::size_t>(degree) + 1, Coeff::Zero()), t_span);
    }

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<Coeff>& coeffs() const { return coeffs_; }
    Coeff& operator[](int i) { return coeffs_[static_cast<std::size_t>(i)]; }
    const Coeff& operator[](int i) const { return coeffs_[static_cast<std::size_t>(i)]; }
    Coeff at(int i) const { return i >= 0 && i <= degree() ? (*this)[i] : Coeff::Zero(); }

    Scalar t_span() const { return t_span_; }
    Scalar tau_at_time(Scalar t) const { return Scalar(2) * t / t_span_ - Scalar(1); }
    Scalar time_at_tau(Scalar tau) const { return (Scalar(1) + tau) * t_span_ / Scalar(2); }

    /// Clenshaw evaluation at tau in [-1, 1].
    Coeff eval(Scalar tau) const
    {
        detail::check_cheb_domain(tau, "ChebPoly::eval");
        Coeff b1 = Coeff::Zero();
        Coeff b2 = Coeff::Zero();
        for (int k = degree(); k >= 1; --k) {
            const Coeff b = (*this)[k] + Scalar(2) * tau * b1 - b2;
            b2 = b1;
            b1 = b;
        }
        return (*this)[0] + tau * b1 - b2;
    }

    Coeff eval_time(Scalar t) const { return eval(tau_at_time(t)); }

    void truncate(int max_degree)
    {
        if (max_degree < 0) throw std::invalid_argument("truncate: max_degree must be >= 0");
        if (degree() > max_degree) coeffs_.resize(static_cast<std::size_t>(max_degree) + 1);
    }

    ChebPoly& operator+=(const ChebPoly& rhs)
    {
        require_same_span(rhs);
        if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), Coeff::Zero());
        for (int i = 0; i <= rhs.degree(); ++i) (*this)[i] += rhs[i];
        return *this;
    }

    ChebPoly& operator*=(Scalar s)
    {
        for (auto& c : coeffs_) c *= s;
        return *this;
    }

    friend ChebPoly operator+(ChebPoly lhs, const ChebPoly& rhs) { return lhs += rhs; }
    friend ChebPoly operator*(ChebPoly p, Scalar s) { return p *= s; }
    friend ChebPoly operator*(Scalar s, ChebPoly p) { return p *= s; }

    void require_same_span(const ChebPoly& other) const
    {
        detail::check_same_span(t_span_, other.t_span_);
    }

private:
    std::vector<Coeff> coeffs_;
    Scalar t_span_;
};

/// Running integral from tau = -1; degree grows by one.
template <typename Scalar, int Dim>
ChebPoly<Scalar, Dim> cheb_integrate(const ChebPoly<Scalar, Dim>& p)
{
    using Coeff = typename ChebPoly<Scalar, Dim>::Coeff;
    const int n = p.degree();
    std::vector<Coeff> out(static_cast<std::size_t>(n) + 2, Coeff::Zero());
    // F0 -> F1 + F0, F1 -> (F2 - F0)/4, Fi -> F_{i+1}/(2i+2) - F_{i-1}/(2i-2) - (-1)^i/(i^2-1) F0,
    // each shifted so the running integral vanishes at tau = -1.
    out[1] += p[0];
    out[0] += p[0];
    if (n >= 1) {
        out[2] += p[1] / Scalar(4);
        out[0] -= p[1] / Scalar(4);
    }
    for (int i = 2; i <= n; ++i) {
        out[static_cast<std::size_t>(i) + 1] += p[i] / Scalar(2 * (i + 1));
        out[static_cast<std::size_t>(i) - 1] -= p[i] / Scalar(2 * (i - 1));
        const Scalar v = (i % 2 == 0 ? Scalar(1) : Scalar(-1)) / Scalar(i * i - 1);
        out[0] -= v * p[i];
    }
    return ChebPoly<Scalar, Dim>(std::move(out), p.t_span());
}

/// Expansion into monomials of tau (numerically sensible for modest degrees).
template <typename Scalar, int Dim>
NormalPoly<Scalar, Dim> to_normal_basis(const ChebPoly<Scalar, Dim>& p)
{
    using Coeff = typename ChebPoly<Scalar, Dim>::Coeff;
    const int n = p.degree();
    std::vector<Coeff> out(static_cast<std::size_t>(n) + 1, Coeff::Zero());
    std::vector<Scalar> fm{Scalar(1)};  // F_0
    std::vector<Scalar> f{Scalar(0), Scalar(1)};  // F_1
    for (int i = 0; i <= n; ++i) {
        const std::vector<Scalar>& basis = (i == 0) ? fm : f;
        for (std::size_t k = 0; k < basis.size(); ++k) out[k] += basis[k] * p[i];
        if (i >= 1 && i < n) {
            std::vector<Scalar> fn(f.size() + 1, Scalar(0));
            for (std::size_t k = 0; k < f.size(); ++k) fn[k + 1] = Scalar(2) * f[k];
            for (std::size_t k = 0; k < fm.size(); ++k) fn[k] -= fm[k];
            fm = std::move(f);
            f = std::move(fn);
        }
    }
    return NormalPoly<Scalar, Dim>(std::move(out));
}

// --- coefficient-space products ----------------------------------------------

namespace detail {

template <typename Scalar, int DA, int DB, typename Op>
using ConvCoeff = std::decay_t<decltype(std::declval<Op&>()(
    std::declval<const Eigen::Matrix<Scalar, DA, 1>&>(),
    std::declval<const Eigen::Matrix<Scalar, DB, 1>&>()))>;

}  // namespace detail

/// out[k + i] += op(a[k], b[i]); optionally capped at max_degree (-1 = full).
template <typename Scalar, int DA, int DB, typename Op>
auto convolve(const NormalPoly<Scalar, DA>& a, const NormalPoly<Scalar, DB>& b, Op&& op,
              int max_degree = -1)
{
    using OutCoeff = detail::ConvCoeff<Scalar, DA, DB, Op>;
    const int full = a.degree() + b.degree();
    const int deg = (max_degree >= 0 && max_degree < full) ? max_degree : full;
    std::vector<OutCoeff> out(static_cast<std::size_t>(deg) + 1, OutCoeff::Zero());
    for (int k = 0; k <= a.degree(); ++k) {
        if (k > deg) break;
        for (int i = 0; i <= b.degree() && k + i <= deg; ++i) {
            out[static_cast<std::size_t>(k + i)] += op(a[k], b[i]);
        }
    }
    return NormalPoly<Scalar, OutCoeff::RowsAtCompileTime>(std::move(out));
}

/// Product of Chebyshev series via F_k F_i = (F_{k+i} + F_{|k-i|}) / 2.
template <typename Scalar, int DA, int DB, typename Op>
auto cheb_convolve(const ChebPoly<Scalar, DA>& a, const ChebPoly<Scalar, DB>& b, Op&& op)
{
    using OutCoeff = detail::ConvCoeff<Scalar, DA, DB, Op>;
    detail::check_same_span(a.t_span(), b.t_span());
    const int deg = a.degree() + b.degree();
    std::vector<OutCoeff> out(static_cast<std::size_t>(deg) + 1, OutCoeff::Zero());
    for (int k = 0; k <= a.degree(); ++k) {
        for (int i = 0; i <= b.degree(); ++i) {
            const OutCoeff half = op(a[k], b[i]) / Scalar(2);
            out[static_cast<std::size_t>(k + i)] += half;
            out[static_cast<std::size_t>(std::abs(k - i))] += half;
        }
    }
    return ChebPoly<Scalar, OutCoeff::RowsAtCompileTime>(std::move(out), a.t_span());
}

// --- iterate discrepancy -------------------------------------------------------

/// Euclidean norm over stacked coefficient differences; shorter list zero-padded.
template <typename Scalar, int Dim>
Scalar coeff_discrepancy(const NormalPoly<Scalar, Dim>& p, const NormalPoly<Scalar, Dim>& q)
{
    Scalar acc = Scalar(0);
    const int deg = std::max(p.degree(), q.degree());
    for (int i = 0; i <= deg; ++i) acc += (p.at(i) - q.at(i)).squaredNorm();
    return std::sqrt(acc);
}

template <typename Scalar, int Dim>
Scalar coeff_discrepancy(const ChebPoly<Scalar, Dim>& p, const ChebPoly<Scalar, Dim>& q)
{
    p.require_same_span(q);
    Scalar acc = Scalar(0);
    const int deg = std::max(p.degree(), q.degree());
    for (int i = 0; i <= deg; ++i) acc += (p.at(i) - q.at(i)).squaredNorm();
    return std::sqrt(acc);
}

}  // namespace attikit
