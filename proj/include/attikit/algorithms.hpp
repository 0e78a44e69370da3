#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "attikit/attitude.hpp"
#include "attikit/baselines.hpp"
#include "attikit/coning.hpp"
#include "attikit/fit.hpp"
#include "attikit/picard_cheb.hpp"
#include "attikit/picard_np.hpp"
#include "attikit/taylor.hpp"

namespace attikit {

// Every integrator the harness can drive. Taylor variants expand the series in
// place; *FIterNp iterate over the monomial basis, *FIter over the Chebyshev
// basis; Classic2/3 are the closed-form two- and three-sample updates.
enum class AlgoId {
    QuatTaylor,
    RodTaylor,
    RotTaylor,
    RotTaylorT2,
    RotTaylorT2s,
    QuatFIterNp,
    RodFIterNp,
    RotFIterNpT2,
    RotFIterNpT3,
    QuatFIter,
    RodFIter,
    RotFIter,
    RotFIterT3,
    RotFIterT2,
    Classic2,
    Classic3,
};

inline constexpr std::array<AlgoId, 16> kAllAlgorithms = {
    AlgoId::QuatTaylor,   AlgoId::RodTaylor,    AlgoId::RotTaylor,  AlgoId::RotTaylorT2,
    AlgoId::RotTaylorT2s, AlgoId::QuatFIterNp,  AlgoId::RodFIterNp, AlgoId::RotFIterNpT2,
    AlgoId::RotFIterNpT3, AlgoId::QuatFIter,    AlgoId::RodFIter,   AlgoId::RotFIter,
    AlgoId::RotFIterT3,   AlgoId::RotFIterT2,   AlgoId::Classic2,   AlgoId::Classic3,
};

inline const char* to_string(AlgoId id)
{
    switch (id) {
        case AlgoId::QuatTaylor: return "QuatTaylor";
        case AlgoId::RodTaylor: return "RodTaylor";
        case AlgoId::RotTaylor: return "RotTaylor";
        case AlgoId::RotTaylorT2: return "RotTaylor-T2";
        case AlgoId::RotTaylorT2s: return "RotTaylor-T2s";
        case AlgoId::QuatFIterNp: return "QuatFIter-np";
        case AlgoId::RodFIterNp: return "RodFIter-np";
        case AlgoId::RotFIterNpT2: return "RotFIter-np-T2";
        case AlgoId::RotFIterNpT3: return "RotFIter-np-T3";
        case AlgoId::QuatFIter: return "QuatFIter";
        case AlgoId::RodFIter: return "RodFIter";
        case AlgoId::RotFIter: return "RotFIter";
        case AlgoId::RotFIterT3: return "RotFIter-T3";
        case AlgoId::RotFIterT2: return "RotFIter-T2";
        case AlgoId::Classic2: return "Classic2";
        case AlgoId::Classic3: return "Classic3";
    }
    return "?";
}

inline std::optional<AlgoId> parse_algo(std::string_view name)
{
    for (AlgoId id : kAllAlgorithms) {
        if (name == to_string(id)) return id;
    }
    return std::nullopt;
}

enum class AlgoFamily { Taylor, PicardNormal, PicardCheb, Classic };

inline AlgoFamily family_of(AlgoId id)
{
    switch (id) {
        case AlgoId::QuatTaylor:
        case AlgoId::RodTaylor:
        case AlgoId::RotTaylor:
        case AlgoId::RotTaylorT2:
        case AlgoId::RotTaylorT2s: return AlgoFamily::Taylor;
        case AlgoId::QuatFIterNp:
        case AlgoId::RodFIterNp:
        case AlgoId::RotFIterNpT2:
        case AlgoId::RotFIterNpT3: return AlgoFamily::PicardNormal;
        case AlgoId::QuatFIter:
        case AlgoId::RodFIter:
        case AlgoId::RotFIter:
        case AlgoId::RotFIterT3:
        case AlgoId::RotFIterT2: return AlgoFamily::PicardCheb;
        case AlgoId::Classic2:
        case AlgoId::Classic3: return AlgoFamily::Classic;
    }
    return AlgoFamily::Classic;
}

/// Sample count an algorithm insists on (0 = any).
inline int forced_sample_count(AlgoId id)
{
    if (id == AlgoId::Classic2) return 2;
    if (id == AlgoId::Classic3) return 3;
    return 0;
}

struct AlgoConfig {
    AlgoId id = AlgoId::QuatFIter;
    int truncation_degree = 0;  // m_T; ignored by the classic pair
    StopRule stop;
    int fit_degree = -1;   // -1: N - 1
    int gamma_nodes = -1;  // -1: 2 m_T + 1 (RotFIter only)
};

/// Family defaults: series and monomial iterations carry extra headroom above
/// the fit degree, the Chebyshev family needs just one order beyond it.
inline AlgoConfig default_config(AlgoId id, int samples_per_update)
{
    AlgoConfig cfg;
    cfg.id = id;
    switch (family_of(id)) {
        case AlgoFamily::Taylor:
            cfg.truncation_degree = samples_per_update + 9;
            cfg.stop = StopRule::hot(1e-15);
            break;
        case AlgoFamily::PicardNormal:
            cfg.truncation_degree = samples_per_update + 9;
            cfg.stop = StopRule::dpc(1e-14);
            break;
        case AlgoFamily::PicardCheb:
            cfg.truncation_degree = samples_per_update + 1;
            cfg.stop = StopRule::dpc(1e-14);
            break;
        case AlgoFamily::Classic:
            cfg.truncation_degree = 0;
            cfg.stop = StopRule::max_iter(0);
            break;
    }
    return cfg;
}

struct IntervalResult {
    Quatd attitude;
    int iterations = 0;
    bool converged = true;
};

namespace detail {

inline Quatd classic_increment_quat(AlgoId id, const GyroBatchd& batch)
{
    if (batch.kind != GyroKind::Increment) {
        throw std::invalid_argument("run_interval: classic algorithms consume increment batches");
    }
    const int need = forced_sample_count(id);
    if (batch.count() != need) {
        throw std::invalid_argument(std::string("run_interval: ") + to_string(id) + " needs " +
                                    std::to_string(need) + " samples per update");
    }
    const auto& s = batch.samples;
    const Vec3d sigma = (id == AlgoId::Classic2) ? classic_two_sample(s[0], s[1])
                                                 : classic_three_sample(s[0], s[1], s[2]);
    return quat_from_rotvec(sigma);
}

}  // namespace detail

/// Fits the batch, integrates one update interval with the configured
/// algorithm, and composes the incremental attitude onto q_prev.
inline IntervalResult run_interval(const GyroBatchd& batch, const AlgoConfig& cfg,
                                   const Quatd& q_prev)
{
    batch.validate();
    IntervalResult out;
    out.attitude = q_prev;

    const AlgoFamily fam = family_of(cfg.id);
    if (fam == AlgoFamily::Classic) {
        out.attitude = quat_mul(q_prev, detail::classic_increment_quat(cfg.id, batch));
        return out;
    }

    const int n = cfg.fit_degree >= 0 ? cfg.fit_degree : batch.count() - 1;
    const double t_span = batch.span();
    const Quatd q0 = quat_identity<double>();
    Quatd q_inc = q0;

    if (fam == AlgoFamily::PicardCheb) {
        const ChebPoly<double, 3> omega = (batch.kind == GyroKind::Rate)
                                              ? fit_cheb_rates(batch, n)
                                              : fit_cheb_increments(batch, n);
        switch (cfg.id) {
            case AlgoId::QuatFIter: {
                auto r = picard_cheb_quat_solve(omega, q0, cfg.truncation_degree, cfg.stop);
                out.iterations = r.iterations;
                out.converged = r.converged;
                q_inc = r.solution.eval(1.0);
                break;
            }
            case AlgoId::RodFIter: {
                auto r = picard_cheb_vec_solve(omega, VecKinematics::Rodrigues,
                                               cfg.truncation_degree, cfg.stop);
                out.iterations = r.iterations;
                out.converged = r.converged;
                q_inc = quat_from_rodrigues(r.solution.eval(1.0));
                break;
            }
            default: {
                const VecKinematics kin = (cfg.id == AlgoId::RotFIter)     ? VecKinematics::RotFull
                                          : (cfg.id == AlgoId::RotFIterT3) ? VecKinematics::RotT3
                                                                           : VecKinematics::RotT2;
                auto r = picard_cheb_vec_solve(omega, kin, cfg.truncation_degree, cfg.stop,
                                               cfg.gamma_nodes);
                out.iterations = r.iterations;
                out.converged = r.converged;
                q_inc = quat_from_rotvec(r.solution.eval(1.0));
                break;
            }
        }
    } else {
        const NormalPoly<double, 3> omega = (batch.kind == GyroKind::Rate)
                                                ? fit_normal_rates(batch, n)
                                                : fit_normal_increments(batch, n);
        switch (cfg.id) {
            // a series truncated at its order budget is still the method's
            // answer; TaylorRun::converged only records whether the
            // highest-order-term test fired early
            case AlgoId::QuatTaylor: {
                auto r = taylor_quat_solve(omega, q0, t_span, cfg.truncation_degree, cfg.stop);
                out.iterations = r.orders_used;
                q_inc = r.series.eval(t_span);
                break;
            }
            case AlgoId::RodTaylor: {
                auto r = taylor_rod_solve(omega, t_span, cfg.truncation_degree, cfg.stop);
                out.iterations = r.orders_used;
                q_inc = quat_from_rodrigues(r.series.eval(t_span));
                break;
            }
            case AlgoId::RotTaylor:
            case AlgoId::RotTaylorT2:
            case AlgoId::RotTaylorT2s: {
                const RotVariant variant = (cfg.id == AlgoId::RotTaylor)     ? RotVariant::Full
                                           : (cfg.id == AlgoId::RotTaylorT2) ? RotVariant::T2
                                                                             : RotVariant::T2s;
                auto r = taylor_rot_solve(omega, t_span, cfg.truncation_degree, variant, cfg.stop);
                out.iterations = r.orders_used;
                q_inc = quat_from_rotvec(r.series.eval(t_span));
                break;
            }
            case AlgoId::QuatFIterNp: {
                auto r = picard_np_quat_solve(omega, t_span, q0, cfg.truncation_degree, cfg.stop);
                out.iterations = r.iterations;
                out.converged = r.converged;
                q_inc = r.solution.eval(t_span);
                break;
            }
            case AlgoId::RodFIterNp: {
                auto r = picard_np_vec_solve(omega, t_span, VecKinematics::Rodrigues,
                                             cfg.truncation_degree, cfg.stop);
                out.iterations = r.iterations;
                out.converged = r.converged;
                q_inc = quat_from_rodrigues(r.solution.eval(t_span));
                break;
            }
            default: {
                const VecKinematics kin = (cfg.id == AlgoId::RotFIterNpT3) ? VecKinematics::RotT3
                                                                           : VecKinematics::RotT2;
                auto r = picard_np_vec_solve(omega, t_span, kin, cfg.truncation_degree, cfg.stop);
                out.iterations = r.iterations;
                out.converged = r.converged;
                q_inc = quat_from_rotvec(r.solution.eval(t_span));
                break;
            }
        }
    }

    out.attitude = quat_mul(q_prev, q_inc);
    return out;
}

struct DriftResult {
    double drift_rad = 0.0;
    double mean_iterations = 0.0;
    int intervals = 0;
};

/// Steps the full run interval by interval from the true initial attitude and
/// returns the principal-angle error against the analytic truth at the end.
inline DriftResult accumulate_drift(const ConingParamsd& p, const AlgoConfig& cfg,
                                    const NoiseParams& noise,
                                    GyroKind kind = GyroKind::Increment)
{
    p.validate();
    const int total = p.update_count();
    if (total < 1) throw std::invalid_argument("accumulate_drift: duration shorter than one update");
    Quatd q = coning_true_quat(p, 0.0);
    double iteration_sum = 0.0;
    for (int k = 0; k < total; ++k) {
        const double start = k * p.update_dt();
        const GyroBatchd batch = synth_batch(p, start, kind, noise);
        const IntervalResult r = run_interval(batch, cfg, q);
        if (!r.converged) {
            throw SolverFailure(std::string(to_string(cfg.id)) + ": solver did not converge at interval " +
                                std::to_string(k));
        }
        // norm factors commute out of the quaternion product, so renormalizing
        // only reins in the magnitude; the composed direction is untouched
        q = quat_normalized(r.attitude);
        iteration_sum += r.iterations;
    }
    DriftResult out;
    out.intervals = total;
    out.mean_iterations = iteration_sum / total;
    out.drift_rad = attitude_error(coning_true_quat(p, total * p.update_dt()), q);
    return out;
}

}  // namespace attikit
