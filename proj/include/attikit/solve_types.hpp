#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace attikit {

// Iteration control shared by the series and fixed-point integrators.
// MaxIter runs a fixed count; Dpc stops on the coefficient discrepancy between
// successive iterates; Hot stops once the highest-order term stops mattering.
struct StopRule {
    enum class Kind { MaxIter, Dpc, Hot };

    Kind kind = Kind::Dpc;
    double tolerance = 1e-15;
    int max_iterations = 50;  // hard cap; the exact count for MaxIter

    static StopRule max_iter(int k) { return {Kind::MaxIter, 0.0, k}; }
    static StopRule dpc(double tol, int cap = 50) { return {Kind::Dpc, tol, cap}; }
    static StopRule hot(double tol, int cap = 50) { return {Kind::Hot, tol, cap}; }
};

inline const char* to_string(StopRule::Kind k)
{
    switch (k) {
        case StopRule::Kind::MaxIter: return "maxiter";
        case StopRule::Kind::Dpc: return "dpc";
        case StopRule::Kind::Hot: return "hot";
    }
    return "?";
}

// Which vector attitude parameter a fixed-point solve integrates.
// Rodrigues carries the outer-product term of its rate equation; RotFull keeps
// the exact double-cross gain, RotT3 freezes it at 1/12, RotT2 drops it.
enum class VecKinematics { Rodrigues, RotFull, RotT3, RotT2 };

template <typename PolyT>
struct PicardResult {
    PolyT solution;
    int iterations = 0;
    bool converged = false;
    double last_dpc = std::numeric_limits<double>::infinity();
};

class SolverFailure : public std::runtime_error {
public:
    explicit SolverFailure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace attikit
