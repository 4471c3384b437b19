#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "debranges/errors.hpp"

namespace debranges {

struct PhasePoint {
    double phi;
    double dphi;
};

/// Evaluator of an unwrapped, strictly increasing phase and its derivative.
using PhaseFn = std::function<PhasePoint(double)>;

/// All t in [lo, hi] with phi(t) = theta (mod pi), strictly increasing.
/// Bisection narrows each bracket, Newton on phi(t) - target finishes;
/// refinement stops at |phi(t) - target| <= tol.
inline std::vector<double> find_nodes_by_phase(const PhaseFn& phase, double lo,
                                               double hi, double theta,
                                               double tol = 1e-13) {
    if (!(lo < hi)) throw DomainError("find_nodes_by_phase: empty range");
    const double pi = std::numbers::pi;

    PhasePoint plo = phase(lo);
    PhasePoint phi_pt = phase(hi);
    if (plo.dphi <= 0.0 || phi_pt.dphi <= 0.0)
        throw MonotonicityError("find_nodes_by_phase: phase derivative <= 0");

    // Residue classes theta + k*pi intersecting [phi(lo), phi(hi)].
    long k_lo = static_cast<long>(std::ceil((plo.phi - theta) / pi - 1e-12));
    long k_hi = static_cast<long>(std::floor((phi_pt.phi - theta) / pi + 1e-12));

    std::vector<double> nodes;
    double bracket_lo = lo, f_bracket_lo = plo.phi;
    for (long k = k_lo; k <= k_hi; ++k) {
        double target = theta + static_cast<double>(k) * pi;
        double a = bracket_lo, fa = f_bracket_lo - target;
        double b = hi, fb = phi_pt.phi - target;
        if (fa > tol) continue;        // already past this residue
        if (fb < -tol) break;
        // Bisection until the bracket is narrow.
        while (b - a > 1e-3 * (1.0 + std::fabs(a))) {
            double m = 0.5 * (a + b);
            PhasePoint pm = phase(m);
            if (pm.dphi <= 0.0)
                throw MonotonicityError(
                    "find_nodes_by_phase: phase derivative <= 0");
            double fm = pm.phi - target;
            if (fm < 0.0) {
                a = m;
                fa = fm;
            } else {
                b = m;
                fb = fm;
            }
        }
        // Newton with bisection fallback.
        double x = 0.5 * (a + b);
        for (int it = 0; it < 100; ++it) {
            PhasePoint p = phase(x);
            double fx = p.phi - target;
            if (std::fabs(fx) <= tol) break;
            if (fx < 0.0)
                a = x;
            else
                b = x;
            double step = fx / p.dphi;
            double xn = x - step;
            if (!(xn > a && xn < b)) xn = 0.5 * (a + b);
            x = xn;
        }
        x = std::min(std::max(x, lo), hi);
        if (!nodes.empty() && x - nodes.back() <= 1e-12 * (1.0 + std::fabs(x)))
            continue;
        nodes.push_back(x);
        bracket_lo = x;
        f_bracket_lo = target;
    }
    return nodes;
}

} // namespace debranges
