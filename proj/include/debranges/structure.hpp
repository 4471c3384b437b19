#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "debranges/errors.hpp"
#include "debranges/power_series.hpp"
#include "debranges/report.hpp"
#include "debranges/root_finding.hpp"
#include "debranges/special.hpp"

namespace debranges {

struct PaleyWiener {
    double tau = 1.0;
};

struct Homogeneous {
    double alpha = 0.0;
};

struct ProductZeros {
    double a = 0.0;
    std::vector<std::pair<double, double>> zeros; // (x_n, y_n), y_n > 0

    /// sum over zeros of 1/y_n + |x_n|/(x_n^2+y_n^2); bounds |E'/E| on the
    /// upper half-plane together with a.
    double log_deriv_sum() const {
        double s = 0.0;
        for (const auto& [x, y] : zeros)
            s += 1.0 / y + std::fabs(x) / (x * x + y * y);
        return s;
    }
};

/// A Hermite-Biehler structure function E = A - iB from one of the supported
/// families, rotated so that the phase is shifted by theta.
struct StructureFunction {
    std::variant<PaleyWiener, Homogeneous, ProductZeros> family;
    double theta = 0.0; // in [0, pi)

    static StructureFunction paley_wiener(double tau, double theta = 0.0) {
        if (!(tau > 0.0)) throw DomainError("paley_wiener: tau must be positive");
        return make({PaleyWiener{tau}}, theta);
    }
    static StructureFunction homogeneous(double alpha, double theta = 0.0) {
        if (!(alpha > -1.0))
            throw DomainError("homogeneous: alpha must exceed -1");
        return make({Homogeneous{alpha}}, theta);
    }
    static StructureFunction product(double a,
                                     std::vector<std::pair<double, double>> zeros,
                                     double theta = 0.0) {
        if (!(a >= 0.0)) throw DomainError("product: a must be >= 0");
        for (const auto& [x, y] : zeros)
            if (!(y > 0.0)) throw DomainError("product: zero ordinates must be positive");
        return make({ProductZeros{a, std::move(zeros)}}, theta);
    }

    std::string family_name() const {
        if (std::holds_alternative<PaleyWiener>(family)) return "paley_wiener";
        if (std::holds_alternative<Homogeneous>(family)) return "homogeneous";
        return "product";
    }

private:
    static StructureFunction make(
        std::variant<PaleyWiener, Homogeneous, ProductZeros> fam, double theta) {
        if (!(theta >= 0.0 && theta < std::numbers::pi))
            throw DomainError("structure function: theta must lie in [0, pi)");
        StructureFunction sf;
        sf.family = std::move(fam);
        sf.theta = theta;
        return sf;
    }
};

/// E, E*, A, B and their derivatives up to a requested order.
struct StructureValues {
    std::vector<Complex> E, Estar, A, B;

    int order() const { return static_cast<int>(E.size()) - 1; }
};

namespace detail {

inline Complex product_E_base(const ProductZeros& pz, Complex z) {
    Complex acc = std::exp(Complex{0.0, -pz.a} * z);
    for (const auto& [x, y] : pz.zeros) {
        Complex wbar{x, -y};
        double re_inv = x / (x * x + y * y); // Re(1/w_n)
        acc *= (1.0 - z / wbar) * std::exp(z * re_inv);
    }
    return acc;
}

inline Complex product_log_deriv(const ProductZeros& pz, Complex z) {
    Complex acc{0.0, -pz.a};
    for (const auto& [x, y] : pz.zeros) {
        Complex wbar{x, -y};
        acc += 1.0 / (z - wbar) + x / (x * x + y * y);
    }
    return acc;
}

/// Derivatives of the unrotated E for one family.  E* derivatives follow
/// from (E*)^(n)(z) = conj(E^(n)(conj z)).
inline std::vector<Complex> base_E_derivatives(const StructureFunction& sf,
                                               Complex z, int max_order) {
    std::vector<Complex> d(static_cast<size_t>(max_order) + 1);
    if (const auto* pw = std::get_if<PaleyWiener>(&sf.family)) {
        Complex e = std::exp(Complex{0.0, -pw->tau} * z);
        if (!std::isfinite(e.real()) || !std::isfinite(e.imag()))
            throw RangeError("eval_structure: overflow in exponential");
        Complex f{1.0, 0.0};
        for (int n = 0; n <= max_order; ++n) {
            d[static_cast<size_t>(n)] = f * e;
            f *= Complex{0.0, -pw->tau};
        }
        return d;
    }
    if (const auto* hg = std::get_if<Homogeneous>(&sf.family)) {
        HomogeneousValues hv = homogeneous_eval(hg->alpha, z, max_order);
        for (int n = 0; n <= max_order; ++n)
            d[static_cast<size_t>(n)] = hv.A[static_cast<size_t>(n)] -
                                        Complex{0.0, 1.0} * hv.B[static_cast<size_t>(n)];
        return d;
    }
    const auto& pz = std::get<ProductZeros>(sf.family);
    Complex E0 = product_E_base(pz, z);
    if (!std::isfinite(E0.real()) || !std::isfinite(E0.imag()))
        throw RangeError("eval_structure: overflow in product");
    d[0] = E0;
    if (max_order >= 1) d[1] = E0 * product_log_deriv(pz, z);
    if (max_order >= 2) {
        // Orders >= 2 through a Cauchy circle around z.
        PowerSeries ps = taylor_coeffs_cauchy(
            [&](Complex w) { return product_E_base(pz, w); }, z, 1.0, max_order);
        double fact = 2.0;
        for (int n = 2; n <= max_order; ++n) {
            d[static_cast<size_t>(n)] = ps.coeffs[static_cast<size_t>(n)] * fact;
            fact *= static_cast<double>(n + 1);
        }
    }
    return d;
}

} // namespace detail

inline StructureValues eval_structure(const StructureFunction& sf, Complex z,
                                      int max_order = 0) {
    if (max_order < 0) throw DomainError("eval_structure: max_order < 0");
    std::vector<Complex> dE = detail::base_E_derivatives(sf, z, max_order);
    std::vector<Complex> dEstar(dE.size());
    if (z.imag() == 0.0) {
        for (size_t n = 0; n < dE.size(); ++n) dEstar[n] = std::conj(dE[n]);
    } else {
        std::vector<Complex> at_conj =
            detail::base_E_derivatives(sf, std::conj(z), max_order);
        for (size_t n = 0; n < dE.size(); ++n) dEstar[n] = std::conj(at_conj[n]);
    }
    // Rotation: E_theta = e^{-i theta} E shifts the phase by +theta.
    Complex rot = std::exp(Complex{0.0, -sf.theta});
    StructureValues out;
    out.E.resize(dE.size());
    out.Estar.resize(dE.size());
    out.A.resize(dE.size());
    out.B.resize(dE.size());
    for (size_t n = 0; n < dE.size(); ++n) {
        out.E[n] = rot * dE[n];
        out.Estar[n] = std::conj(rot) * dEstar[n];
        out.A[n] = 0.5 * (out.E[n] + out.Estar[n]);
        out.B[n] = Complex{0.0, 0.5} * (out.E[n] - out.Estar[n]);
    }
    return out;
}

/// phi'(x) = Re{i E'(x)/E(x)} (rotation invariant).
inline double phase_derivative(const StructureFunction& sf, double x) {
    if (const auto* pw = std::get_if<PaleyWiener>(&sf.family)) return pw->tau;
    StructureValues v = eval_structure(sf, {x, 0.0}, 1);
    Complex q = Complex{0.0, 1.0} * v.E[1] / v.E[0];
    return q.real();
}

/// Family closed forms for phi'; Paley-Wiener gives tau, the product family
/// gives a + sum_n y_n/((x-x_n)^2+y_n^2), the homogeneous family
/// 1 - (2a+1) A B / (x |E|^2).
inline double phase_derivative_closed(const StructureFunction& sf, double x) {
    if (const auto* pw = std::get_if<PaleyWiener>(&sf.family)) return pw->tau;
    if (const auto* pz = std::get_if<ProductZeros>(&sf.family)) {
        double s = pz->a;
        for (const auto& [xn, yn] : pz->zeros)
            s += yn / ((x - xn) * (x - xn) + yn * yn);
        return s;
    }
    const auto& hg = std::get<Homogeneous>(sf.family);
    HomogeneousValues hv = homogeneous_eval(hg.alpha, {x, 0.0}, 1);
    double A = hv.A[0].real(), B = hv.B[0].real();
    double e2 = A * A + B * B;
    if (x == 0.0) {
        // limit of A B / x as x -> 0 is A(0) B'(0) = 1/(2a+2)
        return 1.0 - (2.0 * hg.alpha + 1.0) / (2.0 * hg.alpha + 2.0);
    }
    return 1.0 - (2.0 * hg.alpha + 1.0) * A * B / (x * e2);
}

/// Continuous unwrapped phase anchored at phi(0) = -arg E(0) (principal).
/// The tracker caches anchors along the way; each instance is independent,
/// so concurrent use means one tracker per thread.
class PhaseTracker {
public:
    explicit PhaseTracker(StructureFunction sf) : sf_(std::move(sf)) {
        anchors_[0.0] = -std::arg(eval_structure(sf_, {0.0, 0.0}).E[0]);
    }

    double phi(double x) {
        if (const auto* pw = std::get_if<PaleyWiener>(&sf_.family))
            return pw->tau * x + sf_.theta;
        auto it = anchors_.lower_bound(x);
        double ax, aphi;
        if (it == anchors_.end()) {
            ax = std::prev(it)->first;
            aphi = std::prev(it)->second;
        } else if (it->first == x) {
            return it->second;
        } else if (it == anchors_.begin()) {
            ax = it->first;
            aphi = it->second;
        } else {
            auto lo = std::prev(it);
            if (x - lo->first <= it->first - x) {
                ax = lo->first;
                aphi = lo->second;
            } else {
                ax = it->first;
                aphi = it->second;
            }
        }
        double value = aphi + unwrap(ax, x, 0);
        anchors_[x] = value;
        return value;
    }

    PhasePoint operator()(double x) {
        return {phi(x), phase_derivative(sf_, x)};
    }

    const StructureFunction& sf() const { return sf_; }

private:
    double arg_at(double x) const {
        return -std::arg(eval_structure(sf_, {x, 0.0}).E[0]);
    }

    static double principal(double d) {
        const double pi = std::numbers::pi;
        while (d > pi) d -= 2.0 * pi;
        while (d <= -pi) d += 2.0 * pi;
        return d;
    }

    /// Verified unwrapping: the principal increment over [a,b] must agree
    /// with the two half-interval increments, otherwise bisect.
    double unwrap(double a, double b, int depth) const {
        if (a == b) return 0.0;
        double direct = principal(arg_at(b) - arg_at(a));
        if (depth >= 48) return direct;
        double m = 0.5 * (a + b);
        double h1 = principal(arg_at(m) - arg_at(a));
        double h2 = principal(arg_at(b) - arg_at(m));
        if (std::fabs(direct - (h1 + h2)) <= 1e-10 &&
            std::fabs(h1) < 2.2 && std::fabs(h2) < 2.2)
            return h1 + h2;
        return unwrap(a, m, depth + 1) + unwrap(m, b, depth + 1);
    }

    StructureFunction sf_;
    std::map<double, double> anchors_;
};

/// Ordered nodes t in [lo, hi] with phi(t) = theta (mod pi); the sampling
/// grid for residue theta.
struct ZeroSet {
    StructureFunction sf;
    double theta = 0.0; // residue used
    double lo = 0.0, hi = 0.0;
    std::vector<double> nodes;
    double min_gap = 0.0;
};

inline ZeroSet node_set(const StructureFunction& sf, double theta_res,
                        double lo, double hi) {
    if (!(lo < hi)) throw DomainError("node_set: empty range");
    PhaseTracker tracker(sf);
    std::vector<double> nodes =
        find_nodes_by_phase([&](double x) { return tracker(x); }, lo, hi,
                            theta_res);
    // Node criterion: |B_res(t)| <= 1e-10 |E(t)| with
    // B_res = B cos(theta) - A sin(theta).
    double c = std::cos(theta_res), s = std::sin(theta_res);
    for (double t : nodes) {
        StructureValues v = eval_structure(sf, {t, 0.0});
        double bres = std::abs(v.B[0] * c - v.A[0] * s);
        if (bres > 1e-10 * std::abs(v.E[0]))
            throw InvalidNodeError("node_set: node fails |B_theta| tolerance");
    }
    ZeroSet zs;
    zs.sf = sf;
    zs.theta = theta_res;
    zs.lo = lo;
    zs.hi = hi;
    zs.nodes = std::move(nodes);
    zs.min_gap = 0.0;
    for (size_t i = 1; i < zs.nodes.size(); ++i) {
        double g = zs.nodes[i] - zs.nodes[i - 1];
        zs.min_gap = (zs.min_gap == 0.0) ? g : std::min(zs.min_gap, g);
    }
    return zs;
}

/// Grows a symmetric range until at least n_per_side nodes lie on each side
/// of the origin (or the range stops producing new nodes).
inline ZeroSet node_window(const StructureFunction& sf, double theta_res,
                           int n_per_side, double initial_range = 0.0) {
    double dphi0 = std::max(phase_derivative(sf, 0.0), 1e-8);
    double range = initial_range > 0.0
                       ? initial_range
                       : 1.3 * std::numbers::pi * (n_per_side + 1) / dphi0;
    ZeroSet zs;
    size_t prev_count = 0;
    for (int pass = 0; pass < 24; ++pass) {
        zs = node_set(sf, theta_res, -range, range);
        size_t neg = 0, pos = 0;
        for (double t : zs.nodes) (t < 0.0 ? neg : pos)++;
        if (static_cast<int>(neg) >= n_per_side &&
            static_cast<int>(pos) >= n_per_side)
            return zs;
        if (zs.nodes.size() == prev_count && pass > 3) return zs; // exhausted
        prev_count = zs.nodes.size();
        range *= 2.0;
    }
    return zs;
}

/// Hermite-Biehler validity: max |E*(z)/E(z)| over an upper-half-plane grid
/// (must stay below 1) plus the observed sup of |E'/E| there.
inline DiagnosticReport hb_validate(const StructureFunction& sf,
                                    const std::vector<Complex>& samples) {
    double max_ratio = 0.0;
    double sup_logderiv = 0.0;
    for (Complex z : samples) {
        if (!(z.imag() > 0.0))
            throw DomainError("hb_validate: samples must lie in the upper half-plane");
        StructureValues v = eval_structure(sf, z, 1);
        max_ratio = std::max(max_ratio, std::abs(v.Estar[0]) / std::abs(v.E[0]));
        sup_logderiv = std::max(sup_logderiv, std::abs(v.E[1] / v.E[0]));
    }
    DiagnosticReport rep;
    rep.name = "hb_validate";
    rep.measured["max_abs_Estar_over_E"] = max_ratio;
    rep.measured["sup_abs_logderiv"] = sup_logderiv;
    rep.bound["max_abs_Estar_over_E"] = 1.0;
    rep.tolerances["strict"] = 0.0;
    rep.pass = max_ratio < 1.0;
    rep.context["family"] = sf.family_name();
    if (const auto* pz = std::get_if<ProductZeros>(&sf.family)) {
        double closed = pz->a + pz->log_deriv_sum();
        rep.bound["sup_abs_logderiv"] = closed;
        rep.pass = rep.pass && sup_logderiv <= closed * (1.0 + 1e-10);
    }
    return rep;
}

/// Exponential-type scale of the family; callers size quadrature panels and
/// node scans from it.
inline double type_scale(const StructureFunction& sf) {
    if (const auto* pw = std::get_if<PaleyWiener>(&sf.family)) return pw->tau;
    if (std::holds_alternative<Homogeneous>(sf.family)) return 1.0;
    const auto& pz = std::get<ProductZeros>(sf.family);
    return std::max(1.0, pz.a);
}

} // namespace debranges
