#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

#include "debranges/errors.hpp"

namespace debranges {

using Complex = std::complex<double>;
using AnalyticFn = std::function<Complex(Complex)>;

/// Finite Taylor expansion around a point: coeffs[n] multiplies (z-center)^n.
struct PowerSeries {
    Complex center{0.0, 0.0};
    std::vector<Complex> coeffs;

    PowerSeries() = default;
    PowerSeries(Complex c, std::vector<Complex> a)
        : center(c), coeffs(std::move(a)) {}

    int order() const { return static_cast<int>(coeffs.size()) - 1; }

    Complex eval(Complex z) const {
        Complex d = z - center;
        Complex acc{0.0, 0.0};
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
            acc = acc * d + *it;
        return acc;
    }
};

/// Cauchy product truncated at `order`.
inline PowerSeries multiply_series(const PowerSeries& a, const PowerSeries& b,
                                   int order) {
    std::vector<Complex> c(static_cast<size_t>(order) + 1, Complex{});
    for (int i = 0; i <= std::min(order, a.order()); ++i) {
        if (a.coeffs[i] == Complex{}) continue;
        int jmax = std::min(order - i, b.order());
        for (int j = 0; j <= jmax; ++j)
            c[static_cast<size_t>(i + j)] += a.coeffs[i] * b.coeffs[j];
    }
    return {a.center, std::move(c)};
}

inline PowerSeries pow_series(const PowerSeries& s, int n, int order) {
    PowerSeries acc{s.center, {Complex{1.0, 0.0}}};
    for (int i = 0; i < n; ++i) acc = multiply_series(acc, s, order);
    return acc;
}

/// Reciprocal series: a with sum_{j<=l} a_j b_{l-j} = delta_{l0}.
inline PowerSeries invert_power_series(const PowerSeries& b, int order) {
    if (b.coeffs.empty() || b.coeffs[0] == Complex{})
        throw SingularSeriesError("invert_power_series: constant term is zero");
    if (order > b.order())
        throw DomainError("invert_power_series: order exceeds input order");
    std::vector<Complex> a(static_cast<size_t>(order) + 1);
    a[0] = 1.0 / b.coeffs[0];
    for (int l = 1; l <= order; ++l) {
        Complex acc{};
        for (int j = 1; j <= l; ++j)
            acc += b.coeffs[static_cast<size_t>(j)] * a[static_cast<size_t>(l - j)];
        a[static_cast<size_t>(l)] = -acc / b.coeffs[0];
    }
    return {b.center, std::move(a)};
}

/// Divide by (z-center)^k; the first k coefficients must vanish (they are
/// dropped, the caller has already checked them against its own tolerance).
inline PowerSeries shift_down(const PowerSeries& s, int k) {
    if (s.order() < k)
        throw DomainError("shift_down: series too short");
    std::vector<Complex> c(s.coeffs.begin() + k, s.coeffs.end());
    return {s.center, std::move(c)};
}

inline PowerSeries derivative_series(const PowerSeries& s) {
    if (s.coeffs.size() <= 1) return {s.center, {Complex{}}};
    std::vector<Complex> c(s.coeffs.size() - 1);
    for (size_t n = 1; n < s.coeffs.size(); ++n)
        c[n - 1] = s.coeffs[n] * static_cast<double>(n);
    return {s.center, std::move(c)};
}

struct TaylorOptions {
    double tolerance = 1e-12;
    int max_points = 1 << 15;
};

/// Taylor coefficients around `center` by the trapezoid rule on a circle of
/// the given radius.  The point count doubles until two successive passes
/// agree to the requested tolerance (spectral convergence for analytic f).
inline PowerSeries taylor_coeffs_cauchy(const AnalyticFn& f, Complex center,
                                        double radius, int order,
                                        TaylorOptions opt = {}) {
    if (radius <= 0.0) throw DomainError("taylor_coeffs_cauchy: radius <= 0");
    if (order < 0) throw DomainError("taylor_coeffs_cauchy: order < 0");

    auto pass = [&](int m) {
        std::vector<Complex> samples(static_cast<size_t>(m));
        for (int k = 0; k < m; ++k) {
            double ang = 2.0 * std::numbers::pi * k / m;
            Complex z = center + radius * Complex{std::cos(ang), std::sin(ang)};
            Complex v = f(z);
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw EvaluationError("taylor_coeffs_cauchy: non-finite sample");
            samples[static_cast<size_t>(k)] = v;
        }
        std::vector<Complex> c(static_cast<size_t>(order) + 1);
        for (int n = 0; n <= order; ++n) {
            CompensatedComplexSum acc;
            for (int k = 0; k < m; ++k) {
                double ang = -2.0 * std::numbers::pi * n * k / m;
                acc.add(samples[static_cast<size_t>(k)] *
                        Complex{std::cos(ang), std::sin(ang)});
            }
            c[static_cast<size_t>(n)] =
                acc.value() / (static_cast<double>(m) * std::pow(radius, n));
        }
        return c;
    };

    int m = 16;
    while (m < 4 * (order + 1)) m *= 2;
    std::vector<Complex> prev = pass(m);
    double scale = 1.0;
    for (const auto& c : prev) scale = std::max(scale, std::abs(c));
    while (m <= opt.max_points / 2) {
        m *= 2;
        std::vector<Complex> cur = pass(m);
        double diff = 0.0;
        scale = 1.0;
        for (size_t i = 0; i < cur.size(); ++i) {
            diff = std::max(diff, std::abs(cur[i] - prev[i]));
            scale = std::max(scale, std::abs(cur[i]));
        }
        if (diff <= opt.tolerance * scale)
            return {center, std::move(cur)};
        prev = std::move(cur);
    }
    throw ConvergenceError("taylor_coeffs_cauchy: tolerance not reached",
                           prev.empty() ? Complex{} : prev[0], 0.0);
}

} // namespace debranges
