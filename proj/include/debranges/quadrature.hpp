#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

#include "debranges/ddouble.hpp"
#include "debranges/errors.hpp"

namespace debranges {

using LineFn = std::function<std::complex<double>(double)>;

struct QuadratureResult {
    std::complex<double> value{};
    double error_estimate = 0.0;
    double truncation_point = 0.0;
};

struct QuadratureOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-13;
    double initial_half_width = 16.0;   // first window [-T, T]
    double panel_width = 0.5;           // must resolve the fastest oscillation
    int max_doublings = 44;
    int divergence_run = 8;
};

namespace detail {

/// 16-point Gauss-Legendre nodes/weights on [-1,1], Newton on the Legendre
/// recurrence (computed once).
inline const std::array<std::array<double, 2>, 16>& gauss_legendre_16() {
    static const auto table = [] {
        std::array<std::array<double, 2>, 16> t{};
        const int n = 16;
        for (int i = 0; i < (n + 1) / 2; ++i) {
            double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
            double pp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p1 = 1.0, p2 = 0.0;
                for (int j = 0; j < n; ++j) {
                    double p3 = p2;
                    p2 = p1;
                    p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
                }
                pp = n * (z * p1 - p2) / (z * z - 1.0);
                double z1 = z;
                z = z1 - p1 / pp;
                if (std::fabs(z - z1) < 1e-15) break;
            }
            t[static_cast<size_t>(i)] = {-z, 2.0 / ((1.0 - z * z) * pp * pp)};
            t[static_cast<size_t>(n - 1 - i)] = {z, t[static_cast<size_t>(i)][1]};
        }
        return t;
    }();
    return table;
}

inline std::complex<double> gl16_panel(const LineFn& f, double a, double b) {
    const auto& t = gauss_legendre_16();
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    CompensatedComplexSum acc;
    for (const auto& nw : t) {
        std::complex<double> v = f(mid + half * nw[0]);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw EvaluationError("quadrature: non-finite integrand sample");
        acc.add(nw[1] * v);
    }
    return half * acc.value();
}

/// Integrate [a,b] with fixed-width panels; the error estimate comes from
/// comparing against the half-width pass, refined value returned.
inline std::complex<double> segment_integral(const LineFn& f, double a, double b,
                                             double panel_width, double* err) {
    auto paneled = [&](double h) {
        int n = std::max(1, static_cast<int>(std::ceil((b - a) / h)));
        CompensatedComplexSum acc;
        for (int i = 0; i < n; ++i) {
            double lo = a + (b - a) * i / n;
            double hi = a + (b - a) * (i + 1) / n;
            acc.add(gl16_panel(f, lo, hi));
        }
        return acc.value();
    };
    std::complex<double> coarse = paneled(panel_width);
    std::complex<double> fine = paneled(panel_width * 0.5);
    if (err) *err = std::abs(fine - coarse);
    return fine;
}

/// Wynn epsilon table over a partial-sum sequence.  Returns the best even
/// column entry and a difference-based error proxy.
inline std::pair<std::complex<double>, double>
wynn_epsilon(const std::vector<std::complex<double>>& s) {
    size_t n = s.size();
    if (n == 0) return {std::complex<double>{}, 0.0};
    if (n == 1) return {s[0], std::abs(s[0])};
    std::vector<std::complex<double>> e0(n, std::complex<double>{}); // column k-1
    std::vector<std::complex<double>> e1 = s;                        // column k
    std::complex<double> best = s.back();
    double best_err = std::abs(s[n - 1] - s[n - 2]);
    for (size_t col = 1; col < n; ++col) {
        std::vector<std::complex<double>> e2(n - col);
        bool bad = false;
        for (size_t i = 0; i < n - col; ++i) {
            std::complex<double> diff = e1[i + 1] - e1[i];
            if (std::abs(diff) < 1e-300) {
                bad = true;
                break;
            }
            e2[i] = e0[i + 1] + 1.0 / diff;
        }
        if (bad) break;
        if (col % 2 == 0 && e2.size() >= 2) {
            double err = std::abs(e2.back() - e2[e2.size() - 2]);
            if (err < best_err) {
                best_err = err;
                best = e2.back();
            }
        } else if (col % 2 == 0 && e2.size() == 1) {
            double err = std::abs(e2[0] - best);
            if (err < best_err) {
                best_err = err;
                best = e2[0];
            }
        }
        e0 = std::move(e1);
        e1 = std::move(e2);
    }
    return {best, best_err};
}

} // namespace detail

/// Tracks block contributions of a window-doubling sum (quadrature octaves
/// or node-index rings), extrapolates the tail with the epsilon algorithm,
/// and flags divergence when contributions stop decreasing.
class BlockAccumulator {
public:
    explicit BlockAccumulator(int divergence_run = 8)
        : divergence_run_(divergence_run) {}

    void push(std::complex<double> contribution) {
        double mag = std::abs(contribution);
        if (!partials_.empty() && mag > last_mag_ * (1.0 - 1e-3) &&
            mag > 1e-300)
            ++nondecreasing_;
        else
            nondecreasing_ = 0;
        last_mag_ = mag;
        total_ += contribution;
        partials_.push_back(total_);
    }

    bool diverging() const { return nondecreasing_ >= divergence_run_; }

    std::complex<double> raw_sum() const { return total_; }

    /// Extrapolated value and an error proxy for it.  When contributions have
    /// hit the floor the raw sum is returned with the last block as error.
    std::pair<std::complex<double>, double> extrapolated() const {
        if (partials_.size() < 3) {
            double err = partials_.empty() ? 0.0 : std::abs(total_);
            if (partials_.size() >= 2)
                err = std::abs(partials_.back() - partials_[partials_.size() - 2]);
            return {total_, err};
        }
        if (last_mag_ <= 1e-16 * std::max(1e-300, std::abs(total_)))
            return {total_, 2.0 * last_mag_};
        return detail::wynn_epsilon(partials_);
    }

    double last_block_magnitude() const { return last_mag_; }
    int blocks() const { return static_cast<int>(partials_.size()); }

private:
    std::vector<std::complex<double>> partials_;
    std::complex<double> total_{};
    double last_mag_ = 0.0;
    int nondecreasing_ = 0;
    int divergence_run_;
};

/// Integral of f over the whole real line.  The window [-T,T] doubles
/// geometrically; octave contributions feed the epsilon extrapolation, which
/// supplies the tail estimate.  Integrands whose octave contributions fail to
/// decay raise DivergenceSignal.
inline QuadratureResult integrate_weighted_line(const LineFn& f,
                                                QuadratureOptions opt = {}) {
    if (opt.rel_tol <= 0.0) throw DomainError("integrate_weighted_line: tolerance <= 0");
    double T = opt.initial_half_width;
    double quad_err = 0.0;
    BlockAccumulator blocks(opt.divergence_run);

    double err0 = 0.0;
    std::complex<double> window =
        detail::segment_integral(f, -T, T, opt.panel_width, &err0);
    quad_err += err0;
    blocks.push(window);

    std::complex<double> value = window;
    double tail_err = std::abs(window);
    std::complex<double> prev_value = value;
    int stable = 0;

    for (int k = 0; k < opt.max_doublings; ++k) {
        double errl = 0.0, errr = 0.0;
        std::complex<double> left =
            detail::segment_integral(f, -2.0 * T, -T, opt.panel_width, &errl);
        std::complex<double> right =
            detail::segment_integral(f, T, 2.0 * T, opt.panel_width, &errr);
        quad_err += errl + errr;
        T *= 2.0;
        blocks.push(left + right);

        if (blocks.diverging())
            throw DivergenceSignal(
                "integrate_weighted_line: window contributions not decreasing",
                std::abs(blocks.raw_sum()), T);

        std::tie(value, tail_err) = blocks.extrapolated();
        double target = std::max(opt.abs_tol, 0.25 * opt.rel_tol * std::abs(value));
        double step = std::abs(value - prev_value);
        prev_value = value;
        if (blocks.blocks() >= 4 && tail_err + step <= target)
            ++stable;
        else
            stable = 0;
        if (stable >= 2 || blocks.last_block_magnitude() <= 0.02 * target)
            break;
    }

    QuadratureResult res;
    res.value = value;
    res.error_estimate = quad_err + 2.0 * tail_err +
                         1e-15 * std::abs(value);
    res.truncation_point = T;
    return res;
}

} // namespace debranges
