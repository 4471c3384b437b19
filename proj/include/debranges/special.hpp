#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "debranges/ddouble.hpp"
#include "debranges/errors.hpp"

namespace debranges {

/// Gamma for positive arguments, Lanczos g=7 approximation.
inline double gamma_fn(double x) {
    if (!(x > 0.0)) throw DomainError("gamma_fn: argument must be positive");
    static const double g[9] = {
        0.99999999999980993,      676.5203681218851,   -1259.1392167224028,
        771.32342877765313,       -176.61502916214059, 12.507343278686905,
        -0.13857109526572012,     9.9843695780195716e-6,
        1.5056327351493116e-7};
    double z = x - 1.0;
    double a = g[0];
    for (int i = 1; i < 9; ++i) a += g[i] / (z + i);
    double t = z + 7.5;
    return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, z + 0.5) *
           std::exp(-t) * a;
}

namespace detail {

constexpr double kBesselSeriesSwitch = 30.0;
constexpr double kBesselRangeMax = 1.0e6;
constexpr double kHomogeneousComplexMax = 40.0;

/// sum_k (-u)^k / (k! (alpha+1)_k) accumulated in double-double; the series
/// cancels to ~1e11 of its peak term near |x| = 30, which plain doubles
/// cannot absorb.
inline DDouble hyp0f1_dd(double alpha, DDouble u) {
    DDouble sum(1.0);
    DDouble term(1.0);
    double peak = 1.0;
    for (int k = 0; k < 400; ++k) {
        term = term * (-1.0) * u / ((k + 1.0) * (k + 1.0 + alpha));
        sum = sum + term;
        peak = std::max(peak, std::fabs(term.hi));
        if (std::fabs(term.hi) < 1e-40 * peak && k > std::sqrt(std::fabs(u.hi)))
            break;
    }
    return sum;
}

inline DComplex hyp0f1_dd(double alpha, DComplex u) {
    DComplex sum(std::complex<double>{1.0, 0.0});
    DComplex term(std::complex<double>{1.0, 0.0});
    double peak = 1.0;
    double umag = std::abs(u.value());
    for (int k = 0; k < 400; ++k) {
        term = (term * u) / (-(k + 1.0) * (k + 1.0 + alpha));
        sum = sum + term;
        double mag = std::abs(term.value());
        peak = std::max(peak, mag);
        if (mag < 1e-40 * peak && k > std::sqrt(umag)) break;
    }
    return sum;
}

/// Hankel expansion amplitudes P, Q for J_alpha at large |z|, truncated at
/// the smallest term with at least 10 terms taken.
template <class Scalar>
inline void hankel_pq(double alpha, Scalar z, Scalar* P, Scalar* Q) {
    double mu = 4.0 * alpha * alpha;
    Scalar p{}, q{};
    Scalar term{1.0}; // a_m / z^m
    double prev = 1e300;
    for (int m = 0; m < 60; ++m) {
        double mag = std::abs(term);
        if (m >= 10 && mag >= prev) break; // divergent tail reached
        double sgn = ((m / 2) % 2 == 0) ? 1.0 : -1.0;
        if (m % 2 == 0)
            p += sgn * term;
        else
            q += sgn * term;
        prev = mag;
        term *= (mu - (2.0 * m + 1.0) * (2.0 * m + 1.0)) /
                (8.0 * (m + 1.0)) / z;
        if (m >= 10 && std::abs(term) < 1e-20) break;
    }
    *P = p;
    *Q = q;
}

inline double bessel_j_asymptotic(double alpha, double x) {
    double P, Q;
    hankel_pq(alpha, x, &P, &Q);
    double omega = x - (0.5 * alpha + 0.25) * std::numbers::pi;
    return std::sqrt(2.0 / (std::numbers::pi * x)) *
           (P * std::cos(omega) - Q * std::sin(omega));
}

/// Complex continuation of the large-argument expansion; requires
/// Re z well inside the right half-plane and moderate |Im z|.
inline std::complex<double> bessel_j_asymptotic(double alpha,
                                                std::complex<double> z) {
    std::complex<double> P, Q;
    hankel_pq(alpha, z, &P, &Q);
    std::complex<double> omega = z - (0.5 * alpha + 0.25) * std::numbers::pi;
    return std::sqrt(2.0 / (std::numbers::pi * z)) *
           (P * std::cos(omega) - Q * std::sin(omega));
}

} // namespace detail

/// Bessel function of the first kind, real order alpha > -1, real argument.
inline double bessel_j(double alpha, double x) {
    if (!(alpha > -1.0)) throw DomainError("bessel_j: order must exceed -1");
    double ax = std::fabs(x);
    if (ax > detail::kBesselRangeMax)
        throw RangeError("bessel_j: |x| beyond supported range");
    if (ax <= detail::kBesselSeriesSwitch) {
        DDouble u = detail::two_prod(x, x) / 4.0;
        double s = detail::hyp0f1_dd(alpha, u).value();
        if (x == 0.0) return alpha == 0.0 ? 1.0 : 0.0;
        if (x < 0.0) {
            // (x/2)^alpha needs integer alpha for negative arguments.
            if (alpha != std::round(alpha))
                throw DomainError("bessel_j: negative x with non-integer order");
            double p = std::pow(ax / 2.0, alpha) / gamma_fn(alpha + 1.0);
            double parity = (static_cast<long>(std::round(alpha)) % 2 == 0) ? 1.0 : -1.0;
            return parity * p * s;
        }
        return std::pow(x / 2.0, alpha) / gamma_fn(alpha + 1.0) * s;
    }
    if (x < 0.0) {
        if (alpha != std::round(alpha))
            throw DomainError("bessel_j: negative x with non-integer order");
        double parity = (static_cast<long>(std::round(alpha)) % 2 == 0) ? 1.0 : -1.0;
        return parity * detail::bessel_j_asymptotic(alpha, ax);
    }
    return detail::bessel_j_asymptotic(alpha, x);
}

/// Complex argument: ascending series inside |z| <= 30, principal branch of
/// the power prefactor.  The far complex field is not supported.
inline std::complex<double> bessel_j(double alpha, std::complex<double> z) {
    if (!(alpha > -1.0)) throw DomainError("bessel_j: order must exceed -1");
    if (z.imag() == 0.0) return {bessel_j(alpha, z.real()), 0.0};
    if (std::abs(z) > detail::kBesselSeriesSwitch)
        throw RangeError("bessel_j: complex argument beyond series range");
    DComplex u(z * z / 4.0);
    std::complex<double> s = detail::hyp0f1_dd(alpha, u).value();
    std::complex<double> pref =
        std::exp(alpha * std::log(z / 2.0)) / gamma_fn(alpha + 1.0);
    return pref * s;
}

/// Values and derivatives of the homogeneous-space components
///   A_alpha(z) = Gamma(alpha+1)(z/2)^-alpha J_alpha(z),
///   B_alpha(z) = Gamma(alpha+1)(z/2)^-alpha J_{alpha+1}(z),
/// both entire (A even, B odd).
struct HomogeneousValues {
    std::vector<std::complex<double>> A; // A, A', ..., A^(max_order)
    std::vector<std::complex<double>> B;
};

namespace detail {

/// d^n (B/z) at z from derivatives of B, Leibniz against (1/z).
inline std::complex<double> dn_b_over_z(
    const std::vector<std::complex<double>>& B, int n, std::complex<double> z) {
    std::complex<double> acc{};
    double binom = 1.0;
    std::complex<double> zpow = z; // z^{n-k+1} built downward
    // compute z^{n+1} first
    std::complex<double> zp = 1.0;
    for (int i = 0; i <= n; ++i) zp *= z;
    for (int k = 0; k <= n; ++k) {
        // binom = C(n,k); factorial part (n-k)! with sign (-1)^{n-k}
        double fact = 1.0;
        for (int j = 2; j <= n - k; ++j) fact *= j;
        double sgn = ((n - k) % 2 == 0) ? 1.0 : -1.0;
        acc += binom * B[static_cast<size_t>(k)] * sgn * fact / zp;
        binom *= static_cast<double>(n - k) / (k + 1.0);
        zp /= z;
    }
    (void)zpow;
    return acc;
}

} // namespace detail

inline HomogeneousValues homogeneous_eval(double alpha, std::complex<double> z,
                                          int max_order) {
    if (!(alpha > -1.0))
        throw DomainError("homogeneous_eval: order must exceed -1");
    if (max_order < 0) throw DomainError("homogeneous_eval: max_order < 0");

    HomogeneousValues out;
    out.A.resize(static_cast<size_t>(max_order) + 1);
    out.B.resize(static_cast<size_t>(max_order) + 1);

    double az = std::abs(z);
    bool real_axis = (z.imag() == 0.0);

    if (az <= detail::kBesselSeriesSwitch ||
        (!real_axis && az <= detail::kHomogeneousComplexMax)) {
        // Taylor coefficients about 0 in double-double:
        //   A = sum_k a_k z^{2k},  B = sum_k b_k z^{2k+1},
        //   a_k = (-1/4)^k / (k! (alpha+1)_k),  b_k = a_k / (2 (alpha+1+k)).
        int terms = 16 + static_cast<int>(1.6 * az) + max_order;
        std::vector<DDouble> a(static_cast<size_t>(terms));
        a[0] = DDouble(1.0);
        for (int k = 1; k < terms; ++k)
            a[static_cast<size_t>(k)] = a[static_cast<size_t>(k - 1)] *
                                        (-0.25) /
                                        (static_cast<double>(k) * (alpha + k));
        DComplex z2 = DComplex(z) * DComplex(z);
        auto eval_deriv = [&](int n, bool odd) {
            DComplex acc(std::complex<double>{0.0, 0.0});
            int k0 = std::max(0, (n - (odd ? 1 : 0) + 1) / 2);
            // z^{2 k0 + odd - n}, advanced by z^2 each term
            DComplex zp(std::complex<double>{1.0, 0.0});
            for (int e = 0; e < 2 * k0 + (odd ? 1 : 0) - n; ++e)
                zp = zp * DComplex(z);
            for (int k = k0; k < terms; ++k) {
                int p = 2 * k + (odd ? 1 : 0);
                double fall = 1.0;
                for (int j = 0; j < n; ++j) fall *= (p - j);
                DDouble c = odd ? a[static_cast<size_t>(k)] /
                                      (2.0 * (alpha + 1.0 + k))
                                : a[static_cast<size_t>(k)];
                acc = acc + zp * (c * fall);
                zp = zp * z2;
            }
            return acc.value();
        };
        for (int n = 0; n <= max_order; ++n) {
            out.A[static_cast<size_t>(n)] = eval_deriv(n, false);
            out.B[static_cast<size_t>(n)] = eval_deriv(n, true);
        }
        return out;
    }

    // Large argument: values of A, B from the Bessel asymptotics (A even,
    // B odd reduces to Re z > 0), derivatives from A' = -B and
    // B' = A - (2a+1) B/z applied recursively.
    std::complex<double> Aval, Bval;
    std::complex<double> zr = (z.real() < 0.0) ? -z : z;
    if (zr.real() <= detail::kBesselSeriesSwitch ||
        std::fabs(zr.imag()) > 16.0 || az > detail::kBesselRangeMax)
        throw RangeError("homogeneous_eval: argument beyond supported range");
    double pref = gamma_fn(alpha + 1.0);
    if (real_axis) {
        double s = pref * std::pow(zr.real() / 2.0, -alpha);
        Aval = s * detail::bessel_j_asymptotic(alpha, zr.real());
        Bval = s * detail::bessel_j_asymptotic(alpha + 1.0, zr.real());
    } else {
        std::complex<double> s =
            pref * std::exp(-alpha * std::log(zr / 2.0));
        Aval = s * detail::bessel_j_asymptotic(alpha, zr);
        Bval = s * detail::bessel_j_asymptotic(alpha + 1.0, zr);
    }
    if (z.real() < 0.0) Bval = -Bval; // A(z) = A(-z), B(z) = -B(-z)
    out.A[0] = Aval;
    out.B[0] = Bval;
    for (int n = 0; n < max_order; ++n) {
        out.A[static_cast<size_t>(n + 1)] = -out.B[static_cast<size_t>(n)];
        out.B[static_cast<size_t>(n + 1)] =
            out.A[static_cast<size_t>(n)] -
            (2.0 * alpha + 1.0) * detail::dn_b_over_z(out.B, n, z);
    }
    return out;
}

} // namespace debranges
