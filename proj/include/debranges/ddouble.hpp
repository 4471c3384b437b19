#pragma once

#include <cmath>
#include <complex>

namespace debranges {

/// Double-double scalar: an unevaluated sum hi + lo with |lo| <= ulp(hi)/2.
/// Used where plain doubles lose too many digits to cancellation, e.g. the
/// ascending Bessel series near the series/asymptotic switch point.
struct DDouble {
    double hi = 0.0;
    double lo = 0.0;

    DDouble() = default;
    DDouble(double x) : hi(x), lo(0.0) {}
    DDouble(double h, double l) : hi(h), lo(l) {}

    double value() const { return hi + lo; }
};

namespace detail {

inline DDouble two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

inline DDouble quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}

inline DDouble two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

} // namespace detail

inline DDouble operator+(DDouble a, DDouble b) {
    DDouble s = detail::two_sum(a.hi, b.hi);
    s.lo += a.lo + b.lo;
    return detail::quick_two_sum(s.hi, s.lo);
}

inline DDouble operator-(DDouble a) { return {-a.hi, -a.lo}; }
inline DDouble operator-(DDouble a, DDouble b) { return a + (-b); }

inline DDouble operator*(DDouble a, DDouble b) {
    DDouble p = detail::two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return detail::quick_two_sum(p.hi, p.lo);
}

inline DDouble operator*(DDouble a, double b) { return a * DDouble(b); }

inline DDouble operator/(DDouble a, DDouble b) {
    double q1 = a.hi / b.hi;
    DDouble r = a - b * q1;
    double q2 = r.hi / b.hi;
    r = r - b * q2;
    double q3 = r.hi / b.hi;
    DDouble q = detail::quick_two_sum(q1, q2);
    return q + DDouble(q3);
}

inline DDouble operator/(DDouble a, double b) { return a / DDouble(b); }

inline bool dd_abs_less(DDouble a, double b) { return std::fabs(a.hi) < b; }

/// Complex value with double-double components.
struct DComplex {
    DDouble re, im;

    DComplex() = default;
    DComplex(DDouble r, DDouble i) : re(r), im(i) {}
    DComplex(std::complex<double> z) : re(z.real()), im(z.imag()) {}

    std::complex<double> value() const { return {re.value(), im.value()}; }
};

inline DComplex operator+(DComplex a, DComplex b) {
    return {a.re + b.re, a.im + b.im};
}

inline DComplex operator*(DComplex a, DComplex b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

inline DComplex operator*(DComplex a, DDouble b) {
    return {a.re * b, a.im * b};
}

inline DComplex operator/(DComplex a, double b) {
    return {a.re / b, a.im / b};
}

/// Neumaier-compensated accumulator for deterministic long sums.
struct CompensatedSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) {
        double t = sum + x;
        if (std::fabs(sum) >= std::fabs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

struct CompensatedComplexSum {
    CompensatedSum re, im;
    void add(std::complex<double> z) {
        re.add(z.real());
        im.add(z.imag());
    }
    std::complex<double> value() const { return {re.value(), im.value()}; }
};

} // namespace debranges
