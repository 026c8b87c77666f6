#pragma once

// Closed-form expressions for the smallest maximum relative error that a
// chamfer mask of half-width p can achieve against the Euclidean distance,
// under each ConstraintMode, together with the error profile of the
// restricted step family that realizes those optima and the exact feasible
// weight intervals for p = 2 and p = 3.
//
// All results are plain doubles.  Formulas involving sqrt(p^2+1) - p are
// rewritten as 1/(sqrt(p^2+1)+p) and similar so they stay accurate for
// large p (the asymptotic checks run at p = 1000).

#include <cmath>
#include <span>
#include <string>

#include "chamfer/errors.hpp"
#include "chamfer/types.hpp"

namespace chamfer {

namespace detail {

inline void check_p(int p) {
    if (p < 1) throw BadRange("p must be a positive integer, got " + std::to_string(p));
}

} // namespace detail

// Lower bound of the admissible multiplier range: c must satisfy
// p/sqrt(p^2+1) < c <= 1.
inline double c_threshold(int p) {
    detail::check_p(p);
    return p / std::hypot(double(p), 1.0);
}

namespace detail {

inline void check_c(int p, double c) {
    if (!(c > c_threshold(p)))
        throw CBelowThreshold("c = " + std::to_string(c) + " is not above p/sqrt(p^2+1)");
    if (!(c <= 1.0))
        throw BadRange("c = " + std::to_string(c) + " exceeds 1");
}

} // namespace detail

// Optimal off-axis multiplier under mode B: axis steps keep weight n while
// every other step (n,k) gets weight optimal_c(p) * sqrt(n^2+k^2).
// Equivalent algebraic form of (p*sqrt(p^2+1) + 2*sqrt(p^2+1-p*sqrt(p^2+1)) - 2) / p^2,
// written in terms of x = p*(sqrt(p^2+1)-p) to avoid cancellation.
inline double optimal_c(int p) {
    detail::check_p(p);
    const double s = std::hypot(double(p), 1.0);
    const double x = p / (s + p); // p*(sqrt(p^2+1)-p)
    return 1.0 + (x - 2.0 + 2.0 * std::sqrt(1.0 - x)) / (double(p) * double(p));
}

// Smallest m.r.error under mode B.  Defined as 1 - optimal_c(p); the
// subtraction is exact in IEEE double (both operands are near 1), so the
// identity error_b(p) == 1 - optimal_c(p) holds bit-for-bit.
inline double error_b(int p) { return 1.0 - optimal_c(p); }

// Smallest m.r.error under mode D (weights equal to Euclidean lengths):
// sqrt((sqrt(p^2+1)-p)^2 + 1) - 1.
inline double error_d(int p) {
    detail::check_p(p);
    const double d = 1.0 / (std::hypot(double(p), 1.0) + p); // sqrt(p^2+1) - p
    return d * d / (1.0 + std::sqrt(1.0 + d * d));
}

// Smallest m.r.error without any constraint:
// (Q - 1)/(Q + 1) with Q = sqrt(2p^2+2-2p*sqrt(p^2+1)).
// Using Q^2 - 1 = 1/(sqrt(p^2+1)+p)^2 this collapses to a single quotient.
inline double error_c(int p) {
    detail::check_p(p);
    const double s = std::hypot(double(p), 1.0);
    const double q = std::sqrt(2.0 * s / (s + p));
    const double sp = s + p;
    return 1.0 / (sp * sp * (q + 1.0) * (q + 1.0));
}

inline double optimal_error(int p, ConstraintMode mode) {
    switch (mode) {
        case ConstraintMode::B: return error_b(p);
        case ConstraintMode::C: return error_c(p);
        case ConstraintMode::D: return error_d(p);
    }
    throw BadRange("invalid constraint mode");
}

// m.r.error of the restricted step family with multiplier c:
// max(1-c, sqrt(1+c^2+p^2+c^2 p^2 - 2cp*sqrt(p^2+1)) - 1).
// The radicand equals (c*sqrt(p^2+1)-p)^2 + 1, which is how it is evaluated.
inline double restricted_error(int p, double c) {
    detail::check_p(p);
    detail::check_c(p, c);
    const double y = c * std::hypot(double(p), 1.0) - p;
    const double g = y * y / (1.0 + std::sqrt(1.0 + y * y)); // sqrt(y^2+1) - 1
    return std::max(1.0 - c, g);
}

// Signed relative deviation of the interpolated two-step path in sector q,
// at mixing parameter t in [0,1].
inline double mix_deviation(int p, double c, int q, double t) {
    detail::check_p(p);
    if (q < 0 || q > p) throw BadRange("sector q must lie in [0, p]");
    if (!(t >= 0.0 && t <= 1.0)) throw BadRange("t must lie in [0, 1]");
    if (q == 0)
        return (c * t * std::hypot(double(p), 1.0) + p * (1.0 - t)) /
                   std::hypot(double(p), t) - 1.0;
    const double wa = std::hypot(double(p), double(q));
    const double wb = std::hypot(double(p), double(q + 1));
    return c * (t * wb + (1.0 - t) * wa) / std::hypot(double(p), q + t) - 1.0;
}

// Interior maximizer of mix_deviation(p, c, q, .) on [0,1], for 0 <= q < p.
// For q >= 1 the peak location does not depend on c.
inline double mix_peak(int p, double c, int q) {
    detail::check_p(p);
    if (q < 0 || q >= p) throw BadRange("sector q must lie in [0, p-1]");
    detail::check_c(p, c);
    if (q == 0) return p * (c * std::hypot(double(p), 1.0) - p);
    const double a = double(p) * p + double(q) * q;   // p^2 + q^2
    const double b = a + 2.0 * q + 1.0;               // p^2 + (q+1)^2
    const double ra = std::sqrt(a);
    const double rb = std::sqrt(b);
    // sqrt(a*b) - (a+q) = p^2/(sqrt(a*b)+a+q) and
    // (q+1)*ra - q*rb = (2q+1) p^2 / ((q+1)*ra + q*rb); both rewrites are exact.
    const double num = ra * (double(p) * p) / (std::sqrt(a * b) + a + q);
    const double den = (2.0 * q + 1.0) * (double(p) * p) / ((q + 1.0) * ra + q * rb);
    return num / den;
}

// Largest |mix_deviation| over the sector:
//   q == p: only t = 0 is meaningful, giving 1 - c;
//   q == 0: max(1-c, peak value), identical to restricted_error;
//   else:   max(1-c, c*sqrt(2/(1+sqrt(1-p^2/((p^2+q^2)(p^2+(q+1)^2))))) - 1).
inline double sector_error(int p, double c, int q) {
    detail::check_p(p);
    if (q < 0 || q > p) throw BadRange("sector q must lie in [0, p]");
    detail::check_c(p, c);
    if (q == p) return 1.0 - c;
    if (q == 0) return restricted_error(p, c);
    const double a = double(p) * p + double(q) * q;
    const double b = a + 2.0 * q + 1.0;
    const double peak =
        c * std::sqrt(2.0 / (1.0 + std::sqrt(1.0 - double(p) * p / (a * b)))) - 1.0;
    return std::max(1.0 - c, peak);
}

// Exact set of off-axis weights attaining the minimal mode-B error, known in
// closed form for p = 2 and p = 3.  w1 is forced; w2 ranges over
// [w2_min, w2_max]; for p = 3, w3 ranges over [w3_min, w3_max(w2)] where the
// upper end depends on the chosen w2.
struct FeasibleRegion {
    int p = 0;
    double w1 = 0.0;
    double w2_min = 0.0;
    double w2_max = 0.0;
    double w3_min = 0.0; // p == 3 only

    double w3_max(double w2) const {
        if (p != 3) throw UnsupportedP("w3 interval exists only for p = 3");
        const double r10 = std::sqrt(10.0);
        return 3.0 * std::sqrt(13.0 * w1 * w1 - 52.0 * r10 * w1 + 520.0 - 10.0 * w2 * w2) /
                   (13.0 * r10) +
               15.0 * w2 / 13.0;
    }
};

inline FeasibleRegion feasible_region(int p) {
    if (p == 2) {
        const double r5 = std::sqrt(5.0);
        const double s = (5.0 - r5 + std::sqrt(25.0 - 10.0 * r5)) / 2.0;
        FeasibleRegion f;
        f.p = 2;
        f.w1 = s;
        f.w2_min = 2.0 * std::sqrt(2.0) / r5 * s;
        f.w2_max = 2.0 + 2.0 * s / 5.0;
        return f;
    }
    if (p == 3) {
        const double r10 = std::sqrt(10.0);
        const double r13 = std::sqrt(13.0);
        const double s = (30.0 - 2.0 * r10 + 2.0 * std::sqrt(100.0 - 30.0 * r10)) / 9.0;
        FeasibleRegion f;
        f.p = 3;
        f.w1 = s;
        f.w2_min = r13 / r10 * s;
        f.w2_max = (143.0 * s - 18.0 * r13 + 6.0 * std::sqrt(1690.0 - 143.0 * r13 * s)) / 121.0;
        f.w3_min = 3.0 * s / std::sqrt(5.0);
        return f;
    }
    throw UnsupportedP("feasible region is characterized only for p = 2 and p = 3");
}

// True iff the off-axis weights w = (w1..wp) attain the minimal mode-B error.
// Equality with the forced w1 is tested within tol; the interval memberships
// get the same tol as a guard band.
inline bool is_optimal_weights(int p, std::span<const double> w, double tol = 1e-9) {
    const FeasibleRegion f = feasible_region(p); // throws UnsupportedP
    if (int(w.size()) != p)
        throw BadRange("expected " + std::to_string(p) + " weights, got " +
                       std::to_string(w.size()));
    if (std::abs(w[0] - f.w1) > tol) return false;
    if (w[1] < f.w2_min - tol || w[1] > f.w2_max + tol) return false;
    if (p == 3) {
        if (w[2] < f.w3_min - tol || w[2] > f.w3_max(w[1]) + tol) return false;
    }
    return true;
}

} // namespace chamfer
