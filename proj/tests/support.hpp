#pragma once

// Test-only oracles, independent of the library computation paths they check:
// adaptive quadrature for normalization/means, inverse-CDF reference samplers,
// and chi-square quantiles by bisection.

#include <cmath>
#include <functional>
#include <stdexcept>

#include "brodymat/dist.hpp"
#include "brodymat/numeric.hpp"
#include "brodymat/rng.hpp"

namespace testsupport {

// Adaptive Simpson on [a,b].
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double fa, double fm, double fb, double whole, double tol,
                               int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

// Integral of g over [0, zhi] with the substitution z = t^8, which removes
// the integrable power singularities of the spacing densities at z = 0.
inline double integrate_from_zero(const std::function<double(double)>& g, double zhi,
                                  double tol = 1e-12) {
    const double thi = std::pow(zhi, 1.0 / 8.0);
    auto transformed = [&](double t) {
        if (t == 0.0) return 0.0;
        const double t2 = t * t;
        const double t4 = t2 * t2;
        const double z = t4 * t4;
        return g(z) * 8.0 * t4 * t2 * t;  // 8 t^7
    };
    return integrate(transformed, 0.0, thi, tol);
}

// Upper integration limit with law mass 1 - cdf < tail.
inline double upper_limit(const brodymat::SpacingLaw& law, double tail) {
    double z = 1.0;
    while (law.cdf(z) < 1.0 - tail) {
        z *= 2.0;
        if (z > 1e9) throw std::runtime_error("upper_limit: tail not reached");
    }
    return z;
}

// Inverse-CDF reference samplers (independent of any library sampler).
inline double brody_quantile(double q, double u) {
    const double alpha = std::pow(std::tgamma((q + 2.0) / (q + 1.0)), q + 1.0);
    return std::pow(-std::log1p(-u) / alpha, 1.0 / (q + 1.0));
}

inline double exponential_quantile(double sigma, double u) { return -sigma * std::log1p(-u); }

// Chi-square quantile via bisection on the regularized incomplete gamma.
inline double chi_square_quantile(int dof, double p) {
    double lo = 0.0, hi = 10.0 * dof + 100.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (brodymat::gamma_p(0.5 * dof, 0.5 * mid) < p)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// Empirical two-sided KS distance against an arbitrary CDF.
inline double ks_against(std::vector<double> sample, const std::function<double(double)>& cdf) {
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double dmax = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        dmax = std::max(dmax, std::max(f - static_cast<double>(i) / n,
                                       static_cast<double>(i + 1) / n - f));
    }
    return dmax;
}

}  // namespace testsupport
