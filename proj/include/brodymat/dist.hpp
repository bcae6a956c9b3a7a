#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "brodymat/numeric.hpp"
#include "brodymat/rng.hpp"

// Law evaluations are pure and callable from any thread; samplers mutate
// only the stream they are handed.

namespace brodymat {

// Scale parameters of the three driver distributions. All strictly positive.
struct ScaleParams {
    double sigma_e = 1.0;  // exponential scale
    double sigma_g = 1.0;  // gamma(shape 2) scale
    double sigma_r = 1.0;  // Rayleigh / normal-component scale

    ScaleParams() = default;
    ScaleParams(double se, double sg, double sr) : sigma_e(se), sigma_g(sg), sigma_r(sr) {
        if (!(se > 0.0) || !(sg > 0.0) || !(sr > 0.0))
            throw std::invalid_argument("ScaleParams: scales must be strictly positive");
    }
};

// Inverse-transform kernels. Split out from the samplers so exact uniform
// inputs can be exercised directly.
inline double exponential_from_uniform(double u, double sigma_e) {
    return -sigma_e * std::log(u);
}

inline double gamma2_from_uniforms(double u1, double u2, double sigma_g) {
    return exponential_from_uniform(u1, sigma_g) + exponential_from_uniform(u2, sigma_g);
}

inline double sample_exponential(RandomStream& rng, double sigma_e) {
    return exponential_from_uniform(rng.uniform_open01(), sigma_e);
}

// Gamma with shape 2 as the sum of two independent exponentials (Erlang-2);
// exact and branch-free, no rejection step.
inline double sample_gamma2(RandomStream& rng, double sigma_g) {
    return gamma2_from_uniforms(rng.uniform_open01(), rng.uniform_open01(), sigma_g);
}

// alpha(q) = Gamma((q+2)/(q+1))^(q+1); alpha(0)=1, alpha(1)=pi/4.
inline double brody_alpha(double q) {
    return std::pow(std::tgamma((q + 2.0) / (q + 1.0)), q + 1.0);
}

// Brody-II rate constant: Gamma((2q+3)/(q+1))^(q+1); 2 at q=0, 9*pi/16 at q=1.
inline double brody2_alpha(double q) {
    return std::pow(std::tgamma((2.0 * q + 3.0) / (q + 1.0)), q + 1.0);
}

// Exact spacing laws. The mean-scaled families (Poisson, Wigner, Brody,
// semi-Poisson, Ginibre, Brody-II) all have unit mean; Weibull uses the
// exp(-w^tau/sigma) scale convention, so its mean is sigma^(1/tau)*Gamma(1+1/tau).
class SpacingLaw {
public:
    enum class Kind { Poisson, Wigner, Brody, SemiPoisson, Ginibre, BrodyII, Weibull, GeneralizedGamma };

    static SpacingLaw poisson() { return SpacingLaw(Kind::Poisson); }
    static SpacingLaw wigner() { return SpacingLaw(Kind::Wigner); }
    static SpacingLaw semi_poisson() { return SpacingLaw(Kind::SemiPoisson); }
    static SpacingLaw ginibre() { return SpacingLaw(Kind::Ginibre); }

    static SpacingLaw brody(double q) {
        require_q(q);
        SpacingLaw law(Kind::Brody);
        law.q_ = q;
        law.alpha_ = brody_alpha(q);
        return law;
    }

    static SpacingLaw brody2(double q) {
        require_q(q);
        SpacingLaw law(Kind::BrodyII);
        law.q_ = q;
        law.alpha_ = brody2_alpha(q);
        return law;
    }

    static SpacingLaw weibull(double sigma, double tau) {
        if (!(sigma > 0.0) || !(tau > 0.0))
            throw std::invalid_argument("SpacingLaw::weibull: sigma and tau must be positive");
        SpacingLaw law(Kind::Weibull);
        law.p1_ = sigma;
        law.p2_ = tau;
        return law;
    }

    static SpacingLaw generalized_gamma(double ell, double omega, double big_omega) {
        if (!(ell > 0.0) || !(omega > 0.0) || !(big_omega > 0.0))
            throw std::invalid_argument("SpacingLaw::generalized_gamma: parameters must be positive");
        SpacingLaw law(Kind::GeneralizedGamma);
        law.p1_ = ell;
        law.p2_ = omega;
        law.p3_ = big_omega;
        return law;
    }

    Kind kind() const { return kind_; }
    double q() const { return q_; }

    // Density at z >= 0. A decreasing power factor at z=0 (Weibull tau<1,
    // generalized gamma omega<1) reports +inf; consumers evaluate at z>0.
    double pdf(double z) const {
        if (z < 0.0) throw std::invalid_argument("SpacingLaw::pdf: z must be non-negative");
        switch (kind_) {
            case Kind::Poisson:
                return std::exp(-z);
            case Kind::Wigner:
                return 0.5 * kPi * z * std::exp(-0.25 * kPi * z * z);
            case Kind::Brody:
                return alpha_ * (q_ + 1.0) * std::pow(z, q_) *
                       std::exp(-alpha_ * std::pow(z, q_ + 1.0));
            case Kind::SemiPoisson:
                return 4.0 * z * std::exp(-2.0 * z);
            case Kind::Ginibre: {
                const double a = 9.0 * kPi / 16.0;
                return 2.0 * a * a * z * z * z * std::exp(-a * z * z);
            }
            case Kind::BrodyII:
                return alpha_ * alpha_ * (q_ + 1.0) * std::pow(z, 2.0 * q_ + 1.0) *
                       std::exp(-alpha_ * std::pow(z, q_ + 1.0));
            case Kind::Weibull: {
                if (z == 0.0 && p2_ < 1.0) return std::numeric_limits<double>::infinity();
                return p2_ / p1_ * std::pow(z, p2_ - 1.0) * std::exp(-std::pow(z, p2_) / p1_);
            }
            case Kind::GeneralizedGamma: {
                if (z == 0.0 && p2_ < 1.0) return std::numeric_limits<double>::infinity();
                const double norm = p3_ / (std::pow(p1_, p2_) * std::tgamma(p2_ / p3_));
                return norm * std::pow(z, p2_ - 1.0) * std::exp(-std::pow(z / p1_, p3_));
            }
        }
        return 0.0;
    }

    double cdf(double z) const {
        if (z < 0.0) throw std::invalid_argument("SpacingLaw::cdf: z must be non-negative");
        switch (kind_) {
            case Kind::Poisson:
                return -std::expm1(-z);
            case Kind::Wigner:
                return -std::expm1(-0.25 * kPi * z * z);
            case Kind::Brody:
                return -std::expm1(-alpha_ * std::pow(z, q_ + 1.0));
            case Kind::SemiPoisson:
                return 1.0 - (1.0 + 2.0 * z) * std::exp(-2.0 * z);
            case Kind::Ginibre: {
                const double t = 9.0 * kPi / 16.0 * z * z;
                return 1.0 - (1.0 + t) * std::exp(-t);
            }
            case Kind::BrodyII: {
                const double t = alpha_ * std::pow(z, q_ + 1.0);
                return 1.0 - (1.0 + t) * std::exp(-t);
            }
            case Kind::Weibull:
                return -std::expm1(-std::pow(z, p2_) / p1_);
            case Kind::GeneralizedGamma:
                return gamma_p(p2_ / p3_, std::pow(z / p1_, p3_));
        }
        return 0.0;
    }

    double mean() const {
        switch (kind_) {
            case Kind::Poisson:
            case Kind::Wigner:
            case Kind::Brody:
            case Kind::SemiPoisson:
            case Kind::Ginibre:
            case Kind::BrodyII:
                return 1.0;
            case Kind::Weibull:
                return std::pow(p1_, 1.0 / p2_) * std::tgamma(1.0 + 1.0 / p2_);
            case Kind::GeneralizedGamma:
                return p1_ * std::tgamma((p2_ + 1.0) / p3_) / std::tgamma(p2_ / p3_);
        }
        return 0.0;
    }

    std::string name() const {
        switch (kind_) {
            case Kind::Poisson: return "poisson";
            case Kind::Wigner: return "wigner";
            case Kind::Brody: return "brody";
            case Kind::SemiPoisson: return "semi-poisson";
            case Kind::Ginibre: return "ginibre";
            case Kind::BrodyII: return "brody2";
            case Kind::Weibull: return "weibull";
            case Kind::GeneralizedGamma: return "generalized-gamma";
        }
        return "?";
    }

    // Weibull/GG parameter accessors (zero for the mean-scaled families).
    double param1() const { return p1_; }
    double param2() const { return p2_; }
    double param3() const { return p3_; }

private:
    explicit SpacingLaw(Kind k) : kind_(k) {}
    static void require_q(double q) {
        if (!(q >= 0.0 && q <= 1.0))
            throw std::invalid_argument("SpacingLaw: q must lie in [0,1]");
    }

    Kind kind_;
    double q_ = 0.0;
    double alpha_ = 1.0;
    double p1_ = 0.0, p2_ = 0.0, p3_ = 0.0;
};

}  // namespace brodymat
