#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "brodymat/dist.hpp"
#include "brodymat/mat2.hpp"
#include "brodymat/rng.hpp"

// A ModelSpec is immutable once validated; build() is reentrant for callers
// holding independent random streams, so concurrent sampling works with one
// sub-stream per worker.

namespace brodymat {

// ---------------------------------------------------------------------------
// Driver distribution of the primary random variable Y.
// ---------------------------------------------------------------------------

enum class DriverKind { Exponential, Gamma2, NormalSquares };

struct DriverSpec {
    DriverKind kind = DriverKind::Exponential;
    double scale = 1.0;  // sigma_e, sigma_g, or sigma_R depending on kind
};

inline std::string driver_name(DriverKind k) {
    switch (k) {
        case DriverKind::Exponential: return "exp";
        case DriverKind::Gamma2: return "gamma2";
        case DriverKind::NormalSquares: return "normal-squares";
    }
    return "?";
}

inline std::optional<DriverKind> driver_from_name(const std::string& s) {
    if (s == "exp") return DriverKind::Exponential;
    if (s == "gamma2") return DriverKind::Gamma2;
    if (s == "normal-squares") return DriverKind::NormalSquares;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Auxiliary random variables (offset drivers, random entries, exponent draws).
// ---------------------------------------------------------------------------

enum class AuxKind { None, StandardNormal, Normal, AbsNormal, Rayleigh, Uniform };

struct AuxDistribution {
    AuxKind kind = AuxKind::StandardNormal;
    double p1 = 0.0;  // mean / sigma / lower bound
    double p2 = 1.0;  // stddev / upper bound

    static AuxDistribution standard_normal() { return {AuxKind::StandardNormal, 0.0, 1.0}; }
    static AuxDistribution normal(double mean, double sd) { return {AuxKind::Normal, mean, sd}; }
    static AuxDistribution abs_normal(double mean, double sd) { return {AuxKind::AbsNormal, mean, sd}; }
    static AuxDistribution rayleigh(double sigma) { return {AuxKind::Rayleigh, sigma, 0.0}; }
    static AuxDistribution uniform(double lo, double hi) { return {AuxKind::Uniform, lo, hi}; }

    double sample(RandomStream& rng) const {
        switch (kind) {
            case AuxKind::None: return 0.0;
            case AuxKind::StandardNormal: return rng.normal();
            case AuxKind::Normal: return rng.normal(p1, p2);
            case AuxKind::AbsNormal: return std::fabs(rng.normal(p1, p2));
            case AuxKind::Rayleigh: return rng.rayleigh(p1);
            case AuxKind::Uniform: return p1 + (p2 - p1) * rng.uniform_open01();
        }
        return 0.0;
    }
};

// ---------------------------------------------------------------------------
// Exponent providers: the numerators of the Y powers. Each named rule
// satisfies its family's sum constraint identically, for constants,
// parameters, or fresh random draws.
// ---------------------------------------------------------------------------

enum class ExponentRule {
    Constants,        // values used as-is
    BrodyPair,        // {-q, q+2}
    ReflectedPair,    // {1-q, 1+q}
    ShiftedPair,      // {-(q+1), q+3}
    TrigPair,         // {sec^2 q + csc^2(q+1), -(tan^2 q + cot^2(q+1))}
    UnitSquaresPair,  // {sin^2(l pi/2) + sin^2 p, cos^2(l pi/2) + cos^2 p}; params (l, p)
    BesselPair,       // {J1(1/pi) N0(1/pi), -J0(1/pi) N1(1/pi)}
    HyperbolicPair,   // {sech^2 U + coth^2 V, tanh^2 U - csch^2 V}; random U, V
    CaseIPair,        // {1, p1}
    CaseIIIPair,      // {p1, 1}
    TrigTriple,       // {sin^2 q - 2cos^2 q, sin^2 q + 2cos^2 q, sin^2 q}
    ArcsinPair,       // {4 asin(q-1)/pi, 4 acos(q-1)/pi}
    HyperbolicQuad,   // {-2 sinh^2 q, 4 cosh^2 q, -4 cosh 2q, 2 cosh^2 q}
    TrigRandomQuad,   // {2 sin^2 V, 4 cos^2 V, -4 cos 2V, 2 cos^2 V}; random V
    SplitSum,         // {A, p1 - A}, A ~ Uniform(p2, p3)
};

// Lower bound on |V| for the hyperbolic random rule. The coth/csch pole at
// V=0 would push matrix entries outside double range; the sum constraint
// (and hence the spacing law) holds for every clamped draw.
inline constexpr double kHyperbolicAuxFloor = 0.27;

struct ExponentProvider {
    ExponentRule rule = ExponentRule::Constants;
    std::vector<double> values;
    double p1 = 0.0, p2 = 0.0, p3 = 0.0;
    AuxDistribution aux_u = AuxDistribution::standard_normal();
    AuxDistribution aux_v = AuxDistribution::standard_normal();

    bool stochastic() const {
        return rule == ExponentRule::HyperbolicPair || rule == ExponentRule::TrigRandomQuad ||
               rule == ExponentRule::SplitSum;
    }

    std::vector<double> resolve(double q, RandomStream& rng) const {
        switch (rule) {
            case ExponentRule::Constants:
                return values;
            case ExponentRule::BrodyPair:
                return {-q, q + 2.0};
            case ExponentRule::ReflectedPair:
                return {1.0 - q, 1.0 + q};
            case ExponentRule::ShiftedPair:
                return {-(q + 1.0), q + 3.0};
            case ExponentRule::TrigPair: {
                const double cq = std::cos(q), sq = std::sin(q);
                const double cq1 = std::cos(q + 1.0), sq1 = std::sin(q + 1.0);
                const double sec2 = 1.0 / (cq * cq);
                const double csc2 = 1.0 / (sq1 * sq1);
                const double tan2 = (sq * sq) / (cq * cq);
                const double cot2 = (cq1 * cq1) / (sq1 * sq1);
                return {sec2 + csc2, -(tan2 + cot2)};
            }
            case ExponentRule::UnitSquaresPair: {
                const double sl = std::sin(p1 * kPi / 2.0), cl = std::cos(p1 * kPi / 2.0);
                const double sp = std::sin(p2), cp = std::cos(p2);
                return {sl * sl + sp * sp, cl * cl + cp * cp};
            }
            case ExponentRule::BesselPair: {
                static const double x = 1.0 / kPi;
                static const double a = std::cyl_bessel_j(1.0, x) * std::cyl_neumann(0.0, x);
                static const double b = -std::cyl_bessel_j(0.0, x) * std::cyl_neumann(1.0, x);
                return {a, b};
            }
            case ExponentRule::HyperbolicPair: {
                const double u = aux_u.sample(rng);
                double v = aux_v.sample(rng);
                if (std::fabs(v) < kHyperbolicAuxFloor)
                    v = std::copysign(kHyperbolicAuxFloor, v == 0.0 ? 1.0 : v);
                const double sech = 1.0 / std::cosh(u), tanh_u = std::tanh(u);
                const double coth = 1.0 / std::tanh(v), csch = 1.0 / std::sinh(v);
                return {sech * sech + coth * coth, tanh_u * tanh_u - csch * csch};
            }
            case ExponentRule::CaseIPair:
                return {1.0, p1};
            case ExponentRule::CaseIIIPair:
                return {p1, 1.0};
            case ExponentRule::TrigTriple: {
                const double s2 = std::sin(q) * std::sin(q), c2 = std::cos(q) * std::cos(q);
                return {s2 - 2.0 * c2, s2 + 2.0 * c2, s2};
            }
            case ExponentRule::ArcsinPair:
                return {4.0 * std::asin(q - 1.0) / kPi, 4.0 * std::acos(q - 1.0) / kPi};
            case ExponentRule::HyperbolicQuad: {
                const double sh = std::sinh(q), ch = std::cosh(q);
                return {-2.0 * sh * sh, 4.0 * ch * ch, -4.0 * std::cosh(2.0 * q), 2.0 * ch * ch};
            }
            case ExponentRule::TrigRandomQuad: {
                const double v = aux_v.sample(rng);
                const double s2 = std::sin(v) * std::sin(v), c2 = std::cos(v) * std::cos(v);
                return {2.0 * s2, 4.0 * c2, -4.0 * std::cos(2.0 * v), 2.0 * c2};
            }
            case ExponentRule::SplitSum: {
                const double a = p2 + (p3 - p2) * rng.uniform_open01();
                return {a, p1 - a};
            }
        }
        return {};
    }
};

inline std::vector<double> resolve_exponents(const ExponentProvider& provider, double q,
                                             RandomStream& rng) {
    return provider.resolve(q, rng);
}

// ---------------------------------------------------------------------------
// Offset functions: additive diagonal pairs g1(X), g2(X) with constant
// difference eta, diagonal multiplier pairs d1(X), d2(X), and the
// nonvanishing off-diagonal factor h(T).
// ---------------------------------------------------------------------------

enum class OffsetRule {
    None,
    SharedX,       // g1 = g2 = X            (eta = 0)
    Log2Pair,      // c log2(|x|+1), c log2((|x|+1)/2)   (eta = c; param = c)
    ArctanPair,    // atan(x), -acot(x)      (eta = pi/2)
    ArcsecPair,    // asec(q|x|+1), -acsc(q|x|+1)        (eta = pi/2)
    CosinePair,    // cos^2 x, cos(2x)/2     (eta = 1/2)
    UnitTrigPair,  // cos^2 x, -sin^2 x      (eta = 1)
    ConstantPair,  // param, 0               (eta = param)
};

enum class HRule { One, Exp, Cosh };

struct OffsetSpec {
    OffsetRule rule = OffsetRule::None;
    double param = 0.0;
    AuxDistribution x_dist = AuxDistribution::standard_normal();
    HRule h_rule = HRule::One;
    AuxDistribution t_dist = AuxDistribution::standard_normal();

    std::pair<double, double> eval_pair(double q, double x) const {
        switch (rule) {
            case OffsetRule::None: return {0.0, 0.0};
            case OffsetRule::SharedX: return {x, x};
            case OffsetRule::Log2Pair:
                return {param * std::log2(std::fabs(x) + 1.0),
                        param * std::log2(0.5 * (std::fabs(x) + 1.0))};
            case OffsetRule::ArctanPair:
                // principal arccot via atan2, range (0, pi)
                return {std::atan(x), -std::atan2(1.0, x)};
            case OffsetRule::ArcsecPair: {
                const double w = q * std::fabs(x) + 1.0;
                return {std::acos(1.0 / w), -std::asin(1.0 / w)};
            }
            case OffsetRule::CosinePair: {
                const double c = std::cos(x);
                return {c * c, 0.5 * std::cos(2.0 * x)};
            }
            case OffsetRule::UnitTrigPair: {
                const double c = std::cos(x), s = std::sin(x);
                return {c * c, -s * s};
            }
            case OffsetRule::ConstantPair: return {param, 0.0};
        }
        return {0.0, 0.0};
    }

    // Exact pair difference (used by validation and the k formulas).
    double eta(double /*q*/) const {
        switch (rule) {
            case OffsetRule::None:
            case OffsetRule::SharedX: return 0.0;
            case OffsetRule::Log2Pair: return param;
            case OffsetRule::ArctanPair:
            case OffsetRule::ArcsecPair: return 0.5 * kPi;
            case OffsetRule::CosinePair: return 0.5;
            case OffsetRule::UnitTrigPair: return 1.0;
            case OffsetRule::ConstantPair: return param;
        }
        return 0.0;
    }

    double eval_h(double t) const {
        switch (h_rule) {
            case HRule::One: return 1.0;
            case HRule::Exp: return std::exp(t);
            case HRule::Cosh: return std::cosh(t);
        }
        return 1.0;
    }

    bool uses_x() const { return rule != OffsetRule::None && rule != OffsetRule::ConstantPair; }
    bool uses_t() const { return h_rule != HRule::One; }
};

// ---------------------------------------------------------------------------
// Model specification.
// ---------------------------------------------------------------------------

enum class Family {
    SubA,             // constants {c1,c2,c3,c4}; diag X + c_j Y^(1/(q+1)); off c2 Y^(a'), c3 Y^(b')
    SubAZeroTrace,    // constants {c1,c2,c3}; diag +/- c1 Y^(1/(q+1))
    SubAGenC2,        // constants {c1,c4}; upper off-diagonal zero, lower = V
    SubAGenC3,        // constants {c1,c4}; lower off-diagonal zero, upper = V
    SubB,             // constants {c1..c6}; two-power cropped form
    SubBGenI,         // constants {c1..c6}; Y power fixed to 1, second variable V
    SubBGenIII,       // mirror of SubBGenI
    SubBComplexSym1,  // complex symmetric, off-diag (i/2)(Y^a' - Y^b'); real eigenvalues
    SubBComplexSym2,  // complex symmetric, off-diag (i/2)(Y^a' + Y^b'); conjugate eigenvalues
    SubC,             // constants {c1..c6}; pruned four-power form
    ModelE1,          // exp(+-q) diagonal with log2 offsets; k = (c + 2 sinh q)^2
    ModelE2,          // arctan/arccot diagonal; constants {c}, c < 0
    ModelG1,          // arcsec/arccsc diagonal; k = pi^2/4
    SubI,             // constants {c1..c5}; three-power trimmed form
    SubJ,             // constants {c1,c2,c3}; diagonal multiplier pair d1, d2
    ModelD1,          // +-sqrt(Y^(2/(q+1)) + c^2) diagonal, h(T) off-diagonals
    ModelD2,          // complex diagonal X +- ci; off-diag (Y^(2/(q+1)) + c^2)^{a,b}, a+b=1
    ModelD3,          // symmetric sqrt(Y^(2/(q+1)) - c^2)/2 off-diagonals
    ModelR,           // normal-squares diagonal, Rayleigh-power off-diagonals
    ModelL,           // independent off-diagonals via sin^2 factors
    Additive1,        // additive decomposition, D = Y^2 (q=0) or q Y^(2/(q+1))
    Additive2,        // additive decomposition, D = 4Y^2 (q=0) or 4q^2 Y^(2/(q+1))
    PoissonPreset,    // q=0 preset with constants {c1..c8}
};

struct ModelSpec {
    std::string id = "custom";
    Family family = Family::SubA;
    double q = 0.5;
    std::vector<Complex> constants;
    ExponentProvider exponents;
    OffsetSpec offsets;
    DriverSpec driver;
    AuxDistribution aux = AuxDistribution::standard_normal();  // V entry variable
    double family_param = 1.0;                                 // c constant of E1/D1/D2/D3
};

struct Violation {
    std::string condition;
    double residual;
};

struct ValidationReport {
    bool ok = true;
    std::optional<Complex> k;
    std::string case_label;
    std::vector<Violation> violations;
};

namespace detail {

inline constexpr double kConditionTol = 1e-12;

inline void check_eq(ValidationReport& r, const std::string& id, double residual) {
    if (!(std::fabs(residual) <= kConditionTol)) {
        r.ok = false;
        r.violations.push_back({id, std::fabs(residual)});
    }
}

inline void check_true(ValidationReport& r, const std::string& id, bool cond, double residual) {
    if (!cond) {
        r.ok = false;
        r.violations.push_back({id, residual});
    }
}

inline std::array<Complex, 3> b_case_constants(const std::vector<Complex>& c) {
    const Complex C1 = c[0] * c[0] + 4.0 * c[1] * c[3];
    const Complex C2 = -2.0 * c[0] * c[5] + 4.0 * (c[1] * c[4] + c[2] * c[3]);
    const Complex C3 = c[5] * c[5] + 4.0 * c[2] * c[4];
    return {C1, C2, C3};
}

inline std::vector<Complex> complex_sym_constants(Family f) {
    const Complex ih(0.0, 0.5);
    if (f == Family::SubBComplexSym1) return {1.0, ih, -ih, ih, -ih, -1.0};
    return {1.0, ih, ih, ih, ih, 1.0};
}

}  // namespace detail

// Closed-form discriminant constant for the given model (depends on q for a
// few families); std::nullopt for the model verified through the general
// Weibull-square condition (family R).
inline std::optional<Complex> discriminant_constant(const ModelSpec& spec) {
    using detail::b_case_constants;
    const auto& c = spec.constants;
    switch (spec.family) {
        case Family::SubA:
            return (c[0] - c[3]) * (c[0] - c[3]) + 4.0 * c[1] * c[2];
        case Family::SubAZeroTrace:
            return 4.0 * (c[0] * c[0] + c[1] * c[2]);
        case Family::SubAGenC2:
        case Family::SubAGenC3:
            return (c[0] - c[1]) * (c[0] - c[1]);
        case Family::SubB: {
            const auto C = b_case_constants(c);
            int idx = 0;
            double best = 0.0;
            for (int j = 0; j < 3; ++j)
                if (std::abs(C[j]) > best) { best = std::abs(C[j]); idx = j; }
            return C[idx];
        }
        case Family::SubBGenI:
            return b_case_constants(c)[0];
        case Family::SubBGenIII:
            return b_case_constants(c)[2];
        case Family::SubBComplexSym1:
            return Complex(4.0, 0.0);
        case Family::SubBComplexSym2:
            return Complex(-4.0, 0.0);
        case Family::SubC:
            return -2.0 * c[0] * c[5];
        case Family::ModelE1: {
            const double base = spec.offsets.param + 2.0 * std::sinh(spec.q);
            return Complex(base * base, 0.0);
        }
        case Family::ModelE2: {
            const double f = spec.q + 0.25 * kPi;
            return -4.0 * c[0] * Complex(f * f, 0.0);
        }
        case Family::ModelG1:
            return Complex(0.25 * kPi * kPi, 0.0);
        case Family::SubI:
            return 4.0 * c[2] * c[4];
        case Family::SubJ: {
            const double eta = spec.offsets.eta(spec.q);
            return c[0] * c[0] * eta * eta + 4.0 * c[1] * c[2];
        }
        case Family::ModelD1:
        case Family::ModelD2:
            return Complex(4.0, 0.0);
        case Family::ModelD3:
        case Family::ModelL:
            return Complex(1.0, 0.0);
        case Family::ModelR:
            return std::nullopt;
        case Family::Additive1:
            return Complex(spec.q == 0.0 ? 1.0 : spec.q, 0.0);
        case Family::Additive2:
            return Complex(spec.q == 0.0 ? 4.0 : 4.0 * spec.q * spec.q, 0.0);
        case Family::PoissonPreset:
            return c[6] * c[6];
    }
    return std::nullopt;
}

namespace detail {

inline std::size_t family_constant_count(Family f) {
    switch (f) {
        case Family::SubA: return 4;
        case Family::SubAZeroTrace: return 3;
        case Family::SubAGenC2:
        case Family::SubAGenC3: return 2;
        case Family::SubB:
        case Family::SubBGenI:
        case Family::SubBGenIII:
        case Family::SubC: return 6;
        case Family::SubBComplexSym1:
        case Family::SubBComplexSym2: return 0;
        case Family::ModelE2: return 1;
        case Family::SubI: return 5;
        case Family::SubJ: return 3;
        case Family::PoissonPreset: return 8;
        default: return 0;
    }
}

// Deterministic exponent rules are checked here; stochastic rules are
// re-checked on every resolution inside assemble().
inline void check_exponent_sum(ValidationReport& r, const ModelSpec& spec,
                               const std::string& id, double target,
                               std::size_t ia = 0, std::size_t ib = 1) {
    if (spec.exponents.stochastic()) return;
    RandomStream probe(0);
    const auto e = spec.exponents.resolve(spec.q, probe);
    if (e.size() <= std::max(ia, ib)) {
        r.ok = false;
        r.violations.push_back({id + "-arity", 1.0});
        return;
    }
    check_eq(r, id, e[ia] + e[ib] - target);
}

}  // namespace detail

inline ValidationReport validate(const ModelSpec& spec) {
    using namespace detail;
    ValidationReport r;

    check_true(r, "q-range", spec.q >= 0.0 && spec.q <= 1.0, spec.q);
    check_true(r, "driver-scale-positive", spec.driver.scale > 0.0, spec.driver.scale);

    const auto& c = spec.constants;
    if (c.size() < family_constant_count(spec.family)) {
        r.ok = false;
        r.violations.push_back({"constant-count", static_cast<double>(c.size())});
        return r;
    }

    auto kval = discriminant_constant(spec);
    switch (spec.family) {
        case Family::SubA: {
            check_eq(r, "trace-imag-zero", (c[0] + c[3]).imag());
            check_eq(r, "k-imag-zero", kval->imag());
            check_true(r, "discriminant-constant-nonzero",
                       std::fabs(kval->real()) > kConditionTol, std::fabs(kval->real()));
            if (std::abs(c[1]) > kConditionTol && std::abs(c[2]) > kConditionTol)
                check_exponent_sum(r, spec, "exponent-sum-2", 2.0);
            r.case_label = kval->real() < 0.0 ? "conjugate-pair" : "real-pair";
            break;
        }
        case Family::SubAZeroTrace: {
            check_eq(r, "k-imag-zero", kval->imag());
            check_true(r, "discriminant-constant-nonzero",
                       std::fabs(kval->real()) > kConditionTol, std::fabs(kval->real()));
            if (std::abs(c[1]) > kConditionTol && std::abs(c[2]) > kConditionTol)
                check_exponent_sum(r, spec, "exponent-sum-2", 2.0);
            r.case_label = kval->real() < 0.0 ? "conjugate-pair" : "real-pair";
            break;
        }
        case Family::SubAGenC2:
        case Family::SubAGenC3: {
            check_eq(r, "trace-imag-zero", (c[0] + c[1]).imag());
            check_eq(r, "k-imag-zero", kval->imag());
            check_true(r, "discriminant-constant-nonzero",
                       std::fabs(kval->real()) > kConditionTol, std::fabs(kval->real()));
            r.case_label = "real-pair";
            break;
        }
        case Family::SubB:
        case Family::SubBGenI:
        case Family::SubBGenIII:
        case Family::SubBComplexSym1:
        case Family::SubBComplexSym2: {
            const auto cs = (spec.family == Family::SubBComplexSym1 ||
                             spec.family == Family::SubBComplexSym2)
                                ? complex_sym_constants(spec.family)
                                : c;
            const auto C = b_case_constants(cs);
            int nonzero = -1;
            for (int j = 0; j < 3; ++j) {
                if (std::abs(C[j]) > kConditionTol) {
                    if (nonzero >= 0) {
                        r.ok = false;
                        r.violations.push_back({"single-case-structure", std::abs(C[j])});
                    } else {
                        nonzero = j;
                    }
                }
            }
            if (nonzero < 0) {
                r.ok = false;
                r.violations.push_back({"discriminant-constant-nonzero", 0.0});
                break;
            }
            if (spec.family == Family::SubBGenI)
                check_true(r, "case-i-structure", nonzero == 0, static_cast<double>(nonzero));
            if (spec.family == Family::SubBGenIII)
                check_true(r, "case-iii-structure", nonzero == 2, static_cast<double>(nonzero));
            kval = C[nonzero];
            r.case_label = nonzero == 0 ? "I" : (nonzero == 1 ? "II" : "III");
            check_eq(r, "trace-imag-zero", std::fabs(cs[0].imag()) + std::fabs(cs[5].imag()));
            check_eq(r, "k-imag-zero", kval->imag());
            if (spec.family == Family::SubB || spec.family == Family::SubBComplexSym1 ||
                spec.family == Family::SubBComplexSym2) {
                RandomStream probe(0);
                const auto e = spec.exponents.stochastic() ? std::vector<double>{}
                                                           : spec.exponents.resolve(spec.q, probe);
                if (!e.empty()) {
                    if (nonzero == 0) check_eq(r, "case-i-exponent", e[0] - 1.0);
                    if (nonzero == 1) check_eq(r, "case-ii-exponent-sum", e[0] + e[1] - 2.0);
                    if (nonzero == 2) check_eq(r, "case-iii-exponent", e[1] - 1.0);
                }
            }
            if (kval->real() < 0.0) r.case_label += " (conjugate-pair)";
            break;
        }
        case Family::SubC: {
            check_eq(r, "upper-power-cancellation", std::abs(c[0] * c[0] + 4.0 * c[2] * c[4]));
            check_eq(r, "c2-zero", std::abs(c[1]));
            check_eq(r, "lower-power-cancellation", std::abs(c[5] * c[5] + 4.0 * c[2] * c[3]));
            const Complex prod = c[0] * c[5];
            check_eq(r, "diagonal-product-imag-zero", prod.imag());
            check_true(r, "diagonal-product-negative", prod.real() < 0.0, prod.real());
            for (std::size_t j : {std::size_t{0}, std::size_t{2}, std::size_t{4}, std::size_t{5}})
                check_true(r, "nonzero-constants", std::abs(c[j]) > kConditionTol, std::abs(c[j]));
            if (!spec.exponents.stochastic()) {
                RandomStream probe(0);
                const auto e = spec.exponents.resolve(spec.q, probe);
                if (e.size() < 4) {
                    r.ok = false;
                    r.violations.push_back({"exponent-arity", static_cast<double>(e.size())});
                } else {
                    check_eq(r, "exponent-2a-eq-b-plus-c", 2.0 * e[0] - e[1] - e[2]);
                    check_eq(r, "exponent-a-plus-d-eq-2", e[0] + e[3] - 2.0);
                    check_eq(r, "exponent-b-eq-2d", e[1] - 2.0 * e[3]);
                }
            }
            r.case_label = "real-pair";
            break;
        }
        case Family::ModelE1: {
            check_true(r, "offset-rule-log2",
                       spec.offsets.rule == OffsetRule::Log2Pair ||
                           spec.offsets.rule == OffsetRule::ConstantPair,
                       0.0);
            check_true(r, "discriminant-constant-nonzero", kval->real() > kConditionTol,
                       kval->real());
            r.case_label = "real-pair";
            break;
        }
        case Family::ModelE2: {
            check_eq(r, "constant-imag-zero", c[0].imag());
            check_true(r, "constant-negative", c[0].real() < 0.0, c[0].real());
            r.case_label = "real-pair";
            break;
        }
        case Family::ModelG1:
            r.case_label = "real-pair";
            break;
        case Family::SubI: {
            check_eq(r, "diagonal-offdiag-cancellation",
                     std::abs((c[0] - c[3]) * (c[0] - c[3]) + 4.0 * c[1] * c[2]));
            const Complex prod = c[2] * c[4];
            check_eq(r, "c3c5-imag-zero", prod.imag());
            check_true(r, "c3c5-positive", prod.real() > 0.0, prod.real());
            if (!spec.exponents.stochastic()) {
                RandomStream probe(0);
                const auto e = spec.exponents.resolve(spec.q, probe);
                if (e.size() < 3) {
                    r.ok = false;
                    r.violations.push_back({"exponent-arity", static_cast<double>(e.size())});
                } else {
                    check_eq(r, "exponent-a-plus-b-eq-2c", e[0] + e[1] - 2.0 * e[2]);
                    check_eq(r, "exponent-b-plus-c-eq-2", e[1] + e[2] - 2.0);
                }
            }
            r.case_label = "real-pair";
            break;
        }
        case Family::SubJ: {
            check_eq(r, "k-imag-zero", kval->imag());
            check_true(r, "discriminant-constant-positive", kval->real() > kConditionTol,
                       kval->real());
            check_exponent_sum(r, spec, "exponent-sum-2", 2.0);
            r.case_label = "real-pair";
            break;
        }
        case Family::ModelD1:
            r.case_label = "real-pair";
            break;
        case Family::ModelD2:
            check_exponent_sum(r, spec, "exponent-sum-1", 1.0);
            r.case_label = "real-pair";
            break;
        case Family::ModelD3:
            check_eq(r, "diagonal-pair-unit-difference", spec.offsets.eta(spec.q) - 1.0);
            r.case_label = "real-pair";
            break;
        case Family::ModelR:
            check_true(r, "driver-normal-squares",
                       spec.driver.kind == DriverKind::NormalSquares, 0.0);
            check_true(r, "exponent-split-sum-4",
                       spec.exponents.rule == ExponentRule::SplitSum &&
                           std::fabs(spec.exponents.p1 - 4.0) <= kConditionTol,
                       spec.exponents.p1);
            r.case_label = "real-pair";
            break;
        case Family::ModelL:
            r.case_label = "real-pair";
            break;
        case Family::Additive1:
            r.case_label = "real-pair";
            break;
        case Family::Additive2:
            check_exponent_sum(r, spec, "exponent-sum-2", 2.0);
            r.case_label = "real-pair";
            break;
        case Family::PoissonPreset: {
            check_true(r, "q-pinned-zero", spec.q == 0.0, spec.q);
            check_eq(r, "c2-eq-c8", std::abs(c[1] - c[7]));
            check_eq(r, "c4c6-zero", std::abs(c[3] * c[5]));
            check_eq(r, "cross-cancellation", std::abs(4.0 * c[2] * c[4] - 2.0 * c[0] * c[6]));
            check_eq(r, "square-cancellation",
                     std::abs(c[0] * c[0] + 4.0 * (c[3] * c[4] + c[2] * c[5])));
            check_true(r, "c7-nonzero", std::abs(c[6]) > kConditionTol, std::abs(c[6]));
            r.case_label = "real-pair";
            break;
        }
    }

    if (r.ok) r.k = kval;
    return r;
}

// ---------------------------------------------------------------------------
// Realization builder. sample_draws() performs all random draws in a fixed
// order; assemble() is the deterministic kernel from draws to matrix.
// ---------------------------------------------------------------------------

struct Draws {
    double y = 0.0;              // driver draw (u^2 + v^2 for family R)
    double u = 0.0, v = 0.0;     // normal components (family R)
    std::vector<double> exponents;
    double x = 0.0;              // offset driver
    double t = 0.0;              // h-rule driver
    double aux = 0.0;            // V entry variable
};

struct Realization {
    Matrix2 m;
    double driver_draw;
};

namespace detail {

inline bool family_uses_aux(Family f) {
    return f == Family::SubAGenC2 || f == Family::SubAGenC3 || f == Family::SubBGenI ||
           f == Family::SubBGenIII || f == Family::ModelL;
}

inline void require_sum(const char* what, double lhs, double rhs) {
    if (!(std::fabs(lhs - rhs) <= 1e-9))
        throw std::logic_error(std::string("misconfigured exponent rule: ") + what);
}

}  // namespace detail

inline Draws sample_draws(const ModelSpec& spec, RandomStream& rng) {
    Draws d;
    switch (spec.driver.kind) {
        case DriverKind::Exponential:
            d.y = sample_exponential(rng, spec.driver.scale);
            break;
        case DriverKind::Gamma2:
            d.y = sample_gamma2(rng, spec.driver.scale);
            break;
        case DriverKind::NormalSquares:
            d.u = spec.driver.scale * rng.normal();
            d.v = spec.driver.scale * rng.normal();
            d.y = d.u * d.u + d.v * d.v;
            break;
    }
    d.exponents = spec.exponents.resolve(spec.q, rng);
    if (spec.offsets.uses_x()) d.x = spec.offsets.x_dist.sample(rng);
    if (spec.offsets.uses_t()) d.t = spec.offsets.t_dist.sample(rng);
    if (detail::family_uses_aux(spec.family)) d.aux = spec.aux.sample(rng);
    return d;
}

inline Realization assemble(const ModelSpec& spec, const Draws& d) {
    using detail::require_sum;
    const double q = spec.q;
    const double inv = 1.0 / (q + 1.0);
    const double y = d.y;
    const auto& e = d.exponents;
    const auto& c = spec.constants;
    const auto [g1, g2] = spec.offsets.eval_pair(q, d.x);
    const double h = spec.offsets.eval_h(d.t);

    Matrix2 m;
    switch (spec.family) {
        case Family::SubA: {
            if (std::abs(c[1]) != 0.0 && std::abs(c[2]) != 0.0)
                require_sum("a+b=2", e[0] + e[1], 2.0);
            const double w1 = std::pow(y, inv);
            const double wa = std::pow(y, e[0] * inv);
            const double wb = std::pow(y, e[1] * inv);
            m = {g1 + c[0] * w1, c[1] * wa, c[2] * wb, g2 + c[3] * w1};
            break;
        }
        case Family::SubAZeroTrace: {
            if (std::abs(c[1]) != 0.0 && std::abs(c[2]) != 0.0)
                require_sum("a+b=2", e[0] + e[1], 2.0);
            const double w1 = std::pow(y, inv);
            m = {c[0] * w1, c[1] * std::pow(y, e[0] * inv), c[2] * std::pow(y, e[1] * inv),
                 -c[0] * w1};
            break;
        }
        case Family::SubAGenC2: {
            const double w1 = std::pow(y, inv);
            m = {g1 + c[0] * w1, 0.0, Complex(d.aux, 0.0), g2 + c[1] * w1};
            break;
        }
        case Family::SubAGenC3: {
            const double w1 = std::pow(y, inv);
            m = {g1 + c[0] * w1, Complex(d.aux, 0.0), 0.0, g2 + c[1] * w1};
            break;
        }
        case Family::SubB: {
            const double wa = std::pow(y, e[0] * inv);
            const double wb = std::pow(y, e[1] * inv);
            m = {c[0] * wa, c[1] * wa + c[2] * wb, c[3] * wa + c[4] * wb, c[5] * wb};
            break;
        }
        case Family::SubBGenI: {
            const double w1 = std::pow(y, inv);
            const double v = d.aux;
            m = {c[0] * w1, c[1] * w1 + c[2] * v, c[3] * w1 + c[4] * v, c[5] * v};
            break;
        }
        case Family::SubBGenIII: {
            const double w1 = std::pow(y, inv);
            const double v = d.aux;
            m = {c[0] * v, c[1] * v + c[2] * w1, c[3] * v + c[4] * w1, c[5] * w1};
            break;
        }
        case Family::SubBComplexSym1: {
            require_sum("a+b=2", e[0] + e[1], 2.0);
            const double wa = std::pow(y, e[0] * inv);
            const double wb = std::pow(y, e[1] * inv);
            const Complex off(0.0, 0.5 * (wa - wb));
            m = {Complex(wa, 0.0), off, off, Complex(-wb, 0.0)};
            break;
        }
        case Family::SubBComplexSym2: {
            require_sum("a+b=2", e[0] + e[1], 2.0);
            const double wa = std::pow(y, e[0] * inv);
            const double wb = std::pow(y, e[1] * inv);
            const Complex off(0.0, 0.5 * (wa + wb));
            m = {Complex(wa, 0.0), off, off, Complex(wb, 0.0)};
            break;
        }
        case Family::SubC: {
            require_sum("2a=b+c", 2.0 * e[0], e[1] + e[2]);
            require_sum("a+d=2", e[0] + e[3], 2.0);
            require_sum("b=2d", e[1], 2.0 * e[3]);
            m = {c[0] * std::pow(y, e[0] * inv), c[1] + c[2] * std::pow(y, e[1] * inv),
                 c[3] + c[4] * std::pow(y, e[2] * inv), c[5] * std::pow(y, e[3] * inv)};
            break;
        }
        case Family::ModelE1: {
            const double w1 = std::pow(y, inv);
            const double base = spec.offsets.param + 2.0 * std::sinh(q);
            const double k = base * base;
            m = {Complex(std::exp(q) + g1, 0.0), Complex(0.5 * k * (1.0 - w1), 0.0),
                 Complex(-0.5 * (1.0 + w1), 0.0), Complex(std::exp(-q) + g2, 0.0)};
            break;
        }
        case Family::ModelE2: {
            const double w2 = std::pow(y, 2.0 * inv);
            const double f = q + 0.25 * kPi;
            m = {Complex(g1 + q, 0.0), c[0] + 1.0 / w2, Complex(-f * f * w2, 0.0),
                 Complex(g2 - q, 0.0)};
            break;
        }
        case Family::ModelG1: {
            const double w2 = std::pow(y, 2.0 * inv);
            const double wm2 = 1.0 / w2;
            m = {Complex(g1 - kPi * wm2, 0.0), Complex(0.25 + wm2 * wm2, 0.0),
                 Complex(0.25 * kPi * kPi * (w2 - 1.0), 0.0), Complex(g2, 0.0)};
            break;
        }
        case Family::SubI: {
            require_sum("a+b=2c", e[0] + e[1], 2.0 * e[2]);
            require_sum("b+c=2", e[1] + e[2], 2.0);
            const double wa = std::pow(y, e[0] * inv);
            const double wb = std::pow(y, e[1] * inv);
            const double wc = std::pow(y, e[2] * inv);
            m = {g1 + c[0] * wc, c[1] * wa + c[4] * wc, c[2] * wb, g2 + c[3] * wc};
            break;
        }
        case Family::SubJ: {
            require_sum("a+b=2", e[0] + e[1], 2.0);
            const double w1 = std::pow(y, inv);
            m = {c[0] * g1 * w1, c[1] * std::pow(y, e[0] * inv), c[2] * std::pow(y, e[1] * inv),
                 c[0] * g2 * w1};
            break;
        }
        case Family::ModelD1: {
            const double cc = spec.family_param;
            const double diag = std::sqrt(std::pow(y, 2.0 * inv) + cc * cc);
            m = {Complex(diag, 0.0), Complex(cc * h, 0.0), Complex(-cc / h, 0.0),
                 Complex(-diag, 0.0)};
            break;
        }
        case Family::ModelD2: {
            require_sum("a+b=1", e[0] + e[1], 1.0);
            const double cc = spec.family_param;
            const double s = std::pow(y, 2.0 * inv) + cc * cc;
            m = {Complex(d.x, cc), Complex(std::pow(s, e[0]), 0.0),
                 Complex(std::pow(s, e[1]), 0.0), Complex(d.x, -cc)};
            break;
        }
        case Family::ModelD3: {
            const double cc = spec.family_param;
            const Complex off = 0.5 * std::sqrt(Complex(std::pow(y, 2.0 * inv) - cc * cc, 0.0));
            m = {Complex(cc * g1, 0.0), off, off, Complex(cc * g2, 0.0)};
            break;
        }
        case Family::ModelR: {
            require_sum("A+B=4", e[0] + e[1], 4.0);
            const double r2 = d.u * d.u + d.v * d.v;
            const double ra = std::pow(r2, 0.5 * e[0]);
            const double rb = std::pow(r2, 0.5 * e[1]);
            const double drop = std::pow(r2, -q * inv);  // R^(-2q/(q+1))
            m = {Complex(d.u * d.u, 0.0), Complex(0.5 * ra * (drop + 1.0), 0.0),
                 Complex(0.5 * rb * (drop - 1.0), 0.0), Complex(-d.v * d.v, 0.0)};
            break;
        }
        case Family::ModelL: {
            const double w1 = std::pow(y, inv);
            const double w2 = std::pow(y, 2.0 * inv);
            const double s1 = std::sin(2.0 * q * d.aux);
            const double s2 = std::sin(q * d.aux);
            m = {Complex(w1, 0.0), Complex(0.5 * s1 * s1, 0.0), Complex(0.5 * w2, 0.0),
                 Complex(2.0 * s2 * s2 * w1, 0.0)};
            break;
        }
        case Family::Additive1: {
            if (q == 0.0) {
                m = {0.0, Complex(-0.5, 0.0), 0.0, Complex(y, 0.0)};
            } else {
                m = {0.0, Complex(-0.5 + 0.5 * q * std::pow(y, -2.0 * q * inv), 0.0),
                     Complex(0.5 * y * y, 0.0), Complex(y, 0.0)};
            }
            break;
        }
        case Family::Additive2: {
            require_sum("a+b=2", e[0] + e[1], 2.0);
            if (q == 0.0) {
                m = {Complex(y, 0.0), 0.0, Complex(-std::pow(y, e[1]), 0.0), Complex(-y, 0.0)};
            } else {
                const double qi = q * inv;
                m = {Complex(y, 0.0),
                     Complex(q * std::pow(y, e[0] - qi) + std::pow(y, e[0]), 0.0),
                     Complex(q * std::pow(y, e[1] - qi) - std::pow(y, e[1]), 0.0),
                     Complex(-y, 0.0)};
            }
            break;
        }
        case Family::PoissonPreset: {
            const double u = std::cbrt(y);
            const double u2 = u * u;
            m = {c[0] * u + c[1], c[2] * u2 + c[3], c[4] * u2 + c[5], c[6] * y + c[7]};
            break;
        }
    }

    if (spec.offsets.uses_t() && spec.family != Family::ModelD1) {
        m.m12 *= h;
        m.m21 /= h;
    }
    if (!is_finite(m)) throw std::runtime_error("assemble: non-finite matrix entry");
    return {m, d.y};
}

inline Realization build(const ModelSpec& spec, RandomStream& rng, bool zero_offsets = false) {
    Draws d = sample_draws(spec, rng);
    if (zero_offsets) {
        d.x = 0.0;
        d.t = 0.0;
    }
    return assemble(spec, d);
}

// Population mean of the spacing: sqrt|k| * scale^(1/(q+1)) * Gamma(...),
// with the gamma argument (q+2)/(q+1) for the exponential and normal-squares
// drivers and (2q+3)/(q+1) for the gamma driver.
inline std::optional<double> analytic_mean_spacing(const ModelSpec& spec) {
    const auto k = discriminant_constant(spec);
    // Family R has no single k, but its spacing is exactly
    // Weibull(2 sigma_R^2, q+1), so the mean is still closed-form.
    const double kabs = k ? std::abs(*k) : (spec.family == Family::ModelR ? 1.0 : 0.0);
    if (kabs == 0.0) return std::nullopt;
    const double q = spec.q;
    double scale = spec.driver.scale;
    double garg = (q + 2.0) / (q + 1.0);
    if (spec.driver.kind == DriverKind::Gamma2) garg = (2.0 * q + 3.0) / (q + 1.0);
    if (spec.driver.kind == DriverKind::NormalSquares) scale = 2.0 * scale * scale;
    return std::sqrt(kabs) * std::pow(scale, 1.0 / (q + 1.0)) * std::tgamma(garg);
}

// ---------------------------------------------------------------------------
// Model catalog.
// ---------------------------------------------------------------------------

struct CatalogEntry {
    std::string id;
    std::string summary;
    std::optional<double> pinned_q;
    ModelSpec base;
};

namespace detail {

inline std::vector<CatalogEntry> make_catalog() {
    std::vector<CatalogEntry> cat;
    const double ln2 = std::log(2.0);

    auto add = [&cat](CatalogEntry e) { cat.push_back(std::move(e)); };
    auto shared_x = [] {
        OffsetSpec o;
        o.rule = OffsetRule::SharedX;
        return o;
    };

    {
        ModelSpec s;
        s.id = "A1";
        s.family = Family::SubA;
        s.constants = {1.0, 1.0, 1.0, -1.0};
        s.exponents.rule = ExponentRule::BrodyPair;
        s.offsets = shared_x();
        add({"A1", "real asymmetric, diagonal offset X, exponents (-q, q+2); k=8", {}, s});
    }
    {
        ModelSpec s;
        s.id = "A2";
        s.family = Family::SubAZeroTrace;
        s.constants = {1.0, 1.0, 1.0};
        s.exponents.rule = ExponentRule::TrigPair;
        add({"A2", "zero-trace cropped, sec/csc exponent pair; k=8", {}, s});
    }
    {
        ModelSpec s;
        s.id = "A3";
        s.family = Family::SubA;
        s.constants = {1.0, 1.0, 1.0, -1.0};
        s.exponents.rule = ExponentRule::HyperbolicPair;
        s.exponents.aux_u = AuxDistribution::rayleigh(2.0);
        s.exponents.aux_v = AuxDistribution::abs_normal(1.0, 3.0);
        s.offsets = shared_x();
        s.driver.scale = ln2;
        add({"A3", "random hyperbolic exponents (U Rayleigh, V |normal|); k=8", {}, s});
    }
    {
        ModelSpec s;
        s.id = "AnH1";
        s.family = Family::SubA;
        s.constants = {Complex(3.0, -1.0), Complex(2.0, 0.5), Complex(2.0, 0.5), Complex(1.0, 1.0)};
        s.exponents.rule = ExponentRule::ShiftedPair;
        s.offsets = shared_x();
        s.driver.scale = std::sqrt(5.0);
        add({"AnH1", "complex non-Hermitian with real eigenvalues; k=15", {}, s});
    }
    {
        ModelSpec s;
        s.id = "Acc1";
        s.family = Family::SubA;
        s.constants = {2.0, 1.0, -1.0, 1.0};
        s.exponents.rule = ExponentRule::BrodyPair;
        s.offsets = shared_x();
        add({"Acc1", "real asymmetric, conjugate-pair eigenvalues; k=-3", {}, s});
    }
    {
        ModelSpec s;
        s.id = "Acc2";
        s.family = Family::SubA;
        s.constants = {Complex(1.0, 2.0), Complex(1.0, 1.0), Complex(1.0, -1.0), Complex(1.0, -2.0)};
        s.exponents.rule = ExponentRule::BrodyPair;
        s.offsets = shared_x();
        add({"Acc2", "complex non-Hermitian, conjugate-pair eigenvalues; k=-8", {}, s});
    }
    {
        ModelSpec s;
        s.id = "Ag2";
        s.family = Family::SubAGenC2;
        s.constants = {1.0, -1.0};
        s.offsets = shared_x();
        add({"Ag2", "lower-triangular variant, free random lower entry; k=4", {}, s});
    }
    {
        ModelSpec s;
        s.id = "Ag3";
        s.family = Family::SubAGenC3;
        s.constants = {1.0, -1.0};
        s.offsets = shared_x();
        add({"Ag3", "upper-triangular variant, free random upper entry; k=4", {}, s});
    }
    {
        ModelSpec s;
        s.id = "B1-I";
        s.family = Family::SubB;
        s.constants = {1.0, 2.0, -0.5, 1.0, 0.5, 1.0};
        s.exponents.rule = ExponentRule::CaseIPair;
        s.exponents.p1 = 2.0;
        add({"B1-I", "cropped two-power form, case I; k=9", {}, s});
    }
    {
        ModelSpec s;
        s.id = "B1-II";
        s.family = Family::SubB;
        s.constants = {-2.0, -1.5, 1.5, Complex(2.0 / 3.0, 0.0), -1.5, -3.0};
        s.exponents.rule = ExponentRule::ReflectedPair;
        add({"B1-II", "cropped two-power form, case II; k=1", {}, s});
    }
    {
        ModelSpec s;
        s.id = "B1-III";
        s.family = Family::SubB;
        s.constants = {2.0, 1.0, 2.0, -1.0, 5.0, 3.0};
        s.exponents.rule = ExponentRule::CaseIIIPair;
        s.exponents.p1 = 2.0;
        add({"B1-III", "cropped two-power form, case III; k=49", {}, s});
    }
    {
        ModelSpec s;
        s.id = "B2-II";
        s.family = Family::SubB;
        s.constants = {-1.0, -1.0, 0.25, 0.25, -1.0, -1.0};
        s.exponents.rule = ExponentRule::ReflectedPair;
        add({"B2-II", "case II with one q-independent power; k=9/4", {}, s});
    }
    {
        ModelSpec s;
        s.id = "Bg-I";
        s.family = Family::SubBGenI;
        s.constants = {1.0, 2.0, -0.5, 1.0, 0.5, 1.0};
        add({"Bg-I", "case I generalization, independent diagonal V; k=9", {}, s});
    }
    {
        ModelSpec s;
        s.id = "Bg-III";
        s.family = Family::SubBGenIII;
        s.constants = {2.0, 1.0, 2.0, -1.0, 5.0, 3.0};
        add({"Bg-III", "case III generalization, independent diagonal V; k=49", {}, s});
    }
    {
        ModelSpec s;
        s.id = "Bcs1";
        s.family = Family::SubBComplexSym1;
        s.exponents.rule = ExponentRule::BrodyPair;
        s.driver.scale = 100.0;
        add({"Bcs1", "complex symmetric with real eigenvalues; k=4", {}, s});
    }
    {
        ModelSpec s;
        s.id = "Bcs2";
        s.family = Family::SubBComplexSym2;
        s.exponents.rule = ExponentRule::TrigPair;
        s.driver.scale = 1000.0;
        add({"Bcs2", "complex symmetric with conjugate-pair eigenvalues; k=-4", {}, s});
    }
    {
        ModelSpec s;
        s.id = "C1";
        s.family = Family::SubC;
        s.constants = {-1.0, 0.0, -0.5, 0.5, 0.5, 1.0};
        s.exponents.rule = ExponentRule::Constants;
        s.exponents.values = {0.5, 3.0, -2.0, 1.5};
        add({"C1", "pruned four-power form, constant exponents; k=2", {}, s});
    }
    {
        ModelSpec s;
        s.id = "C2";
        s.family = Family::SubC;
        s.constants = {1.0, 0.0, -0.5, 0.5, 0.5, -1.0};
        s.exponents.rule = ExponentRule::HyperbolicQuad;
        add({"C2", "pruned four-power form, cosh/sinh exponents; k=2", {}, s});
    }
    {
        ModelSpec s;
        s.id = "C3";
        s.family = Family::SubC;
        s.constants = {1.0, 0.0, -0.5, 0.5, 0.5, -1.0};
        s.exponents.rule = ExponentRule::TrigRandomQuad;
        s.exponents.aux_v = AuxDistribution::rayleigh(5.0);
        s.driver.kind = DriverKind::Gamma2;
        s.driver.scale = 10.0;
        add({"C3", "random trig exponents, gamma-driver crossover; k=2", {}, s});
    }
    {
        ModelSpec s;
        s.id = "E1";
        s.family = Family::ModelE1;
        s.offsets.rule = OffsetRule::Log2Pair;
        s.offsets.param = 1.0;
        add({"E1", "exp(+-q) diagonal, log2 offsets; k=(1+2 sinh q)^2", {}, s});
    }
    {
        ModelSpec s;
        s.id = "E2";
        s.family = Family::ModelE2;
        s.constants = {-1.0};
        s.offsets.rule = OffsetRule::ArctanPair;
        add({"E2", "arctan/arccot diagonal; k=4(q+pi/4)^2", {}, s});
    }
    {
        ModelSpec s;
        s.id = "G1";
        s.family = Family::ModelG1;
        s.offsets.rule = OffsetRule::ArcsecPair;
        // The Y^(-4/(q+1)) entry makes tiny driver draws ill-conditioned in
        // binary64; a large scale keeps them out of the singular corner. The
        // mean-scaled spacing law is scale-independent.
        s.driver.scale = 100.0;
        add({"G1", "arcsec/arccsc diagonal, negative powers; k=pi^2/4", {}, s});
    }
    {
        ModelSpec s;
        s.id = "I1";
        s.family = Family::SubI;
        s.constants = {-1.0, -1.0, 1.0, 1.0, 1.0};
        s.exponents.rule = ExponentRule::Constants;
        s.exponents.values = {7.0, -1.0, 3.0};
        s.offsets = shared_x();
        add({"I1", "three-power trimmed form, exponents (7,-1,3); k=4", {}, s});
    }
    {
        ModelSpec s;
        s.id = "I2";
        s.family = Family::SubI;
        s.constants = {1.0, 1.0, -1.0, -1.0, -1.0};
        s.exponents.rule = ExponentRule::TrigTriple;
        s.offsets = shared_x();
        add({"I2", "three-power trimmed form, sin/cos exponents; k=4", {}, s});
    }
    {
        ModelSpec s;
        s.id = "J1";
        s.family = Family::SubJ;
        s.constants = {1.0, 1.0, 1.0};
        s.exponents.rule = ExponentRule::ArcsinPair;
        s.offsets.rule = OffsetRule::CosinePair;
        add({"J1", "diagonal multiplier pair cos^2 x, cos(2x)/2; k=17/4", {}, s});
    }
    {
        ModelSpec s;
        s.id = "D1";
        s.family = Family::ModelD1;
        s.offsets.h_rule = HRule::Exp;
        add({"D1", "square-root diagonal, reciprocal off-diagonal pair; k=4", {}, s});
    }
    {
        ModelSpec s;
        s.id = "D2";
        s.family = Family::ModelD2;
        s.exponents.rule = ExponentRule::Constants;
        s.exponents.values = {0.25, 0.75};
        s.offsets = shared_x();
        add({"D2", "complex diagonal X +- ci, split-power off-diagonals; k=4", {}, s});
    }
    {
        ModelSpec s;
        s.id = "D3";
        s.family = Family::ModelD3;
        s.offsets.rule = OffsetRule::UnitTrigPair;
        add({"D3", "symmetric square-root off-diagonals; k=1", {}, s});
    }
    {
        ModelSpec s;
        s.id = "R";
        s.family = Family::ModelR;
        s.exponents.rule = ExponentRule::SplitSum;
        s.exponents.p1 = 4.0;
        s.exponents.p2 = 0.0;
        s.exponents.p3 = 4.0;
        s.driver.kind = DriverKind::NormalSquares;
        add({"R", "normal-squares diagonal; spacing Weibull(2 sigma_R^2, q+1)", {}, s});
    }
    {
        ModelSpec s;
        s.id = "L";
        s.family = Family::ModelL;
        add({"L", "independent off-diagonals via sin^2 factors; k=1", {}, s});
    }
    {
        ModelSpec s;
        s.id = "ADD1";
        s.family = Family::Additive1;
        add({"ADD1", "additive model; D=Y^2 at q=0, qY^(2/(q+1)) otherwise", {}, s});
    }
    {
        ModelSpec s;
        s.id = "ADD2";
        s.family = Family::Additive2;
        s.exponents.rule = ExponentRule::Constants;
        s.exponents.values = {0.5, 1.5};
        add({"ADD2", "additive model; D=4Y^2 at q=0, 4q^2 Y^(2/(q+1)) otherwise", {}, s});
    }
    {
        ModelSpec s;
        s.id = "P0";
        s.family = Family::PoissonPreset;
        s.q = 0.0;
        s.constants = {-2.0, 0.0, 1.0, 0.0, 1.0, -1.0, -1.0, 0.0};
        add({"P0", "q=0 preset with Poisson spacings; k=1", 0.0, s});
    }
    {
        ModelSpec s;
        s.id = "W1";
        s.family = Family::SubA;
        s.q = 1.0;
        s.constants = {1.0, 1.0, 1.0, -1.0};
        s.exponents.rule = ExponentRule::BrodyPair;
        s.offsets = shared_x();
        add({"W1", "q=1 preset with Wigner spacings; k=8", 1.0, s});
    }
    return cat;
}

}  // namespace detail

inline const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> cat = detail::make_catalog();
    return cat;
}

inline const CatalogEntry* find_catalog_entry(const std::string& id) {
    for (const auto& e : catalog())
        if (e.id == id) return &e;
    return nullptr;
}

// Instantiate a catalogued model at Brody parameter q. For pinned-q presets
// (P0, W1) the requested q must match the pin.
inline ModelSpec make_model(const std::string& id, double q) {
    const CatalogEntry* e = find_catalog_entry(id);
    if (!e) throw std::invalid_argument("unknown model id: " + id);
    if (e->pinned_q && *e->pinned_q != q)
        throw std::invalid_argument("model " + id + " pins q=" + std::to_string(*e->pinned_q));
    ModelSpec spec = e->base;
    spec.q = q;
    return spec;
}

}  // namespace brodymat
