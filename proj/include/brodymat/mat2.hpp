#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

// Pure value semantics throughout; every operation is side-effect free.

namespace brodymat {

using Complex = std::complex<double>;

// 2x2 complex matrix. Entries are expected to be finite; build paths check.
struct Matrix2 {
    Complex m11, m12, m21, m22;
};

inline bool is_finite(const Complex& c) {
    return std::isfinite(c.real()) && std::isfinite(c.imag());
}

inline bool is_finite(const Matrix2& m) {
    return is_finite(m.m11) && is_finite(m.m12) && is_finite(m.m21) && is_finite(m.m22);
}

inline Complex trace(const Matrix2& m) { return m.m11 + m.m22; }

inline Complex determinant(const Matrix2& m) { return m.m11 * m.m22 - m.m12 * m.m21; }

// Discriminant of the characteristic polynomial: Tr(M)^2 - 4 det(M).
inline Complex discriminant(const Matrix2& m) {
    const Complex tr = trace(m);
    return tr * tr - 4.0 * determinant(m);
}

inline double frobenius_sq(const Matrix2& m) {
    return std::norm(m.m11) + std::norm(m.m12) + std::norm(m.m21) + std::norm(m.m22);
}

// Scale of the individual products entering the discriminant; bounds the
// rounding noise of the computed discriminant (|D_fp - D| <~ eps * this).
inline double discriminant_term_scale(const Matrix2& m) {
    const double tr = std::abs(trace(m));
    return tr * tr + 4.0 * (std::abs(m.m11) * std::abs(m.m22) + std::abs(m.m12) * std::abs(m.m21));
}

enum class PairKind { RealPair, ConjugatePair, GenericComplex };

struct EigenPair {
    Complex lambda_plus;   // carries the +sqrt(D) branch
    Complex lambda_minus;
    PairKind kind;
};

// Default absolute tolerance on imaginary parts when classifying /
// discarding round-off; an order of magnitude above observed noise.
inline constexpr double kCleanTol = 1e-12;

inline PairKind classify_pair(const Complex& lp, const Complex& lm, double tol) {
    if (std::fabs(lp.imag()) <= tol && std::fabs(lm.imag()) <= tol) return PairKind::RealPair;
    if (std::fabs(lp.real() - lm.real()) <= tol && std::fabs(lp.imag() + lm.imag()) <= tol)
        return PairKind::ConjugatePair;
    return PairKind::GenericComplex;
}

// Closed-form eigenvalues (Tr +/- sqrt(D)) / 2 with the principal branch.
inline EigenPair eigenvalues(const Matrix2& m, double tol = kCleanTol) {
    const Complex tr = trace(m);
    const Complex root = std::sqrt(discriminant(m));
    const Complex lp = 0.5 * (tr + root);
    const Complex lm = 0.5 * (tr - root);
    return EigenPair{lp, lm, classify_pair(lp, lm, tol)};
}

// Drop spurious imaginary parts below tol (round-off from complex-entry
// models whose eigenvalues are exactly real).
inline EigenPair clean_spurious_imag(const EigenPair& p, double tol = kCleanTol) {
    if (std::fabs(p.lambda_plus.imag()) < tol && std::fabs(p.lambda_minus.imag()) < tol) {
        return EigenPair{Complex(p.lambda_plus.real(), 0.0),
                         Complex(p.lambda_minus.real(), 0.0), PairKind::RealPair};
    }
    return p;
}

// Spacing between the two eigenvalues: |difference of real parts| for a real
// pair, 2|Im| for a complex-conjugate pair. No spacing is defined for a
// generic complex pair.
inline double spacing(const EigenPair& p) {
    switch (p.kind) {
        case PairKind::RealPair:
            return std::fabs(p.lambda_plus.real() - p.lambda_minus.real());
        case PairKind::ConjugatePair:
            return 2.0 * std::fabs(p.lambda_plus.imag());
        case PairKind::GenericComplex:
            break;
    }
    throw std::domain_error("spacing: unsupported spacing mode (generic complex pair)");
}

}  // namespace brodymat
