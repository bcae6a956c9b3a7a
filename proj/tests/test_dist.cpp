#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "brodymat/dist.hpp"
#include "support.hpp"

using brodymat::brody_alpha;
using brodymat::brody2_alpha;
using brodymat::RandomStream;
using brodymat::ScaleParams;
using brodymat::SpacingLaw;

namespace {

std::vector<SpacingLaw> mean_scaled_laws() {
    return {SpacingLaw::poisson(),      SpacingLaw::wigner(),     SpacingLaw::brody(0.0),
            SpacingLaw::brody(0.37),    SpacingLaw::brody(1.0),   SpacingLaw::semi_poisson(),
            SpacingLaw::ginibre(),      SpacingLaw::brody2(0.0),  SpacingLaw::brody2(0.61),
            SpacingLaw::brody2(1.0)};
}

std::vector<SpacingLaw> all_laws() {
    auto laws = mean_scaled_laws();
    laws.push_back(SpacingLaw::weibull(1.0, 1.0));
    laws.push_back(SpacingLaw::weibull(2.0, 0.5));
    laws.push_back(SpacingLaw::weibull(0.7, 2.5));
    laws.push_back(SpacingLaw::generalized_gamma(1.0, 2.0, 1.0));
    laws.push_back(SpacingLaw::generalized_gamma(1.5, 0.8, 1.7));
    return laws;
}

}  // namespace

TEST_CASE("scale parameters reject non-positive values") {
    CHECK_NOTHROW(ScaleParams(1.0, 2.0, 0.5));
    CHECK_THROWS_AS(ScaleParams(0.0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(ScaleParams(1.0, -2.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(ScaleParams(1.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("inverse-transform kernels at exact uniforms") {
    CHECK(brodymat::exponential_from_uniform(1.0, 1.0) == 0.0);
    CHECK(brodymat::exponential_from_uniform(std::exp(-1.0), 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(brodymat::exponential_from_uniform(std::exp(-1.0), std::log(2.0)) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-15));
    // two unit-exponential draws of value 1 each
    CHECK(brodymat::gamma2_from_uniforms(std::exp(-1.0), std::exp(-1.0), 1.0) ==
          doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("gamma2 sample mean obeys the law of large numbers") {
    RandomStream rng(3);
    const double sigma_g = 10.0;
    double sum = 0.0;
    const int n = 1'000'000;
    for (int i = 0; i < n; ++i) sum += brodymat::sample_gamma2(rng, sigma_g);
    CHECK(std::fabs(sum / n - 2.0 * sigma_g) < 0.1);
}

TEST_CASE("brody rate constants") {
    CHECK(std::fabs(brody_alpha(0.0) - 1.0) <= 1e-12);
    CHECK(std::fabs(brody_alpha(1.0) - brodymat::kPi / 4.0) <= 1e-12);
    CHECK(std::fabs(brody2_alpha(0.0) - 2.0) <= 1e-12);
    CHECK(std::fabs(brody2_alpha(1.0) - 9.0 * brodymat::kPi / 16.0) <= 1e-12);
}

TEST_CASE("pdf values at pinned points") {
    CHECK(SpacingLaw::brody(0.0).pdf(1.0) == doctest::Approx(0.36787944117144233).epsilon(1e-13));
    CHECK(SpacingLaw::brody(1.0).pdf(1.0) == doctest::Approx(0.7161859363405692).epsilon(1e-13));
    CHECK(SpacingLaw::brody2(0.0).pdf(1.0) == doctest::Approx(0.5413411329464508).epsilon(1e-13));
    CHECK(SpacingLaw::brody(0.4).pdf(0.0) == 0.0);
    CHECK(SpacingLaw::brody2(0.0).pdf(0.0) == 0.0);
    CHECK(SpacingLaw::wigner().pdf(0.0) == 0.0);
    // Weibull density at zero: 1/sigma for tau=1, +inf sentinel below, 0 above.
    CHECK(SpacingLaw::weibull(2.0, 1.0).pdf(0.0) == doctest::Approx(0.5));
    CHECK(std::isinf(SpacingLaw::weibull(1.0, 0.5).pdf(0.0)));
    CHECK(SpacingLaw::weibull(1.0, 2.0).pdf(0.0) == 0.0);
}

TEST_CASE("cdf values at pinned points") {
    CHECK(SpacingLaw::brody(0.7).cdf(0.0) == 0.0);
    CHECK(SpacingLaw::brody(0.0).cdf(std::log(2.0)) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(SpacingLaw::brody2(0.0).cdf(0.0) == 0.0);
    const double z = 1.0;
    CHECK(SpacingLaw::brody2(0.0).cdf(z) ==
          doctest::Approx(1.0 - (1.0 + 2.0 * z) * std::exp(-2.0 * z)).epsilon(1e-14));
}

TEST_CASE("cdf antiderivatives agree with quadrature of the pdf") {
    for (const auto& law : all_laws()) {
        for (double z : {0.3, 0.9, 1.7}) {
            const double mass = testsupport::integrate_from_zero(
                [&](double t) { return t == 0.0 ? 0.0 : law.pdf(t); }, z, 1e-13);
            CHECK_MESSAGE(std::fabs(mass - law.cdf(z)) < 1e-9,
                          law.name() << " cdf mismatch at z=" << z);
        }
    }
}

TEST_CASE("means at pinned points") {
    CHECK(SpacingLaw::weibull(1.0, 1.0).mean() == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(SpacingLaw::brody(0.7).mean() == 1.0);
    CHECK(SpacingLaw::generalized_gamma(1.0, 2.0, 1.0).mean() ==
          doctest::Approx(2.0).epsilon(1e-13));
    // Weibull mean formula vs quadrature for a non-trivial parameter pair
    const auto w = SpacingLaw::weibull(2.0, 1.5);
    const double quad = testsupport::integrate_from_zero(
        [&](double z) { return z == 0.0 ? 0.0 : z * w.pdf(z); }, testsupport::upper_limit(w, 1e-14),
        1e-13);
    CHECK(w.mean() == doctest::Approx(quad).epsilon(1e-10));
}

TEST_CASE("every law integrates to one; mean-scaled laws have unit mean") {
    for (const auto& law : all_laws()) {
        const double zhi = testsupport::upper_limit(law, 1e-13);
        const double mass = testsupport::integrate_from_zero(
            [&](double z) { return z == 0.0 ? 0.0 : law.pdf(z); }, zhi, 1e-13);
        CHECK_MESSAGE(std::fabs(mass - 1.0) < 1e-9, law.name() << " does not normalize");
    }
    for (const auto& law : mean_scaled_laws()) {
        const double zhi = testsupport::upper_limit(law, 1e-14);
        const double mean = testsupport::integrate_from_zero(
            [&](double z) { return z == 0.0 ? 0.0 : z * law.pdf(z); }, zhi, 1e-13);
        CHECK_MESSAGE(std::fabs(mean - 1.0) < 1e-9, law.name() << " mean is not one");
    }
}

TEST_CASE("finite-difference derivative of the cdf matches the pdf") {
    RandomStream rng(19);
    auto check_law = [](const SpacingLaw& law) {
        for (int i = 1; i <= 100; ++i) {
            const double z = 0.05 + 4.0 * i / 101.0;
            const double h = 1e-5;
            const double num = (law.cdf(z + h) - law.cdf(z - h)) / (2.0 * h);
            CHECK_MESSAGE(std::fabs(num - law.pdf(z)) < 1e-6,
                          law.name() << " derivative mismatch at z=" << z);
        }
    };
    for (int rep = 0; rep < 10; ++rep) {
        const double q = rng.uniform_open01();
        check_law(SpacingLaw::brody(q));
        check_law(SpacingLaw::brody2(q));
        check_law(SpacingLaw::weibull(0.6 + 2.0 * rng.uniform_open01(),
                                      0.6 + 2.0 * rng.uniform_open01()));
        check_law(SpacingLaw::generalized_gamma(0.7 + rng.uniform_open01(),
                                                0.7 + 1.5 * rng.uniform_open01(),
                                                0.7 + 1.5 * rng.uniform_open01()));
    }
    check_law(SpacingLaw::poisson());
    check_law(SpacingLaw::wigner());
    check_law(SpacingLaw::semi_poisson());
    check_law(SpacingLaw::ginibre());
}

TEST_CASE("endpoint collapse of the interpolating families") {
    double d1 = 0.0, d2 = 0.0, d3 = 0.0, d4 = 0.0;
    const auto b0 = SpacingLaw::brody(0.0), b1 = SpacingLaw::brody(1.0);
    const auto s0 = SpacingLaw::brody2(0.0), s1 = SpacingLaw::brody2(1.0);
    const auto poisson = SpacingLaw::poisson(), wigner = SpacingLaw::wigner();
    const auto sp = SpacingLaw::semi_poisson(), gin = SpacingLaw::ginibre();
    for (int i = 0; i <= 2560; ++i) {
        const double z = 5.0 * i / 2560.0;
        d1 = std::max(d1, std::fabs(b0.pdf(z) - poisson.pdf(z)));
        d2 = std::max(d2, std::fabs(b1.pdf(z) - wigner.pdf(z)));
        d3 = std::max(d3, std::fabs(s0.pdf(z) - sp.pdf(z)));
        d4 = std::max(d4, std::fabs(s1.pdf(z) - gin.pdf(z)));
    }
    CHECK(d1 < 1e-12);
    CHECK(d2 < 1e-12);
    CHECK(d3 < 1e-12);
    CHECK(d4 < 1e-12);
}

TEST_CASE("samplers pass a KS test against their exact cdfs") {
    const int n = 100'000;
    const double threshold = 1.63 / std::sqrt(static_cast<double>(n));

    RandomStream rng(101);
    std::vector<double> draws(n);
    const double sigma_e = std::log(2.0);
    for (auto& d : draws) d = brodymat::sample_exponential(rng, sigma_e);
    const double ks_exp = testsupport::ks_against(
        draws, [&](double y) { return -std::expm1(-y / sigma_e); });
    CHECK(ks_exp < threshold);

    const double sigma_g = 2.5;
    for (auto& d : draws) d = brodymat::sample_gamma2(rng, sigma_g);
    const double ks_g2 = testsupport::ks_against(draws, [&](double y) {
        return 1.0 - (1.0 + y / sigma_g) * std::exp(-y / sigma_g);
    });
    CHECK(ks_g2 < threshold);
}

TEST_CASE("law parameter validation") {
    CHECK_THROWS_AS(SpacingLaw::brody(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(SpacingLaw::brody(1.1), std::invalid_argument);
    CHECK_THROWS_AS(SpacingLaw::weibull(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(SpacingLaw::generalized_gamma(1.0, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(SpacingLaw::poisson().pdf(-0.5), std::invalid_argument);
}
