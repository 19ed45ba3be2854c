#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "kernmink/kernels.hpp"
#include "kernmink/random.hpp"
#include "oracles.hpp"

using namespace kernmink;

namespace {

std::vector<KernelSpec> table_kernels() {
    return {KernelSpec::hellinger(), KernelSpec::chi_square(), KernelSpec::intersection(),
            KernelSpec::jensen_shannon()};
}

std::vector<KernelSpec> all_kernels() {
    auto specs = table_kernels();
    specs.push_back(KernelSpec::hein_bousquet(1.0, 1.0));
    specs.push_back(KernelSpec::hein_bousquet(1.0, 0.5));
    specs.push_back(KernelSpec::hein_bousquet(2.0, 0.7));
    specs.push_back(KernelSpec::hein_bousquet(1.0, -1.0));
    specs.push_back(KernelSpec::hein_bousquet(3.0, -2.0));
    return specs;
}

} // namespace

TEST_SUITE("kernels") {

TEST_CASE("closed-form evaluations") {
    const std::vector<double> x12{1.0, 2.0}, y21{2.0, 1.0};
    CHECK(kernel_eval(KernelSpec::intersection(), x12, y21) == doctest::Approx(2.0));

    const std::vector<double> one{1.0};
    CHECK(kernel_eval(KernelSpec::chi_square(), one, one) == doctest::Approx(1.0));

    const std::vector<double> x14{1.0, 4.0}, y41{4.0, 1.0};
    CHECK(kernel_eval(KernelSpec::hellinger(), x14, y41) == doctest::Approx(4.0));

    // JS at identical scalars equals the scalar itself
    CHECK(kernel_scalar(KernelSpec::jensen_shannon(), 3.0, 3.0) == doctest::Approx(3.0));
}

TEST_CASE("argument validation") {
    const std::vector<double> a{1.0, 2.0}, b{1.0};
    CHECK_THROWS_AS(kernel_eval(KernelSpec::chi_square(), a, b), std::invalid_argument);
    CHECK_THROWS_AS(kernel_scalar(KernelSpec::chi_square(), -1.0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(KernelSpec::hein_bousquet(0.5, 0.5).validate(), std::invalid_argument);
    CHECK_THROWS_AS(KernelSpec::hein_bousquet(2.0, -0.5).validate(), std::invalid_argument);
    CHECK_THROWS_AS(KernelSpec::hein_bousquet(2.0, 3.0).validate(), std::invalid_argument);
    const auto inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(KernelSpec::hein_bousquet(inf, -inf).validate(), std::invalid_argument);
    CHECK_NOTHROW(KernelSpec::hein_bousquet(inf, 1.0).validate());
    CHECK_NOTHROW(KernelSpec::hein_bousquet(1.0, -inf).validate());
}

TEST_CASE("zero handling") {
    for (const auto& spec : all_kernels()) {
        CAPTURE(to_string(spec.kind));
        CHECK(kernel_scalar(spec, 0.0, 0.0) == 0.0);
        CHECK(kernel_scalar(spec, 0.0, 2.5) == doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("Hein-Bousquet at alpha = beta = 1 reproduces Jensen-Shannon") {
    const auto hb = KernelSpec::hein_bousquet(1.0, 1.0);
    const auto js = KernelSpec::jensen_shannon();
    auto rng = make_rng(42);
    for (int t = 0; t < 500; ++t) {
        const double a = uniform(rng, 0.0, 5.0);
        const double b = uniform(rng, 0.0, 5.0);
        CHECK(kernel_scalar(hb, a, b) == doctest::Approx(kernel_scalar(js, a, b)).epsilon(1e-9));
    }
    // zero edge of the limit formula
    CHECK(kernel_scalar(hb, 2.0, 0.0) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("Hein-Bousquet at (1, 1/2) reproduces Hellinger") {
    const auto hb = KernelSpec::hein_bousquet(1.0, 0.5);
    auto rng = make_rng(7);
    for (int t = 0; t < 500; ++t) {
        const double a = uniform(rng, 0.0, 5.0);
        const double b = uniform(rng, 0.0, 5.0);
        CHECK(kernel_scalar(hb, a, b) == doctest::Approx(std::sqrt(a * b)).epsilon(1e-9));
    }
}

TEST_CASE("Hein-Bousquet at (inf, 1) reproduces the intersection kernel") {
    const auto hb = KernelSpec::hein_bousquet(std::numeric_limits<double>::infinity(), 1.0);
    auto rng = make_rng(11);
    for (int t = 0; t < 500; ++t) {
        const double a = uniform(rng, 0.0, 5.0);
        const double b = uniform(rng, 0.0, 5.0);
        CHECK(kernel_scalar(hb, a, b) == doctest::Approx(std::min(a, b)).epsilon(1e-9));
    }
}

TEST_CASE("Hein-Bousquet at (1, -1) is proportional to the chi-square kernel") {
    const auto hb = KernelSpec::hein_bousquet(1.0, -1.0);
    const auto chi = KernelSpec::chi_square();
    auto rng = make_rng(13);
    // the family normalization fixes the scale; measure it once, then check
    // strict proportionality and positivity
    const double scale = kernel_scalar(hb, 1.0, 1.0) / kernel_scalar(chi, 1.0, 1.0);
    CHECK(scale > 0.0);
    for (int t = 0; t < 500; ++t) {
        const double a = uniform(rng, 0.01, 5.0);
        const double b = uniform(rng, 0.01, 5.0);
        CHECK(kernel_scalar(hb, a, b) ==
              doctest::Approx(scale * kernel_scalar(chi, a, b)).epsilon(1e-9));
    }
}

TEST_CASE("signature closed forms and the lambda = 0 anchor") {
    CHECK(signature(KernelSpec::chi_square(), 0.0) == doctest::Approx(1.0));
    CHECK(signature(KernelSpec::intersection(), 0.0) == doctest::Approx(1.0));
    for (const auto& spec : all_kernels()) {
        CAPTURE(to_string(spec.kind));
        CHECK(std::abs(signature(spec, 0.0) - kernel_scalar(spec, 1.0, 1.0)) <= 1e-12);
    }
}

TEST_CASE("signature equals the kernel on the unit hyperbola") {
    auto rng = make_rng(3);
    for (const auto& spec : all_kernels()) {
        CAPTURE(to_string(spec.kind));
        CAPTURE(spec.alpha);
        CAPTURE(spec.beta);
        for (int t = 0; t < 200; ++t) {
            const double lambda = uniform(rng, -10.0, 10.0);
            const double direct =
                kernel_scalar(spec, std::exp(0.5 * lambda), std::exp(-0.5 * lambda));
            CHECK(std::abs(signature(spec, lambda) - direct) <= 1e-9);
        }
    }
}

TEST_CASE("homogeneity of degree one") {
    auto rng = make_rng(5);
    for (const auto& spec : all_kernels()) {
        CAPTURE(to_string(spec.kind));
        for (int trial = 0; trial < 50; ++trial) {
            const double a = uniform(rng, 0.0, 3.0);
            const double b = uniform(rng, 0.0, 3.0);
            const double k1 = kernel_scalar(spec, a, b);
            for (double t : {0.5, 2.0, 10.0}) {
                const double kt = kernel_scalar(spec, t * a, t * b);
                CHECK(kt == doctest::Approx(t * k1).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("symmetry is exact") {
    auto rng = make_rng(9);
    for (const auto& spec : all_kernels()) {
        for (int t = 0; t < 100; ++t) {
            const double a = uniform(rng, 0.0, 4.0);
            const double b = uniform(rng, 0.0, 4.0);
            CHECK(kernel_scalar(spec, a, b) == kernel_scalar(spec, b, a));
        }
    }
}

TEST_CASE("spectrum closed forms") {
    CHECK(spectrum(KernelSpec::chi_square(), 0.0) == doctest::Approx(1.0));
    CHECK(spectrum(KernelSpec::jensen_shannon(), 0.0) ==
          doctest::Approx(2.0 / std::log(4.0)).epsilon(1e-12));
    CHECK(spectrum(KernelSpec::intersection(), 0.0) ==
          doctest::Approx(2.0 / std::numbers::pi).epsilon(1e-12));
    CHECK_THROWS_AS(spectrum(KernelSpec::hellinger(), 0.0), std::invalid_argument);
}

TEST_CASE("spectrum matches quadrature of the signature") {
    // independent Simpson quadrature of the inverse Fourier transform
    for (const auto& spec : {KernelSpec::chi_square(), KernelSpec::jensen_shannon(),
                             KernelSpec::intersection()}) {
        CAPTURE(to_string(spec.kind));
        auto kappa = [&](double l) { return signature(spec, l); };
        for (double omega : {0.0, 0.25, 0.5, 1.0}) {
            const double numeric = oracles::spectrum_quadrature(kappa, omega);
            CHECK(std::abs(spectrum(spec, omega) - numeric) <= 1e-6);
        }
    }
    // the chi-square anchor from the quadrature oracle
    const double numeric = oracles::spectrum_quadrature(
        [](double l) { return 1.0 / std::cosh(0.5 * l); }, 0.25);
    CHECK(std::abs(numeric - 1.0 / std::cosh(std::numbers::pi / 4.0)) <= 1e-6);
    CHECK(std::abs(spectrum(KernelSpec::chi_square(), 0.25) - numeric) <= 1e-6);
}

TEST_CASE("Hein-Bousquet spectrum: quadrature agrees with the oracle and stays nonnegative") {
    for (const auto& hb : {KernelSpec::hein_bousquet(2.0, 1.0),
                           KernelSpec::hein_bousquet(3.0, -2.0)}) {
        CAPTURE(hb.alpha);
        CAPTURE(hb.beta);
        auto kappa = [&](double l) { return signature(hb, l); };
        for (double omega : {0.0, 0.25, 0.5, 1.0, 2.0}) {
            const double rho = spectrum(hb, omega);
            CHECK(rho >= 0.0);
            CHECK(std::abs(rho - oracles::spectrum_quadrature(kappa, omega)) <= 1e-5);
        }
    }
    // the signature decays like exp(-(beta - 1/2) lambda) as beta drops
    // toward 1/2, so the fixed 40-window leaves a visible truncation tail
    const auto slow = KernelSpec::hein_bousquet(2.0, 0.7);
    auto kappa = [&](double l) { return signature(slow, l); };
    for (double omega : {0.0, 0.5, 1.0}) {
        const double rho = spectrum(slow, omega);
        CHECK(rho >= 0.0);
        CHECK(std::abs(rho - oracles::spectrum_quadrature(kappa, omega, 120.0, 48000)) <= 2e-3);
    }
}

TEST_CASE("spectrum is nonnegative on a probe grid") {
    for (const auto& spec : {KernelSpec::chi_square(), KernelSpec::jensen_shannon(),
                             KernelSpec::intersection(), KernelSpec::hein_bousquet(1.0, 0.5),
                             KernelSpec::hein_bousquet(1.5, 1.0)}) {
        for (int i = 0; i <= 40; ++i) {
            const double omega = 0.25 * i;
            CHECK(spectrum(spec, omega) >= 0.0);
        }
    }
}

} // TEST_SUITE
