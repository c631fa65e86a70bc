#include <catch_amalgamated.hpp>

#include "psep/error.hpp"
#include "psep/fourier.hpp"

#include <cmath>
#include <numbers>

using namespace psep;
using Catch::Matchers::WithinAbs;

namespace {
constexpr double pi = std::numbers::pi;

double uniform_coeff(int n) { return n % 2 ? -8.0 / (pi * pi * n * n) : 0.0; }
}  // namespace

TEST_CASE("uniform and arcsine coefficients by both routes", "[fourier][coeffs]") {
    for (auto method : {CoefficientMethod::Auto, CoefficientMethod::Quadrature}) {
        const auto u = quantile_cosine_coeffs(QuantileFn(Measure::uniform(-1, 1)), 6, method);
        for (int n = 1; n <= 6; ++n) CHECK_THAT(u.coeffs(n - 1), WithinAbs(uniform_coeff(n), 1e-12));
        const auto a = quantile_cosine_coeffs(QuantileFn(Measure::arcsine()), 4, method);
        CHECK_THAT(a.coeffs(0), WithinAbs(-1.0, 1e-12));
        CHECK(a.coeffs.tail(3).cwiseAbs().maxCoeff() < 1e-12);
    }
    // Scaling law for a general interval: Q is affine in the endpoints.
    const auto w = quantile_cosine_coeffs(QuantileFn(Measure::uniform(-3, 3)), 5);
    CHECK_THAT(w.coeffs(2), WithinAbs(3 * uniform_coeff(3), 1e-14));
    CHECK(quantile_cosine_coeffs(QuantileFn(Measure::atomic({{0, 1}})), 5).coeffs.isZero());
}

TEST_CASE("step quantiles integrate exactly", "[fourier][coeffs]") {
    // Q = -1 on (0, 1/2], 1 after: a_n = -(4 / (n pi)) sin(n pi / 2).
    const auto two = quantile_cosine_coeffs(QuantileFn(Measure::atomic({{-1, 0.5}, {1, 0.5}})), 7);
    for (int n = 1; n <= 7; ++n)
        CHECK_THAT(two.coeffs(n - 1), WithinAbs(-4.0 / (n * pi) * std::sin(n * pi / 2), 1e-14));
    const auto emp = quantile_cosine_coeffs(QuantileFn(Measure::empirical({1, -1})), 7);
    CHECK((emp.coeffs - two.coeffs).cwiseAbs().maxCoeff() < 1e-14);

    // Empirical formula from order statistics, written out directly.
    const std::vector<double> xs{-1.5, -0.25, 0.0, 0.5, 1.25};
    const auto e = quantile_cosine_coeffs(QuantileFn(Measure::empirical(xs)), 9);
    const double m = static_cast<double>(xs.size());
    for (int n = 1; n <= 9; ++n) {
        double a = 0;
        for (std::size_t i = 1; i <= xs.size(); ++i)
            a += xs[i - 1] * (std::sin(n * pi * i / m) - std::sin(n * pi * (i - 1) / m));
        CHECK_THAT(e.coeffs(n - 1), WithinAbs(2.0 / (n * pi) * a, 1e-13));
    }
}

TEST_CASE("piecewise density coefficients match the quantile trace spectrum", "[fourier][coeffs]") {
    const Measure m = Measure::piecewise_density({-1, 0, 2}, {2.0 / 3, 1.0 / 6});
    const auto c = quantile_cosine_coeffs(QuantileFn(m), 12);
    constexpr Eigen::Index g = 1 << 14;
    const auto t = BoundaryTrace::sample(g, [&](double th) { return quantile(m, std::abs(th) / pi); });
    const auto s = trace_spectrum(t, 12);
    // Piecewise-linear trace with kinks: midpoint-grid aliasing is O(1/G^2).
    CHECK((c.coeffs - s.alpha).cwiseAbs().maxCoeff() < 1e-7);
}

TEST_CASE("trace spectrum of trigonometric polynomials", "[fourier][spectrum]") {
    const auto c3 = BoundaryTrace::sample(64, [](double t) { return std::cos(3 * t); });
    const auto s = trace_spectrum(c3, 5);
    Eigen::VectorXd e = Eigen::VectorXd::Zero(5);
    e(2) = 1;
    CHECK((s.alpha - e).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(s.beta.cwiseAbs().maxCoeff() < 1e-14);

    const auto mix = BoundaryTrace::sample(64, [](double t) { return 0.5 + 2 * std::sin(t) + std::cos(2 * t); });
    const auto m = trace_spectrum(mix, 5);
    CHECK_THAT(m.mean_term, WithinAbs(0.5, 1e-14));
    CHECK_THAT(m.alpha(1), WithinAbs(1.0, 1e-14));
    CHECK_THAT(m.beta(0), WithinAbs(2.0, 1e-14));
    CHECK_THAT(m.alpha(0), WithinAbs(0.0, 1e-14));

    // Degree G/2 - 1 is still exact.
    const auto top = BoundaryTrace::sample(16, [](double t) { return std::sin(7 * t); });
    CHECK_THAT(trace_spectrum(top, 7).beta(6), WithinAbs(1.0, 1e-14));
    CHECK_THROWS_AS(trace_spectrum(top, 8), DomainError);
}

TEST_CASE("rearranged uniform trace has alternating coefficients", "[fourier][spectrum]") {
    const auto t = quantile_sdr(QuantileFn(Measure::uniform(-1, 1)), 4096);
    const auto s = trace_spectrum(t, 6);
    const auto c = quantile_cosine_coeffs(QuantileFn(Measure::uniform(-1, 1)), 6);
    // Aliases of mode n at G -+ n: bound sum_k 8/(pi^2 (kG -+ n)^2).
    const double alias = 2 * 8 / (pi * pi) * 1.7 / std::pow(4096.0 - 6, 2);
    for (int n = 1; n <= 6; ++n) {
        const double sign = n % 2 ? -1.0 : 1.0;
        CHECK_THAT(s.alpha(n - 1), WithinAbs(sign * c.coeffs(n - 1), alias));
    }
}

TEST_CASE("coefficients agree with the sampled trace for smooth kinds", "[fourier][property]") {
    constexpr Eigen::Index g = 4096;
    const Measure ms[] = {Measure::arcsine(), Measure::shifted_disk_exit(0.3), Measure::shifted_disk_exit(0.5)};
    for (const Measure& m : ms) {
        const auto c = quantile_cosine_coeffs(QuantileFn(m), 32);
        const auto t = BoundaryTrace::sample(g, [&](double th) { return quantile(m, std::abs(th) / pi); });
        const auto s = trace_spectrum(t, 32);
        CHECK((c.coeffs - s.alpha).cwiseAbs().maxCoeff() < 1e-8);
        CHECK(std::abs(s.mean_term) < 1e-6);
    }
}

TEST_CASE("Bessel and Parseval", "[fourier][property]") {
    const Measure ms[] = {Measure::uniform(-1, 1), Measure::arcsine(), Measure::shifted_disk_exit(0.5),
                          Measure::atomic({{-2, 0.25}, {0, 0.25}, {1, 0.5}})};
    for (const Measure& m : ms) {
        const auto c = quantile_cosine_coeffs(QuantileFn(m), 1000);
        // (1/pi) int Q(|theta|/pi)^2 dtheta = 2 E X^2 for a centered law.
        const double second = 2 * moment(m, 2);
        CHECK(captured_energy(c) <= second + 1e-12);
        CHECK(captured_energy(c) >= 0.99 * second);
    }
}

TEST_CASE("evaluate_series", "[fourier][evaluate]") {
    const auto a = quantile_cosine_coeffs(QuantileFn(Measure::arcsine()), 4);
    CHECK_THAT(evaluate_series(a, 0.0), WithinAbs(-1.0, 1e-14));
    CHECK_THAT(evaluate_series(a, pi / 2), WithinAbs(0.0, 1e-14));
    // At theta = pi every odd term has the same sign, so the partial-sum
    // error is exactly the tail (8 / pi^2) sum_{k > 100} (2k - 1)^-2 ~ 2e-3.
    const auto u = quantile_cosine_coeffs(QuantileFn(Measure::uniform(-1, 1)), 200);
    double tail = 0;
    for (long k = 1000000; k > 100; --k) tail += 1.0 / ((2.0 * k - 1) * (2.0 * k - 1));
    tail = 8 / (pi * pi) * (tail + 1.0 / (4 * 1000000.0));
    CHECK_THAT(1 - evaluate_series(u, pi), WithinAbs(tail, 1e-10));
    CHECK_THAT(evaluate_series(u, 0.0), WithinAbs(-1.0 + tail, 1e-10));
    CHECK(tail < 2.1e-3);
}

TEST_CASE("invalid truncation", "[fourier][errors]") {
    CHECK_THROWS_AS(quantile_cosine_coeffs(QuantileFn(Measure::arcsine()), 0), DomainError);
    CHECK_THROWS_AS(closed_form_cosine_coeffs(Measure::shifted_disk_exit(0.2), 3), UnsupportedError);
}
