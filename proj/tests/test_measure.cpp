#include <catch_amalgamated.hpp>

#include "psep/error.hpp"
#include "psep/measure.hpp"
#include "psep/rng.hpp"
#include "psep/stats.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <numbers>

using namespace psep;
using Catch::Matchers::WithinAbs;

namespace {
constexpr double pi = std::numbers::pi;

// Shifted-disk exit density written out directly, independent of the library.
// xc is the signed distance to the nearer endpoint of (-1, 1), as supplied by
// tanh-sinh, so 1 - x^2 keeps full precision near the singularities.
double density_oracle(double kappa, double x, double xc) {
    const double k2 = kappa * kappa;
    const double gap = std::abs(xc);
    return (1 - k2 * k2) / (pi * ((1 - k2) * (1 - k2) + 4 * k2 * x * x) * std::sqrt(gap * (2 - gap)));
}
double density_oracle(double kappa, double x) { return density_oracle(kappa, x, 1 - std::abs(x)); }
}  // namespace

TEST_CASE("cdf at symmetric points", "[measure][cdf]") {
    CHECK_THAT(cdf(Measure::uniform(-1, 1), 0.0), WithinAbs(0.5, 1e-15));
    CHECK_THAT(cdf(Measure::arcsine(), 0.0), WithinAbs(0.5, 1e-15));
    CHECK_THAT(cdf(Measure::shifted_disk_exit(0.7), 0.0), WithinAbs(0.5, 1e-14));
    const Measure two = Measure::atomic({{-1, 0.5}, {1, 0.5}});
    CHECK(cdf(two, -1.0) == 0.5);
    CHECK(cdf(two, -1.0 - 1e-12) == 0.0);
    CHECK(cdf(two, 1.0) == 1.0);
}

TEST_CASE("quantile examples and inf convention", "[measure][quantile]") {
    CHECK_THAT(quantile(Measure::uniform(-1, 1), 0.25), WithinAbs(-0.5, 1e-15));
    for (double u : {0.1, 0.3, 0.5, 0.77})
        CHECK_THAT(quantile(Measure::arcsine(), u), WithinAbs(-std::cos(pi * u), 1e-14));
    CHECK(quantile(Measure::atomic({{-1, 0.5}, {1, 0.5}}), 0.5) == -1.0);
    CHECK(quantile(Measure::atomic({{-1, 0.5}, {1, 0.5}}), 0.5000001) == 1.0);

    const Measure e = Measure::empirical({3.0, -1.0, 2.0, 0.0});
    CHECK(quantile(e, 0.25) == -1.0);  // ceil(uM) = 1
    CHECK(quantile(e, 0.26) == 0.0);
    CHECK(quantile(e, 1.0 - 1e-12) == 3.0);

    CHECK_THROWS_AS(quantile(Measure::uniform(-1, 1), 0.0), DomainError);
    CHECK_THROWS_AS(quantile(Measure::uniform(-1, 1), 1.0), DomainError);
    CHECK_THROWS_AS(quantile(Measure::uniform(-1, 1), -0.2), DomainError);
}

TEST_CASE("quantile inverts cdf for continuous kinds", "[measure][quantile][property]") {
    const Measure ms[] = {Measure::uniform(-2, 3), Measure::arcsine(), Measure::shifted_disk_exit(0.0),
                          Measure::shifted_disk_exit(0.5), Measure::shifted_disk_exit(0.95),
                          Measure::piecewise_density({-1, 0, 2}, {2.0 / 3, 1.0 / 6})};
    for (const Measure& m : ms) {
        double prev = -INFINITY;
        for (int i = 1; i < 200; ++i) {
            const double u = i / 200.0;
            const double x = quantile(m, u);
            CHECK_THAT(cdf(m, x), WithinAbs(u, 1e-10));
            CHECK(x >= prev);
            prev = x;
        }
    }
}

TEST_CASE("moments", "[measure][moment]") {
    CHECK_THAT(moment(Measure::uniform(-1, 1), 2), WithinAbs(1.0 / 3, 1e-15));
    CHECK_THAT(variance(Measure::arcsine()), WithinAbs(0.5, 1e-15));
    CHECK(moment(Measure::atomic({{0, 1}}), 2) == 0.0);
    CHECK(variance(Measure::atomic({{0, 1}})) == 0.0);

    boost::math::quadrature::tanh_sinh<double> ts;
    for (double k : {0.0, 0.3, 0.5, 0.9}) {
        const double closed = (1 - k * k) / 2;
        const double quad = ts.integrate([k](double x, double xc) { return x * x * density_oracle(k, x, xc); }, -1.0, 1.0, 1e-14);
        CHECK_THAT(quad, WithinAbs(closed, 1e-10));
        CHECK_THAT(moment(Measure::shifted_disk_exit(k), 2), WithinAbs(closed, 1e-12));
        const double q3 =
            ts.integrate([k](double x, double xc) { return std::pow(std::abs(x), 3) * density_oracle(k, x, xc); }, -1.0, 1.0, 1e-14);
        CHECK_THAT(moment(Measure::shifted_disk_exit(k), 3), WithinAbs(q3, 1e-9));
    }

    const Measure e = Measure::empirical({-2, 0, 1, 1});
    CHECK_THAT(mean(e), WithinAbs(0.0, 1e-15));
    CHECK_THAT(variance(e), WithinAbs(1.5, 1e-15));
}

TEST_CASE("shifted-disk density normalization and library density", "[measure][density]") {
    boost::math::quadrature::tanh_sinh<double> ts;
    for (double k : {0.0, 0.5, 0.9, 0.99}) {
        const double mass = ts.integrate([k](double x, double xc) { return density_oracle(k, x, xc); }, -1.0, 1.0, 1e-14);
        CHECK_THAT(mass, WithinAbs(1.0, 1e-8));
        for (double x : {-0.9, -0.2, 0.0, 0.4})
            CHECK_THAT(shifted_disk_density(k, x), WithinAbs(density_oracle(k, x), 1e-12));
    }
}

TEST_CASE("quantile-fed uniforms reproduce the second moment", "[measure][property]") {
    const Measure ms[] = {Measure::uniform(-1, 1), Measure::shifted_disk_exit(0.5),
                          Measure::atomic({{-2, 0.25}, {0, 0.25}, {1, 0.5}})};
    for (const Measure& m : ms) {
        Rng rng(stream_seed(7, 11, 0));
        std::vector<double> sq(100000);
        for (double& v : sq) {
            double u;
            do u = rng.uniform();
            while (u == 0.0);
            const double x = quantile(m, u);
            v = x * x;
        }
        const SampleStats st = sample_stats(sq);
        CHECK(std::abs(st.mean - moment(m, 2)) <= 4 * st.mean_se);
    }
}

TEST_CASE("centering", "[measure][centered]") {
    CHECK(is_centered(Measure::uniform(-1, 1), 1e-10));
    CHECK_FALSE(is_centered(Measure::uniform(0, 2), 1e-10));
    CHECK(is_centered(Measure::empirical({-1, 0, 1}), 1e-12));
    CHECK(is_centered(Measure::shifted_disk_exit(0.8)));
}

TEST_CASE("schlicht normalization", "[measure][schlicht]") {
    CHECK_THAT(schlicht_normalization(Measure::arcsine()), WithinAbs(-1.0, 1e-12));
    CHECK(schlicht_normalization(Measure::atomic({{0, 1}})) == 0.0);
    CHECK_THAT(schlicht_normalization(Measure::uniform(-1, 1)), WithinAbs(-8 / (pi * pi), 1e-12));
}

TEST_CASE("validation", "[measure][errors]") {
    CHECK_THROWS_AS(Measure::uniform(1, -1), DomainError);
    CHECK_THROWS_AS(Measure::shifted_disk_exit(1.0), DomainError);
    CHECK_THROWS_AS(Measure::shifted_disk_exit(-0.1), DomainError);
    CHECK_THROWS_AS(Measure::atomic({{0, 0.5}, {1, 0.4}}), DomainError);
    CHECK_THROWS_AS(Measure::atomic({{0, -0.5}, {1, 1.5}}), DomainError);
    CHECK_THROWS_AS(Measure::piecewise_density({0, 1}, {2.0}), DomainError);
    CHECK_THROWS_AS(Measure::piecewise_density({1, 0}, {1.0}), DomainError);
    CHECK_THROWS_AS(Measure::empirical({}), DomainError);

    // Repeated atom positions merge.
    const Measure m = Measure::atomic({{1, 0.25}, {-1, 0.5}, {1, 0.25}});
    const auto& atoms = std::get<kind::Atomic>(m.kind()).atoms;
    REQUIRE(atoms.size() == 2);
    CHECK(atoms[1].weight == 0.5);
}
