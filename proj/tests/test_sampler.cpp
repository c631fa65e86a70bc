#include <catch_amalgamated.hpp>

#include "psep/error.hpp"
#include "psep/rng.hpp"
#include "psep/sampler.hpp"
#include "psep/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace psep;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
constexpr double pi = std::numbers::pi;

double arcsine_cdf(double x) { return 0.5 + std::asin(std::clamp(x, -1.0, 1.0)) / pi; }
double uniform_cdf(double x) { return std::clamp((x + 1) / 2, 0.0, 1.0); }

std::vector<double> sorted(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v;
}

PowerSeriesDomain identity() {
    PowerSeriesDomain d;
    d.coeffs = Eigen::VectorXcd::Ones(1);
    return d;
}
}  // namespace

TEST_CASE("sample statistics", "[stats]") {
    const std::vector<double> x{1, 2, 3, 4};
    const auto st = sample_stats(x);
    CHECK_THAT(st.mean, WithinAbs(2.5, 1e-15));
    CHECK_THAT(st.variance, WithinAbs(1.25, 1e-15));
    CHECK(st.mean_se > 0);

    // Two degrees of freedom: the survival function is exp(-x/2).
    const std::vector<double> obs{30, 50, 20};
    const std::vector<double> p{0.3, 0.4, 0.3};
    const auto c = chi_square_test(obs, p);
    const double stat = 0.0 + 2.5 + 100.0 / 30;
    CHECK_THAT(c.statistic, WithinRel(stat, 1e-12));
    CHECK(c.dof == 2);
    CHECK_THAT(c.p_value, WithinRel(std::exp(-stat / 2), 1e-10));

    const std::vector<double> a{0.1, 0.2, 0.3}, b{0.1, 0.2, 0.3};
    CHECK(ks_two_sample(a, b) == 0.0);
    const std::vector<double> lo{0.0, 0.1}, hi{0.5, 0.6};
    CHECK(ks_two_sample(lo, hi) == 1.0);
    const std::vector<double> one{0.0};
    CHECK_THAT(ks_statistic(one, uniform_cdf), WithinAbs(0.5, 1e-15));
}

TEST_CASE("Mobius map", "[sampler][mobius]") {
    for (double k : {0.0, 0.3, 0.9}) {
        CHECK(shifted_disk_map(k, 0.0) == std::complex<double>(0.0));
        for (int j = 0; j < 32; ++j) {
            const auto w = shifted_disk_map(k, std::polar(1.0, 2 * pi * j / 32));
            // Boundary lands on the circle of radius 1 about -kappa i.
            CHECK_THAT(std::abs(w + std::complex<double>(0, k)), WithinAbs(1.0, 1e-14));
            const auto in = shifted_disk_map(k, std::polar(0.9, 2 * pi * j / 32));
            CHECK(std::abs(in + std::complex<double>(0, k)) < 1.0);
        }
    }
}

TEST_CASE("Mobius samples", "[sampler][mobius]") {
    const auto s0 = mobius_shifted_disk_samples(0.0, 100000, 42);
    CHECK(s0.sampler == SamplerKind::Mobius);
    CHECK(s0.seed == 42);
    CHECK(ks_statistic(sorted(s0.values), arcsine_cdf) < ks_critical_1pct(1e5));

    for (double k : {0.5, 0.9}) {
        const auto s = mobius_shifted_disk_samples(k, 1000000, 42);
        const auto st = sample_stats(s.values);
        CHECK(std::abs(st.variance - (1 - k * k) / 2) <= 4 * st.variance_se);
        CHECK(std::abs(st.mean) <= 4 * st.mean_se);
        CHECK(std::abs(cdf(Measure::shifted_disk_exit(k), 0.3) -
                       std::count_if(s.values.begin(), s.values.end(), [](double v) { return v <= 0.3; }) / 1e6) < 2e-3);
    }
    CHECK_THROWS_AS(mobius_shifted_disk_samples(1.0, 10, 1), DomainError);
}

TEST_CASE("conformal samples", "[sampler][conformal]") {
    const auto id = conformal_exit_samples(identity(), 100000, 9);
    CHECK(ks_statistic(sorted(id.values), arcsine_cdf) < ks_critical_1pct(1e5));

    const auto u = conformal_exit_samples(gross_domain(Measure::uniform(-1, 1), 2048), 100000, 9);
    CHECK(ks_statistic(sorted(u.values), uniform_cdf) < ks_critical_1pct(1e5));

    PowerSeriesDomain zero;
    zero.coeffs = Eigen::VectorXcd::Zero(3);
    const auto z = conformal_exit_samples(zero, 100, 1);
    CHECK(std::all_of(z.values.begin(), z.values.end(), [](double v) { return v == 0.0; }));

    // Recovery against quantile-fed uniforms drawn from an unrelated stream.
    const Measure m = Measure::shifted_disk_exit(0.5);
    const auto c = conformal_exit_samples(gross_domain(m, 1024), 50000, 3);
    Rng rng(stream_seed(1234, 0, 0));
    std::vector<double> q(50000);
    for (double& v : q) {
        double w;
        do w = rng.uniform();
        while (w == 0.0);
        v = quantile(m, w);
    }
    const double d = ks_two_sample(sorted(c.values), sorted(q));
    CHECK(d < ks_critical_1pct(25000.0));
}

TEST_CASE("determinism and chunk independence", "[sampler][rng]") {
    const auto a = mobius_shifted_disk_samples(0.5, 200000, 7);
    const auto b = mobius_shifted_disk_samples(0.5, 200000, 7);
    CHECK(a.values == b.values);
    const auto c = mobius_shifted_disk_samples(0.5, 200000, 8);
    CHECK(a.values != c.values);
    // A shorter request is a prefix of a longer one.
    const auto p = mobius_shifted_disk_samples(0.5, 70000, 7);
    CHECK(std::equal(p.values.begin(), p.values.end(), a.values.begin()));

    const auto g = GeometricDomain::rectangle(1.0, 0.5);
    CHECK(wos_exit_samples(g, 5000, 3).values == wos_exit_samples(g, 5000, 3).values);
}

TEST_CASE("geometric domains", "[sampler][geometry]") {
    const auto d = GeometricDomain::disk(2.0);
    CHECK(d.contains(0.0));
    CHECK_FALSE(d.contains({2.1, 0}));
    CHECK_THAT(d.distance({0.5, 0}), WithinAbs(1.5, 1e-15));
    CHECK_THAT(d.area(), WithinAbs(4 * pi, 1e-14));

    const auto s = GeometricDomain::shifted_disk(0.5);
    CHECK_THAT(s.distance(0.0), WithinAbs(0.5, 1e-15));
    CHECK(std::abs(s.nearest_boundary({0, 0.3}) - std::complex<double>(0, 0.5)) < 1e-15);
    CHECK_THAT(s.area(), WithinAbs(pi, 1e-14));

    const auto r = GeometricDomain::rectangle(1.0, 0.25);
    CHECK_THAT(r.distance(0.0), WithinAbs(0.25, 1e-15));
    CHECK_THAT(r.area(), WithinAbs(1.0, 1e-15));
    CHECK(std::abs(r.nearest_boundary({0.9, 0.0}) - std::complex<double>(1.0, 0.0)) < 1e-15);
    // Equidistant from the left and bottom edges: the left edge wins.
    CHECK(std::abs(r.nearest_boundary({-0.9, -0.15}) - std::complex<double>(-1.0, -0.15)) < 1e-15);
    const auto b = r.bounds();
    CHECK(b == std::array<double, 4>{-1.0, 1.0, -0.25, 0.25});

    CHECK_THROWS_AS(GeometricDomain::disk(0.0), DomainError);
    CHECK_THROWS_AS(GeometricDomain::shifted_disk(1.0), DomainError);
    CHECK_THROWS_AS(GeometricDomain::rectangle(-1.0, 1.0), DomainError);
}

TEST_CASE("walk on spheres", "[sampler][wos]") {
    const auto d = wos_exit_samples(GeometricDomain::disk(1.0), 100000, 5);
    CHECK(d.sampler == SamplerKind::WalkOnSpheres);
    CHECK(d.excluded == 0);
    CHECK(d.count() == 100000);
    CHECK(ks_statistic(sorted(d.values), arcsine_cdf) < ks_critical_1pct(1e5));
    const auto st = sample_stats(d.values);
    CHECK(std::abs(st.variance - 0.5) <= 4 * st.variance_se);

    const auto w = wos_exit_samples(GeometricDomain::shifted_disk(0.5), 100000, 6);
    const auto m = mobius_shifted_disk_samples(0.5, 100000, 6);
    const auto sw = sample_stats(w.values), sm = sample_stats(m.values);
    CHECK(std::abs(sw.variance - sm.variance) <= 4 * std::hypot(sw.variance_se, sm.variance_se));

    // Exit points stay in the closed rectangle.
    const auto r = wos_exit_samples(GeometricDomain::rectangle(0.25, 2.0), 20000, 7);
    CHECK(r.excluded == 0);
    CHECK(std::all_of(r.values.begin(), r.values.end(), [](double v) { return std::abs(v) <= 0.25 + 1e-12; }));
    CHECK(sample_stats(r.values).variance < 0.25 * 0.25);

    // A tiny step budget must drop walks and report them.
    WosOptions tight;
    tight.max_steps = 1;
    const auto t = wos_exit_samples(GeometricDomain::disk(1.0), 1000, 8, tight);
    CHECK(t.excluded > 0);
    CHECK(t.count() + t.excluded == 1000);
}

TEST_CASE("empirical measure", "[sampler][empirical]") {
    SampleSet two;
    two.values = {-1.0, 1.0};
    const auto e = empirical_measure(two);
    CHECK_FALSE(e.recentred);
    CHECK(quantile(e.measure, 0.5) == -1.0);
    CHECK(quantile(e.measure, 0.75) == 1.0);

    SampleSet flat;
    flat.values.assign(10, 0.0);
    const auto p = empirical_measure(flat);
    CHECK(variance(p.measure) == 0.0);

    const auto m = empirical_measure(mobius_shifted_disk_samples(0.5, 100000, 11));
    CHECK(std::abs(mean(m.measure)) <= 3 * m.mean_se + 1e-12);

    SampleSet off;
    off.values = {1.0, 1.1, 0.9, 1.05, 0.95};
    const auto o = empirical_measure(off);
    CHECK(o.recentred);
    CHECK_THAT(mean(o.measure), WithinAbs(0.0, 1e-14));
    CHECK_THAT(o.sample_mean, WithinAbs(1.0, 1e-14));

    SampleSet tiny;
    tiny.values = {1.0};
    CHECK_THROWS_AS(empirical_measure(tiny), DomainError);
}
