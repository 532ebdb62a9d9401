#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "curvlab/schlafli.hpp"

using namespace curvlab;

namespace {

// Regular-family volumes from V(theta) = int 3 l(phi) dphi between theta and
// arccos(1/3), l the regular edge length (computed with mpmath, 30 digits).
const double kRegular12 = 0.046712861991968355;      // hyperbolic, theta = 1.2
const double kRegularIdeal = 1.0149416064096536;     // hyperbolic, theta = pi/3
const double kSpherical14 = 0.48617909180295644;     // spherical, theta = 1.4
const double kAllRight = kPi * kPi / 8.0;            // 2 pi^2 / 16

}  // namespace

TEST_CASE("triangle areas") {
    CHECK(area_2d({kPi / 2, kPi / 2, kPi / 2}, Curvature::Spherical) == doctest::Approx(kPi / 2));
    CHECK(area_2d({0.5, 0.5, 0.5}, Curvature::Hyperbolic) == doctest::Approx(kPi - 1.5));
    CHECK_THROWS_AS(area_2d({0.0, 1.0, 1.0}, Curvature::Hyperbolic), InvalidInput);
}

TEST_CASE("all-right spherical tetrahedron") {
    VolumeEstimate v = volume_tetra(AngleVector::uniform(3, kPi / 2), Curvature::Spherical);
    CHECK(std::fabs(v.value - kAllRight) < 1e-6);
    auto g = schlafli_gradient(AngleVector::uniform(3, kPi / 2), Curvature::Spherical);
    for (double x : g) CHECK(x == doctest::Approx(kPi / 4));
}

TEST_CASE("regular family values") {
    CHECK(volume_tetra(AngleVector::uniform(3, 1.2), Curvature::Hyperbolic).value ==
          doctest::Approx(kRegular12).epsilon(1e-9));
    CHECK(volume_tetra(AngleVector::uniform(3, 1.4), Curvature::Spherical).value ==
          doctest::Approx(kSpherical14).epsilon(1e-9));
    auto g = schlafli_gradient(AngleVector::uniform(3, 1.2), Curvature::Hyperbolic);
    for (double x : g) CHECK(x == doctest::Approx(-0.77576553514443 / 2).epsilon(1e-10));
}

TEST_CASE("finite differences match the gradient") {
    for (Curvature K : {Curvature::Hyperbolic, Curvature::Spherical})
        for (int s = 0; s < 3; ++s) {
            AngleVector th = random_compact_angles(K, derive_seed(31, s));
            auto g = schlafli_gradient(th, K);
            for (std::size_t k = 0; k < th.size(); ++k) {
                const double h = 1e-4;
                AngleVector a = th, b = th;
                a[k] += h;
                b[k] -= h;
                double fd = (volume_tetra(a, K, 1e-12).value - volume_tetra(b, K, 1e-12).value) / (2 * h);
                CHECK(std::fabs(fd - g[k]) < 1e-5);
            }
        }
}

TEST_CASE("volume is symmetric under relabeling") {
    AngleVector th = random_compact_angles(Curvature::Hyperbolic, 41);
    double v = volume_tetra(th, Curvature::Hyperbolic).value;
    for (auto perm : std::vector<std::vector<int>>{{1, 0, 2, 3}, {3, 2, 1, 0}, {2, 3, 0, 1}})
        CHECK(volume_tetra(th.permuted(perm), Curvature::Hyperbolic).value == doctest::Approx(v).epsilon(1e-9));
}

TEST_CASE("compact class required") {
    CHECK_THROWS_AS(volume_tetra(AngleVector::uniform(3, kPi / 3), Curvature::Hyperbolic), DomainError);
    CHECK_THROWS_AS(volume_tetra(AngleVector::uniform(3, 1.2), Curvature::Spherical), DomainError);
}

TEST_CASE("Monte Carlo oracle") {
    McOptions opt;
    opt.samples = 1'000'000;
    opt.seed = 5;
    SUBCASE("all-right spherical within 3 sigma") {
        VolumeEstimate mc = mc_volume_oracle(vertices_from_gram(gram_from_angles(AngleVector::uniform(3, kPi / 2))), opt);
        CHECK(std::fabs(mc.value - kAllRight) <= mc.error_bound);
    }
    SUBCASE("regular hyperbolic within 3 sigma") {
        VolumeEstimate mc = mc_volume_oracle(vertices_from_gram(gram_from_angles(AngleVector::uniform(3, 1.2))), opt);
        CHECK(std::fabs(mc.value - kRegular12) <= mc.error_bound);
    }
    SUBCASE("full sphere") {
        VolumeEstimate mc = mc_spherical_halfspaces({}, opt);
        CHECK(mc.value == doctest::Approx(2 * kPi * kPi));
    }
    SUBCASE("serial and parallel agree bit for bit") {
        VertexMatrix V = vertices_from_gram(gram_from_angles(AngleVector::uniform(3, 1.2)));
        opt.exec = Exec::Serial;
        VolumeEstimate a = mc_volume_oracle(V, opt);
        opt.exec = Exec::Parallel;
        VolumeEstimate b = mc_volume_oracle(V, opt);
        VolumeEstimate c = mc_volume_oracle(V, opt);
        CHECK(a.value == b.value);
        CHECK(a.error_bound == b.error_bound);
        CHECK(b.value == c.value);
    }
}

TEST_CASE("ideal corner") {
    IdealExtrapolation r = extrapolate_regular_ideal(8);
    for (std::size_t k = 1; k < r.volumes.size(); ++k) CHECK(r.volumes[k] > r.volumes[k - 1]);
    CHECK(r.limit == doctest::Approx(kRegularIdeal).epsilon(0.01));
    McOptions opt;
    opt.samples = 200'000;
    std::array<KleinPoint, 4> ideal;
    const double s = 1.0 / std::sqrt(3.0);
    ideal[0] = {s, s, s};
    ideal[1] = {s, -s, -s};
    ideal[2] = {-s, s, -s};
    ideal[3] = {-s, -s, s};
    VolumeEstimate mc = mc_volume_truncated(ideal, opt);
    CHECK(std::fabs(mc.value - kRegularIdeal) <= mc.error_bound + 0.01 * kRegularIdeal);
}

TEST_CASE("vanishing toward the Euclidean corner") {
    const double e = std::acos(1.0 / 3.0);
    double prev = 1.0;
    for (double d : {1e-1, 1e-2, 1e-3, 1e-4}) {
        double v = volume_tetra(AngleVector::uniform(3, e - d), Curvature::Hyperbolic).value;
        CHECK(v < prev);
        prev = v;
    }
    CHECK(prev < 1e-4);
}

TEST_CASE("holder probe") {
    auto rows = holder_probe(AngleVector::uniform(3, 1.2), AngleVector::uniform(3, kPi / 3), Curvature::Hyperbolic, 10);
    REQUIRE(rows.size() == 10);
    for (std::size_t k = 1; k < rows.size(); ++k) {
        CHECK(rows[k].volume > rows[k - 1].volume);
        CHECK(rows[k].grad_norm > rows[k - 1].grad_norm);
    }
    HolderFit f = fit_holder(rows);
    CHECK(f.log_r2 > 0.9);
    auto sph = holder_probe(AngleVector::uniform(3, 1.5), AngleVector::uniform(3, std::acos(1.0 / 3.0)),
                            Curvature::Spherical, 8);
    CHECK(fit_holder(sph).grad_sup <= kPi / 2);
}

TEST_CASE("linear fit") {
    auto f = linear_fit({0, 1, 2, 3}, {1, 3, 5, 7});
    CHECK(f[0] == doctest::Approx(1.0));
    CHECK(f[1] == doctest::Approx(2.0));
    CHECK(f[2] == doctest::Approx(1.0));
}
