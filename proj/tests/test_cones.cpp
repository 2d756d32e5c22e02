#include <doctest.h>

#include <cmath>

#include "gd/cones.hpp"
#include "gd/rng.hpp"
#include "gd/sample.hpp"

using namespace gd;

namespace {
const Space R3{Algebra::Real, 3};
}

TEST_CASE("open polar test on the SPD cone") {
    const OperatorSpec det3 = OperatorSpec::det(R3);
    const ConeSampler sampler = garding_cone_sampler(det3);
    const PolarTestReport r =
        open_polar_test(SymmetricMatrix::identity(3), sampler, 300, 5, 0.9);
    CHECK(r.pass);
    // tr x >= ||x||_F on the PSD cone, so the true margin is 1
    CHECK(r.epsilon_hat >= 0.9);
    CHECK(r.epsilon_hat <= std::sqrt(3.0) + 1e-9);
    CHECK_FALSE(r.falsifier.has_value());

    // y outside the polar: -Id sees every sample at negative angle
    const PolarTestReport bad =
        open_polar_test(SymmetricMatrix::identity(3) * -1.0, sampler, 50, 5, 0.0);
    CHECK_FALSE(bad.pass);
    CHECK(bad.falsifier.has_value());
}

TEST_CASE("identity lies in the open polar of every builtin cone") {
    std::vector<OperatorSpec> ops{OperatorSpec::sigma(R3, 1), OperatorSpec::sigma(R3, 2),
                                  OperatorSpec::det(R3),
                                  OperatorSpec::det(Space{Algebra::Complex, 2}),
                                  OperatorSpec::lagrangian_ma(2)};
    for (const auto& F : ops) {
        const int dim = F.space().matrix_dim();
        const SymmetricMatrix y = SymmetricMatrix::identity(dim, F.space().algebra);
        const PolarTestReport r = open_polar_test(y, garding_cone_sampler(F), 200, 31, 0.0);
        CHECK(r.pass);
        CHECK(r.epsilon_hat > 0.0);
    }
}

TEST_CASE("open polar falsifier on the quadrant cone") {
    // diagonal model of the first quadrant: y = diag(1,0) fails criterion (5)
    const OperatorSpec Fq = OperatorSpec::diagonal_poly(SparseSymPoly::monomial(2, {1, 1}));
    const ConeSampler sampler = garding_cone_sampler(Fq);
    SymmetricMatrix y(2);
    y.set(0, 0, 1.0);
    const PolarTestReport r = open_polar_test(y, sampler, 400, 7, 0.0);
    CHECK_FALSE(r.pass);
    REQUIRE(r.falsifier.has_value());
    CHECK(y.inner(*r.falsifier) <= 1e-12);
}

TEST_CASE("exhaustion function") {
    // one-dimensional model: psi = gamma x - log x, minimized at x = 1/gamma
    const Space r1{Algebra::Real, 1};
    const OperatorSpec g1 = OperatorSpec::sigma(r1, 1);
    SymmetricMatrix y(1);
    y.set(0, 0, 2.0);  // gamma = 2
    auto psi = [&](double x) {
        SymmetricMatrix m(1);
        m.set(0, 0, x);
        return exhaustion_value(g1, y, m);
    };
    const double at_min = psi(0.5);
    for (double x : {0.1, 0.3, 0.7, 1.5, 5.0}) CHECK(psi(x) >= at_min - 1e-12);
    CHECK(at_min == doctest::Approx(1.0 + std::log(2.0)).epsilon(1e-12));

    // psi(Id; Id, det) = n
    CHECK(exhaustion_value(OperatorSpec::det(R3), SymmetricMatrix::identity(3),
                           SymmetricMatrix::identity(3)) == doctest::Approx(3.0));

    SymmetricMatrix outside(1);
    outside.set(0, 0, -1.0);
    CHECK_THROWS_AS(exhaustion_value(g1, y, outside), std::invalid_argument);
}

TEST_CASE("midpoint convexity of the exhaustion function along cone segments") {
    Rng rng(11);
    const OperatorSpec g = OperatorSpec::sigma(R3, 2);
    const SymmetricMatrix y = SymmetricMatrix::identity(3);
    for (int trial = 0; trial < 100; ++trial) {
        const SymmetricMatrix A = random_spd(rng, 3, Algebra::Real, 6.0);
        const SymmetricMatrix B = random_spd(rng, 3, Algebra::Real, 6.0);
        const double mid = exhaustion_value(g, y, (A + B) * 0.5);
        const double chord = 0.5 * (exhaustion_value(g, y, A) + exhaustion_value(g, y, B));
        CHECK(mid <= chord + 1e-9);
    }
}

TEST_CASE("prelevel radius bound") {
    // R = (N+1)! e^c / eps^(N+1) * sup_g
    CHECK(prelevel_radius_bound(0.0, 1.0, 1, 1.0) == doctest::Approx(2.0));
    CHECK(prelevel_radius_bound(1.0, 1.0, 1, 1.0) > prelevel_radius_bound(0.0, 1.0, 1, 1.0));
    CHECK(prelevel_radius_bound(0.0, 0.5, 2, 3.0) == doctest::Approx(6.0 * 3.0 / 0.125));
    CHECK_THROWS_AS(prelevel_radius_bound(0.0, 0.0, 1, 1.0), std::invalid_argument);

    // one-dimensional scan: every x with psi(x) <= c stays below R
    const Space r1{Algebra::Real, 1};
    const OperatorSpec g1 = OperatorSpec::sigma(r1, 1);
    SymmetricMatrix y(1);
    y.set(0, 0, 1.0);
    const double c = 5.0;
    const double R = prelevel_radius_bound(c, 1.0, 1, 1.0);
    for (double x = 1e-3; x < 50.0; x += 1e-3) {
        SymmetricMatrix m(1);
        m.set(0, 0, x);
        if (exhaustion_value(g1, y, m) <= c) CHECK(x <= R);
    }
}

TEST_CASE("prelevel bound holds on sampled SPD points") {
    Rng rng(13);
    const OperatorSpec det3 = OperatorSpec::det(R3);
    const SymmetricMatrix y = SymmetricMatrix::identity(3);
    const double c = 5.0;
    const double sup_g = sup_on_cone_sphere(det3, 200, 99);
    const double R = prelevel_radius_bound(c, 1.0, det3.degree(), sup_g);
    int hits = 0;
    for (int trial = 0; trial < 2000; ++trial) {
        const SymmetricMatrix A = random_spd(rng, 3, Algebra::Real, 10.0);
        double psi;
        try {
            psi = exhaustion_value(det3, y, A);
        } catch (const std::invalid_argument&) {
            continue;
        }
        if (psi <= c) {
            ++hits;
            CHECK(A.frobenius_norm() <= R);
        }
    }
    CHECK(hits > 0);
}

TEST_CASE("central ray check for invariant builtins") {
    const CentralRayReport s2 = central_ray_check(OperatorSpec::sigma(R3, 2));
    CHECK(s2.pass);
    CHECK(s2.k_hat == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
    CHECK(s2.k_theory == doctest::Approx(2.0 / 3.0));
    CHECK(s2.deviation <= 1e-8);

    const CentralRayReport dq = central_ray_check(OperatorSpec::det(Space{Algebra::Complex, 2}));
    CHECK(dq.pass);
    CHECK(dq.k_hat == doctest::Approx(1.0).epsilon(1e-8));

    const CentralRayReport lm = central_ray_check(OperatorSpec::lagrangian_ma(2));
    CHECK(lm.pass);
    CHECK(lm.k_hat == doctest::Approx(2.0).epsilon(1e-8));  // N/n = 4/2

    // the counterexample operator fails the fit
    const CentralRayReport bad =
        central_ray_check(OperatorSpec::diagonal_poly(SparseSymPoly::monomial(2, {2, 1})));
    CHECK_FALSE(bad.pass);
    CHECK(bad.deviation > 1e-3);
}

TEST_CASE("central ray search") {
    // invariant operators: the ray through the identity
    for (const OperatorSpec& F : {OperatorSpec::det(R3), OperatorSpec::sigma(R3, 2)}) {
        const SymmetricMatrix B0 = central_ray_search(F, 3, 150, 10);
        const SymmetricMatrix target = SymmetricMatrix::identity(3) * (1.0 / std::sqrt(3.0));
        const double cosang = B0.inner(target);
        CHECK(std::acos(std::min(1.0, cosang)) <= 1e-6);
    }

    // counterexample operator on the diagonal model: b1^2 = 2 b2^2
    const OperatorSpec F9 = OperatorSpec::diagonal_poly(SparseSymPoly::monomial(2, {2, 1}));
    const SymmetricMatrix B0 = central_ray_search(F9, 3, 300, 20);
    std::vector<double> expect{std::sqrt(2.0), 1.0};
    SymmetricMatrix target = SymmetricMatrix::diagonal(expect);
    target *= 1.0 / target.frobenius_norm();
    const double cosang = B0.inner(target);
    CHECK(std::acos(std::min(1.0, cosang)) <= 1e-4);
    // stationarity: gradient proportional to the point
    const SymmetricMatrix G = gradient_matrix(F9, B0);
    const SymmetricMatrix resid = G - B0 * G.inner(B0);
    CHECK(resid.frobenius_norm() / G.frobenius_norm() <= 1e-6);
}

TEST_CASE("norm bound of the sup over the cone sphere") {
    Rng rng(17);
    const OperatorSpec det3 = OperatorSpec::det(R3);
    const double sup = sup_on_cone_sphere(det3, 300, 21);
    // true sup of det on the unit sphere of the SPD cone is n^(-n/2)
    CHECK(sup <= 1.1 * std::pow(3.0, -1.5) + 1e-12);
    CHECK(sup >= 0.5 * std::pow(3.0, -1.5));

    // sphere bound: F^(1/N) <= sup F^(1/N) * ||A|| on cone samples, equality
    // only near the central ray
    const ConeSampler sampler = garding_cone_sampler(det3);
    const double cap = std::pow(3.0, -0.5);  // sup F^(1/3) on the sphere
    const SymmetricMatrix ray = SymmetricMatrix::identity(3) * (1.0 / std::sqrt(3.0));
    bool equality_seen = false;
    for (int i = 0; i < 300; ++i) {
        Rng r = Rng::for_sample(23, static_cast<std::uint64_t>(i));
        const SymmetricMatrix x = i == 0 ? ray : sampler(r);
        const double gap = cap - std::pow(std::max(det3(x), 0.0), 1.0 / 3.0);
        CHECK(gap >= -1e-9);
        if (gap <= 1e-6) {
            equality_seen = true;
            const double cosang = std::min(1.0, x.inner(ray));
            CHECK(std::acos(cosang) <= 1e-3);
        }
    }
    CHECK(equality_seen);
}
