#include <doctest.h>

#include <cmath>

#include "gd/poly.hpp"
#include "gd/rng.hpp"

using namespace gd;

namespace {

// brute-force oracle: sum over all k-subsets
double esym_brute(const std::vector<double>& v, int k) {
    const int n = static_cast<int>(v.size());
    double total = 0.0;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (__builtin_popcount(mask) != k) continue;
        double prod = 1.0;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) prod *= v[static_cast<std::size_t>(i)];
        total += prod;
    }
    return total;
}

}  // namespace

TEST_CASE("eval_sympoly on hand examples") {
    // sigma_2 on (1,2,3): pairs 1*2 + 1*3 + 2*3 = 11
    const SparseSymPoly s2 = SparseSymPoly::elementary(3, 2);
    const std::vector<double> x{1.0, 2.0, 3.0};
    CHECK(s2.eval(x) == doctest::Approx(11.0).epsilon(1e-14));

    // x1^2 x2 at (2,3) = 12
    const SparseSymPoly m = SparseSymPoly::monomial(2, {2, 1});
    const std::vector<double> y{2.0, 3.0};
    CHECK(m.eval(y) == doctest::Approx(12.0).epsilon(1e-14));

    // normalized polynomial evaluates to 1 at e
    const SparseSymPoly pn = s2.normalized();
    const std::vector<double> e{1.0, 1.0, 1.0};
    CHECK(pn.eval(e) == doctest::Approx(1.0).epsilon(1e-14));

    const std::vector<double> bad{1.0, 2.0};
    CHECK_THROWS_AS(s2.eval(bad), std::invalid_argument);
}

TEST_CASE("permutation symmetry") {
    CHECK(SparseSymPoly::elementary(4, 2).is_permutation_symmetric());
    CHECK_FALSE(SparseSymPoly::monomial(2, {2, 1}).is_permutation_symmetric());
    // x1 x2 stored canonically is symmetric
    CHECK(SparseSymPoly::monomial(2, {1, 1}).is_permutation_symmetric());
    // symmetrization makes any monomial symmetric
    CHECK(SparseSymPoly::monomial(3, {2, 1, 0}).symmetrized().is_permutation_symmetric());
}

TEST_CASE("partials at e") {
    const SparseSymPoly half = SparseSymPoly::elementary(2, 1).scaled(0.5);  // (x1+x2)/2
    auto g = half.partials_at_e();
    CHECK(g[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(g[1] == doctest::Approx(0.5).epsilon(1e-15));

    auto g2 = SparseSymPoly::elementary(3, 2).partials_at_e();
    for (double v : g2) CHECK(v == doctest::Approx(2.0).epsilon(1e-15));

    auto g3 = SparseSymPoly::monomial(2, {2, 1}).partials_at_e();
    CHECK(g3[0] == doctest::Approx(2.0));
    CHECK(g3[1] == doctest::Approx(1.0));
}

TEST_CASE("Euler identity: partials at e sum to N p(e)") {
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + static_cast<int>(rng.uniform() * 4);
        const int deg = 1 + static_cast<int>(rng.uniform() * 5);
        std::map<MultiIndex, double> terms;
        for (int t = 0; t < 6; ++t) {
            MultiIndex alpha(static_cast<std::size_t>(n), 0);
            int rem = deg;
            for (int j = 0; j < n && rem > 0; ++j) {
                const int a = static_cast<int>(rng.uniform() * (rem + 1));
                alpha[static_cast<std::size_t>(j)] = a;
                rem -= a;
            }
            alpha[static_cast<std::size_t>(n - 1)] += rem;
            terms[alpha] += rng.uniform();
        }
        const SparseSymPoly p(n, terms);
        double sum = 0.0;
        for (double v : p.partials_at_e()) sum += v;
        CHECK(sum == doctest::Approx(deg * p.value_at_e()).epsilon(1e-12));
    }
}

TEST_CASE("univariate interpolation") {
    const std::vector<double> n1{0.0, 1.0}, v1{1.0, 3.0};
    const UnivariatePoly p1 = interpolate_univariate(n1, v1);
    REQUIRE(p1.degree() == 1);
    CHECK(p1.coeffs()[0] == doctest::Approx(1.0));
    CHECK(p1.coeffs()[1] == doctest::Approx(2.0));

    const std::vector<double> n2{0.0, 1.0, 2.0}, v2{1.0, 4.0, 9.0};  // (1+t)^2
    const UnivariatePoly p2 = interpolate_univariate(n2, v2);
    REQUIRE(p2.degree() == 2);
    CHECK(p2.coeffs()[0] == doctest::Approx(1.0));
    CHECK(p2.coeffs()[1] == doctest::Approx(2.0));
    CHECK(p2.coeffs()[2] == doctest::Approx(1.0));

    // hand-chosen cubic 2 - t + 3t^2 - 5t^3 at 4 integer nodes
    auto cubic = [](double t) { return 2.0 - t + 3.0 * t * t - 5.0 * t * t * t; };
    std::vector<double> n3{0.0, 1.0, 2.0, 3.0}, v3;
    for (double t : n3) v3.push_back(cubic(t));
    const UnivariatePoly p3 = interpolate_univariate(n3, v3);
    REQUIRE(p3.degree() == 3);
    CHECK(p3.coeffs()[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(p3.coeffs()[1] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(p3.coeffs()[2] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(p3.coeffs()[3] == doctest::Approx(-5.0).epsilon(1e-12));

    const std::vector<double> dup{0.0, 0.0}, vv{1.0, 2.0};
    CHECK_THROWS_AS(interpolate_univariate(dup, vv), std::invalid_argument);
}

TEST_CASE("interpolation round-trip up to degree 12 at integer nodes") {
    // dyadic coefficients make the node values exactly representable, so this
    // exercises the interpolation map alone
    Rng rng(11);
    for (int deg = 1; deg <= 12; ++deg) {
        std::vector<double> coeffs(static_cast<std::size_t>(deg) + 1);
        for (double& c : coeffs)
            c = static_cast<double>(static_cast<int>(rng.uniform(-128.0, 129.0))) / 64.0;
        coeffs.back() += 3.0;  // keep the leading coefficient alive
        const UnivariatePoly p(coeffs);
        std::vector<double> nodes, values;
        for (int k = 0; k <= deg; ++k) {
            nodes.push_back(k);
            values.push_back(p.eval(k));
        }
        const UnivariatePoly q = interpolate_univariate(nodes, values);
        REQUIRE(q.degree() == deg);
        for (int k = 0; k <= deg; ++k)
            CHECK(q.coeffs()[static_cast<std::size_t>(k)] ==
                  doctest::Approx(coeffs[static_cast<std::size_t>(k)]).epsilon(1e-9));
    }
}

TEST_CASE("real_roots hand cases") {
    // t^2 - 3t + 2
    const RootResult r1 = real_roots(UnivariatePoly({2.0, -3.0, 1.0}));
    REQUIRE(r1.roots.size() == 2);
    CHECK(r1.roots[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r1.roots[1] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(r1.max_imag == doctest::Approx(0.0));

    // 3t^2 + 12t + 11: quadratic-formula roots -2 -+ 1/sqrt(3)
    const RootResult r2 = real_roots(UnivariatePoly({11.0, 12.0, 3.0}));
    REQUIRE(r2.roots.size() == 2);
    CHECK(r2.roots[0] == doctest::Approx(-2.0 - 1.0 / std::sqrt(3.0)).epsilon(1e-12));
    CHECK(r2.roots[1] == doctest::Approx(-2.0 + 1.0 / std::sqrt(3.0)).epsilon(1e-12));

    // t^2 + 1: non-hyperbolic signal
    const RootResult r3 = real_roots(UnivariatePoly({1.0, 0.0, 1.0}));
    REQUIRE(r3.roots.size() == 2);
    CHECK(r3.roots[0] == doctest::Approx(0.0));
    CHECK(r3.roots[1] == doctest::Approx(0.0));
    CHECK(r3.max_imag == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(real_roots(UnivariatePoly({0.0})), std::invalid_argument);
}

TEST_CASE("real_roots recovers products of random real-rooted factors") {
    Rng rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        const int deg = 1 + static_cast<int>(rng.uniform() * 9);
        std::vector<double> roots(static_cast<std::size_t>(deg));
        for (double& r : roots) r = rng.uniform(-3.0, 3.0);
        std::sort(roots.begin(), roots.end());
        // expand prod (t - r_i)
        std::vector<double> coeffs{1.0};
        for (double r : roots) {
            coeffs.push_back(0.0);
            for (std::size_t i = coeffs.size() - 1; i > 0; --i)
                coeffs[i] = coeffs[i - 1] - r * coeffs[i];
            coeffs[0] *= -r;
        }
        const RootResult rr = real_roots(UnivariatePoly(coeffs));
        REQUIRE(static_cast<int>(rr.roots.size()) == deg);
        double scale = 1.0;
        for (double r : roots) scale = std::max(scale, std::fabs(r));
        CHECK(rr.max_imag <= 1e-8 * scale);
        for (int i = 0; i < deg; ++i)
            CHECK(rr.roots[static_cast<std::size_t>(i)] ==
                  doctest::Approx(roots[static_cast<std::size_t>(i)]).epsilon(1e-7));
    }
}

TEST_CASE("series q-th root") {
    // (1+t)^4 truncated, q = 4
    TruncatedSeries s;
    s.coeffs = {1.0, 4.0, 6.0, 4.0, 1.0};
    const TruncatedSeries r4 = series_qth_root(s, 4);
    CHECK(r4.coeffs[0] == doctest::Approx(1.0));
    CHECK(r4.coeffs[1] == doctest::Approx(1.0));
    CHECK(r4.coeffs[2] == doctest::Approx(0.0));

    const TruncatedSeries r2 = series_qth_root(s, 2);  // (1+t)^2
    CHECK(r2.coeffs[1] == doctest::Approx(2.0));
    CHECK(r2.coeffs[2] == doctest::Approx(1.0));
    CHECK(r2.coeffs[3] == doctest::Approx(0.0));

    TruncatedSeries bad;
    bad.coeffs = {2.0, 1.0};
    CHECK_THROWS_AS(series_qth_root(bad, 2), std::invalid_argument);
}

TEST_CASE("series root round-trip property") {
    Rng rng(17);
    for (int q : {1, 2, 3, 4, 5}) {
        for (int trial = 0; trial < 10; ++trial) {
            TruncatedSeries s;
            s.coeffs.assign(13, 0.0);
            s.coeffs[0] = 1.0;
            for (int i = 1; i <= 12; ++i) s.coeffs[static_cast<std::size_t>(i)] = rng.uniform(-1.0, 1.0);
            const TruncatedSeries back = series_qth_root(s.pow(q), q);
            for (int i = 0; i <= 12; ++i)
                CHECK(back.coeffs[static_cast<std::size_t>(i)] ==
                      doctest::Approx(s.coeffs[static_cast<std::size_t>(i)]).epsilon(1e-10));
        }
    }
}

TEST_CASE("elementary symmetric functions") {
    const std::vector<double> v{1.0, 2.0, 3.0};
    CHECK(elementary_symmetric(v, 2) == doctest::Approx(11.0));
    CHECK(elementary_symmetric(v, 0) == doctest::Approx(1.0));
    const std::vector<double> ones{1.0, 1.0, 1.0, 1.0};
    CHECK(elementary_symmetric(ones, 2) == doctest::Approx(6.0));
    CHECK_THROWS_AS(elementary_symmetric(v, 4), std::invalid_argument);

    Rng rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<double> w(6);
        for (double& x : w) x = rng.uniform(-2.0, 2.0);
        for (int k = 0; k <= 6; ++k)
            CHECK(elementary_symmetric(w, k) == doctest::Approx(esym_brute(w, k)).epsilon(1e-11));
    }
}

TEST_CASE("split product and split sum") {
    const SparseSymPoly q = SparseSymPoly::power_mean(1);  // x1
    const SparseSymPoly r = SparseSymPoly::power_mean(2);  // (x1^2+x2^2)/2
    const SparseSymPoly p = SparseSymPoly::split_product(q, r);
    CHECK(p.nvars() == 3);
    CHECK(p.degree() == 3);
    const std::vector<double> x{2.0, 1.0, 3.0};
    CHECK(p.eval(x) == doctest::Approx(2.0 * 0.5 * (1.0 + 9.0)).epsilon(1e-14));

    const SparseSymPoly half = SparseSymPoly::elementary(2, 1).scaled(0.5);
    const SparseSymPoly s = SparseSymPoly::split_sum(half, half, 0.5, 0.5);
    CHECK(s.nvars() == 4);
    const std::vector<double> e4{1.0, 1.0, 1.0, 1.0};
    CHECK(s.eval(e4) == doctest::Approx(1.0));
    CHECK_THROWS_AS(SparseSymPoly::split_sum(q, r, 0.5, 0.5), std::invalid_argument);
}

TEST_CASE("homogeneity is validated") {
    std::map<MultiIndex, double> t;
    t[{1, 0}] = 1.0;
    t[{1, 1}] = 1.0;
    CHECK_THROWS_AS(SparseSymPoly(2, t), std::invalid_argument);
}
