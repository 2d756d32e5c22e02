#include <doctest.h>

#include <cmath>

#include "gd/operators.hpp"
#include "gd/rng.hpp"
#include "gd/sample.hpp"

using namespace gd;

namespace {

// dense helpers for the conjugation-invariance test
std::vector<double> mul(const std::vector<double>& a, const std::vector<double>& b, int n) {
    std::vector<double> c(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            for (int j = 0; j < n; ++j)
                c[static_cast<std::size_t>(i * n + j)] +=
                    a[static_cast<std::size_t>(i * n + k)] * b[static_cast<std::size_t>(k * n + j)];
    return c;
}

std::vector<double> inverse(std::vector<double> a, int n) {
    std::vector<double> inv(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) inv[static_cast<std::size_t>(i * n + i)] = 1.0;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::fabs(a[static_cast<std::size_t>(r * n + col)]) >
                std::fabs(a[static_cast<std::size_t>(piv * n + col)]))
                piv = r;
        for (int j = 0; j < n; ++j) {
            std::swap(a[static_cast<std::size_t>(piv * n + j)], a[static_cast<std::size_t>(col * n + j)]);
            std::swap(inv[static_cast<std::size_t>(piv * n + j)], inv[static_cast<std::size_t>(col * n + j)]);
        }
        const double d = a[static_cast<std::size_t>(col * n + col)];
        for (int j = 0; j < n; ++j) {
            a[static_cast<std::size_t>(col * n + j)] /= d;
            inv[static_cast<std::size_t>(col * n + j)] /= d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = a[static_cast<std::size_t>(r * n + col)];
            for (int j = 0; j < n; ++j) {
                a[static_cast<std::size_t>(r * n + j)] -= f * a[static_cast<std::size_t>(col * n + j)];
                inv[static_cast<std::size_t>(r * n + j)] -= f * inv[static_cast<std::size_t>(col * n + j)];
            }
        }
    }
    return inv;
}

}  // namespace

TEST_CASE("builtin evaluations on hand matrices") {
    const Space r3{Algebra::Real, 3};
    CHECK(OperatorSpec::sigma(r3, 1)(SymmetricMatrix::identity(3)) == doctest::Approx(3.0));

    const std::vector<double> d{1.0, 2.0, 3.0};
    const SymmetricMatrix D = SymmetricMatrix::diagonal(d);
    CHECK(OperatorSpec::p_fold_sum(r3, 2)(D) == doctest::Approx(60.0).epsilon(1e-12));
    CHECK(OperatorSpec::det(r3)(D) == doctest::Approx(6.0).epsilon(1e-12));
    CHECK(OperatorSpec::sigma(r3, 2)(D) == doctest::Approx(11.0).epsilon(1e-12));

    // diagonal operator of the counterexample family
    const OperatorSpec F9 = OperatorSpec::diagonal_poly(SparseSymPoly::monomial(2, {2, 1}));
    const double s = 0.37;
    const std::vector<double> ds{s, 1.0};
    CHECK(F9(SymmetricMatrix::diagonal(ds)) == doctest::Approx(s * s).epsilon(1e-14));
}

TEST_CASE("Lagrangian MA hand example: t=1, lambda=(1/2, 0)") {
    // A = Id + skew with skew eigenvalues (1/2, 0): per-block diag(l, -l)
    // anticommutes with the block J
    SymmetricMatrix A = SymmetricMatrix::identity(4, Algebra::Complex);
    A.set(0, 0, 1.5);
    A.set(1, 1, 0.5);
    const OperatorSpec F = OperatorSpec::lagrangian_ma(2);
    CHECK(F(A) == doctest::Approx(14.0625).epsilon(1e-12));

    const LagrangianEigData data = lagrangian_decompose(A);
    CHECK(data.t == doctest::Approx(1.0));
    CHECK(data.lambdas[0] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(data.lambdas[1] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(data.discarded_hermitian_norm <= 1e-12);
}

TEST_CASE("Lagrangian eigenvalue data matches the real spectrum") {
    Rng rng(41);
    for (int trial = 0; trial < 10; ++trial) {
        const SymmetricMatrix A = random_lagrangian_positive(rng, 3);
        const LagrangianEigData data = lagrangian_decompose(A);
        std::vector<double> expect;
        for (std::size_t j = 0; j < data.lambdas.size(); ++j) {
            expect.push_back(data.eps_plus[j]);
            expect.push_back(data.eps_minus[j]);
        }
        std::sort(expect.begin(), expect.end());
        const Spectrum spec = eigenvalues_sym(A);
        for (std::size_t i = 0; i < expect.size(); ++i)
            CHECK(spec.values[i] == doctest::Approx(expect[i]).epsilon(1e-9));
        // real determinant is the product of the eps
        double prod = 1.0;
        for (std::size_t j = 0; j < data.lambdas.size(); ++j)
            prod *= data.eps_plus[j] * data.eps_minus[j];
        CHECK(det_real(A) == doctest::Approx(prod).epsilon(1e-9));
    }
}

TEST_CASE("degrees and spaces") {
    const Space r3{Algebra::Real, 3};
    const OperatorSpec P =
        OperatorSpec::product({OperatorSpec::sigma(r3, 1), OperatorSpec::sigma(r3, 2)});
    CHECK(P.degree() == 3);
    CHECK(OperatorSpec::p_fold_sum(r3, 2).degree() == 3);
    CHECK(OperatorSpec::lagrangian_ma(3).degree() == 8);
    CHECK(OperatorSpec::lagrangian_ma(3).space().matrix_dim() == 6);
    CHECK(OperatorSpec::det(Space{Algebra::Quaternionic, 2}).dimension() ==
          std::pair<int, int>{2, 8});

    const Space r2{Algebra::Real, 2};
    CHECK_THROWS_AS(OperatorSpec::product({OperatorSpec::sigma(r3, 1), OperatorSpec::sigma(r2, 1)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(OperatorSpec::sigma(r3, 4), std::invalid_argument);
}

TEST_CASE("field evaluation uses field multiplicities") {
    Rng rng(43);
    const Space c3{Algebra::Complex, 3};
    const SymmetricMatrix A = random_commutant(rng, 6, Algebra::Complex);
    const auto lam = field_eigenvalues(A);
    CHECK(OperatorSpec::sigma(c3, 2)(A) ==
          doctest::Approx(elementary_symmetric(lam, 2)).epsilon(1e-10));
    CHECK(OperatorSpec::det(c3)(A) ==
          doctest::Approx(lam[0] * lam[1] * lam[2]).epsilon(1e-8));

    // wrong space is rejected
    CHECK_THROWS_AS(OperatorSpec::sigma(c3, 1)(SymmetricMatrix::identity(6)),
                    std::invalid_argument);
}

TEST_CASE("evaluation is invariant under structure-commuting conjugation") {
    Rng rng(47);
    const int n = 2, dim = 4;
    const Space c2{Algebra::Complex, n};
    const OperatorSpec F = OperatorSpec::sigma(c2, 2);
    const OperatorSpec L = OperatorSpec::lagrangian_ma(n);

    for (int trial = 0; trial < 5; ++trial) {
        // Cayley transform of a structure-commuting skew matrix
        std::vector<double> skew(static_cast<std::size_t>(dim) * dim, 0.0);
        for (int i = 0; i < dim; ++i)
            for (int j = i + 1; j < dim; ++j) {
                const double v = rng.normal();
                skew[static_cast<std::size_t>(i * dim + j)] = v;
                skew[static_cast<std::size_t>(j * dim + i)] = -v;
            }
        std::vector<double> J(static_cast<std::size_t>(dim) * dim, 0.0);
        for (int b = 0; b < n; ++b) {
            J[static_cast<std::size_t>((2 * b + 1) * dim + 2 * b)] = 1.0;
            J[static_cast<std::size_t>(2 * b * dim + 2 * b + 1)] = -1.0;
        }
        // commutant projection keeps skewness
        const auto JSJ = mul(mul(J, skew, dim), J, dim);
        for (std::size_t i = 0; i < skew.size(); ++i) skew[i] = 0.5 * (skew[i] - JSJ[i]);

        // Q = (I - S)(I + S)^-1
        std::vector<double> ims(skew.size()), ips(skew.size());
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) {
                const double id = i == j ? 1.0 : 0.0;
                ims[static_cast<std::size_t>(i * dim + j)] = id - skew[static_cast<std::size_t>(i * dim + j)];
                ips[static_cast<std::size_t>(i * dim + j)] = id + skew[static_cast<std::size_t>(i * dim + j)];
            }
        const auto Q = mul(ims, inverse(ips, dim), dim);

        auto conjugate = [&](const SymmetricMatrix& A) {
            std::vector<double> a(A.entries().begin(), A.entries().end());
            std::vector<double> Qt(static_cast<std::size_t>(dim) * dim);
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j)
                    Qt[static_cast<std::size_t>(i * dim + j)] = Q[static_cast<std::size_t>(j * dim + i)];
            return SymmetricMatrix::from_entries(dim, mul(Qt, mul(a, Q, dim), dim),
                                                 Algebra::Complex);
        };

        const SymmetricMatrix A = random_commutant(rng, dim, Algebra::Complex);
        CHECK(F(conjugate(A)) == doctest::Approx(F(A)).epsilon(1e-8));

        const SymmetricMatrix AL = random_lagrangian_positive(rng, n);
        CHECK(L(conjugate(AL)) == doctest::Approx(L(AL)).epsilon(1e-8));
    }
}

TEST_CASE("directional derivative by interpolation agrees with finite differences") {
    Rng rng(53);
    const Space r3{Algebra::Real, 3};
    for (const OperatorSpec& F :
         {OperatorSpec::det(r3), OperatorSpec::sigma(r3, 2), OperatorSpec::p_fold_sum(r3, 2)}) {
        for (int trial = 0; trial < 5; ++trial) {
            const SymmetricMatrix A = random_symmetric(rng, 3);
            const SymmetricMatrix P = random_spd(rng, 3, Algebra::Real, 3.0);
            const double exact = directional_coefficient(F, A, P, 1);
            const double h = 1e-5;
            const double fd = (F(A + P * h) - F(A - P * h)) / (2.0 * h);
            CHECK(std::fabs(exact - fd) <= 1e-6 * std::max({1.0, std::fabs(exact), std::fabs(fd)}));
        }
    }

    // node of the expression tree, degree drops by the order
    const OperatorSpec dF = OperatorSpec::directional_derivative(
        OperatorSpec::det(r3), SymmetricMatrix::identity(3), 1);
    CHECK(dF.degree() == 2);
    const std::vector<double> d{1.0, 2.0, 3.0};
    // d/dt det(tI + A)|_0 = sigma_2 of the eigenvalues
    CHECK(dF(SymmetricMatrix::diagonal(d)) == doctest::Approx(11.0).epsilon(1e-9));
}

TEST_CASE("delta_I_elementary") {
    const Space r3{Algebra::Real, 3};
    const std::vector<double> d{1.0, 2.0, 3.0};
    const SymmetricMatrix A = SymmetricMatrix::diagonal(d);
    CHECK(delta_I_elementary(OperatorSpec::det(r3), A, 1) == doctest::Approx(11.0).epsilon(1e-9));
    // k = N reduces to F(I)
    CHECK(delta_I_elementary(OperatorSpec::det(r3), A, 3) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(delta_I_elementary(OperatorSpec::sigma(r3, 2), A, 2) == doctest::Approx(3.0).epsilon(1e-9));

    Rng rng(59);
    const SymmetricMatrix B = random_symmetric(rng, 3);
    CHECK(delta_I_elementary(OperatorSpec::sigma(r3, 2), B, 2) == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("compose, convex combo and tensor product nodes") {
    const Space r2{Algebra::Real, 2};
    // compose sigma_1 of the eigenvalues of sigma_2: arity must match degree
    const OperatorSpec inner = OperatorSpec::sigma(r2, 2);  // degree 2
    const OperatorSpec comp = OperatorSpec::compose(SparseSymPoly::elementary(2, 1), inner);
    CHECK(comp.degree() == 1);
    CHECK_THROWS_AS(OperatorSpec::compose(SparseSymPoly::elementary(3, 1), inner),
                    std::invalid_argument);

    // convex combo weights from the central-ray constants
    const SparseSymPoly q = SparseSymPoly::power_mean(1);                 // k = 1
    const SparseSymPoly r = SparseSymPoly::elementary(2, 1).scaled(0.5);  // k = 1/2
    const OperatorSpec combo = OperatorSpec::convex_combo(q, r);
    const auto [wq, wr] = combo.combo_weights();
    CHECK(wq == doctest::Approx(1.0 / 3.0));
    CHECK(wr == doctest::Approx(2.0 / 3.0));
    CHECK(combo.space().n == 3);

    CHECK_THROWS_AS(OperatorSpec::convex_combo(q, SparseSymPoly::power_mean(2)),
                    std::invalid_argument);

    // ordered-eigenvalue tensor product of the power means
    const OperatorSpec tensor =
        OperatorSpec::tensor_product(SparseSymPoly::power_mean(1), SparseSymPoly::power_mean(2));
    const std::vector<double> d{3.0, 1.0, 2.0};  // sorted: 1, 2, 3
    CHECK(tensor(SymmetricMatrix::diagonal(d)) ==
          doctest::Approx(1.0 * 0.5 * (4.0 + 9.0)).epsilon(1e-10));
}

TEST_CASE("commutant requirements drive the domain basis") {
    const Space c2{Algebra::Complex, 2};
    CHECK(OperatorSpec::sigma(c2, 1).requires_commutant());
    CHECK_FALSE(OperatorSpec::lagrangian_ma(2).requires_commutant());
    CHECK_FALSE(OperatorSpec::det(Space{Algebra::Real, 3}).requires_commutant());

    CHECK(domain_basis(OperatorSpec::sigma(c2, 1)).size() == 4);       // n^2
    CHECK(domain_basis(OperatorSpec::lagrangian_ma(2)).size() == 10);  // full 4x4 symmetric
    CHECK(domain_basis(OperatorSpec::det(Space{Algebra::Real, 3})).size() == 6);
}

TEST_CASE("sym_poly requires symmetry, ordered_eig_poly does not") {
    const SparseSymPoly asym = SparseSymPoly::monomial(2, {2, 1});
    CHECK_THROWS_AS(OperatorSpec::sym_poly(Space{Algebra::Real, 2}, asym), std::invalid_argument);
    const OperatorSpec ord = OperatorSpec::ordered_eig_poly(asym);
    const std::vector<double> d{2.0, 1.0};  // sorted ascending: (1,2) -> 1^2*2
    CHECK(ord(SymmetricMatrix::diagonal(d)) == doctest::Approx(2.0).epsilon(1e-12));
}
