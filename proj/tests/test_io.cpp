#include <doctest.h>

#include "gd/io.hpp"
#include "gd/rng.hpp"
#include "gd/sample.hpp"

using namespace gd;
using nlohmann::json;

TEST_CASE("matrix json round trip") {
    Rng rng(211);
    const SymmetricMatrix A = random_commutant(rng, 4, Algebra::Complex);
    const SymmetricMatrix B = matrix_from_json(matrix_to_json(A));
    CHECK(B.algebra() == Algebra::Complex);
    CHECK((A - B).frobenius_norm() == 0.0);  // doubles survive json exactly
}

TEST_CASE("asymmetric matrix files are rejected") {
    const json j{{"dim", 2}, {"algebra", "R"}, {"entries", {{1.0, 2.0}, {2.1, 3.0}}}};
    CHECK_THROWS_AS(matrix_from_json(j), io_error);

    // tiny asymmetry below 1e-12 relative is also rejected only above the gate
    const json ok{{"dim", 2}, {"algebra", "R"}, {"entries", {{1.0, 2.0}, {2.0, 3.0}}}};
    CHECK_NOTHROW(matrix_from_json(ok));
}

TEST_CASE("unknown fields are rejected with locations") {
    const json j{{"dim", 2},
                 {"algebra", "R"},
                 {"entries", {{1.0, 0.0}, {0.0, 1.0}}},
                 {"extra", 1}};
    try {
        matrix_from_json(j, "file.json");
        FAIL("expected io_error");
    } catch (const io_error& e) {
        CHECK(std::string(e.what()).find("file.json/extra") != std::string::npos);
    }
}

TEST_CASE("polynomial json") {
    const SparseSymPoly p = SparseSymPoly::elementary(3, 2).scaled(1.0 / 3.0);
    const SparseSymPoly q = poly_from_json(poly_to_json(p));
    CHECK(q.nvars() == 3);
    CHECK(q.degree() == 2);
    CHECK(q.value_at_e() == doctest::Approx(1.0));

    // homogeneity is validated on load
    const json bad{{"nvars", 2},
                   {"terms", {{{"alpha", {1, 0}}, {"coeff", 1.0}}, {{"alpha", {1, 1}}, {"coeff", 1.0}}}}};
    CHECK_THROWS_AS(poly_from_json(bad), io_error);
}

TEST_CASE("operator spec json à la the interface example") {
    const json j = json::parse(R"({
      "space": {"algebra": "R", "n": 3},
      "op": {"kind": "product", "factors": [{"kind": "sigma", "k": 1}, {"kind": "sigma", "k": 2}]}
    })");
    const OperatorSpec F = operator_from_json(j);
    CHECK(F.degree() == 3);
    CHECK(F.kind() == OperatorSpec::Kind::Product);

    // round trip
    const OperatorSpec G = operator_from_json(operator_to_json(F));
    CHECK(G.degree() == 3);
    const std::vector<double> d{1.0, 2.0, 3.0};
    const SymmetricMatrix D = SymmetricMatrix::diagonal(d);
    CHECK(G(D) == doctest::Approx(F(D)));
}

TEST_CASE("operator spec validation errors carry locations") {
    // sigma index out of range
    const json bad_k = json::parse(
        R"({"space": {"algebra": "R", "n": 2}, "op": {"kind": "sigma", "k": 7}})");
    try {
        operator_from_json(bad_k, "spec.json");
        FAIL("expected io_error");
    } catch (const io_error& e) {
        CHECK(std::string(e.what()).find("spec.json/op") != std::string::npos);
    }

    // polynomial arity must match the declared space
    const json bad_space = json::parse(R"({
      "space": {"algebra": "R", "n": 3},
      "op": {"kind": "diagonal-poly",
             "poly": {"nvars": 2, "terms": [{"alpha": [2, 1], "coeff": 1.0}]}}
    })");
    CHECK_THROWS_AS(operator_from_json(bad_space), io_error);

    // unknown kind
    const json bad_kind =
        json::parse(R"({"space": {"algebra": "R", "n": 2}, "op": {"kind": "frobnicate"}})");
    try {
        operator_from_json(bad_kind, "s.json");
        FAIL("expected io_error");
    } catch (const io_error& e) {
        CHECK(std::string(e.what()).find("/op/kind") != std::string::npos);
    }

    // nested location points into the product factor list
    const json bad_nested = json::parse(R"({
      "space": {"algebra": "R", "n": 3},
      "op": {"kind": "product",
             "factors": [{"kind": "sigma", "k": 1}, {"kind": "sigma", "k": 9}]}
    })");
    try {
        operator_from_json(bad_nested, "s.json");
        FAIL("expected io_error");
    } catch (const io_error& e) {
        CHECK(std::string(e.what()).find("/op/factors/1") != std::string::npos);
    }
}

TEST_CASE("all operator kinds survive a serialization round trip") {
    Rng rng(223);
    const Space r3{Algebra::Real, 3};
    std::vector<OperatorSpec> specs;
    specs.push_back(OperatorSpec::sigma(r3, 2));
    specs.push_back(OperatorSpec::det(r3));
    specs.push_back(OperatorSpec::p_fold_sum(r3, 2));
    specs.push_back(OperatorSpec::lagrangian_ma(2));
    specs.push_back(OperatorSpec::sym_poly(r3, SparseSymPoly::elementary(3, 2)));
    specs.push_back(OperatorSpec::diagonal_poly(SparseSymPoly::monomial(2, {2, 1})));
    specs.push_back(OperatorSpec::ordered_eig_poly(SparseSymPoly::power_mean(2)));
    specs.push_back(OperatorSpec::product({OperatorSpec::sigma(r3, 1), OperatorSpec::det(r3)}));
    specs.push_back(OperatorSpec::directional_derivative(OperatorSpec::det(r3),
                                                         SymmetricMatrix::identity(3), 1));
    specs.push_back(OperatorSpec::compose(SparseSymPoly::elementary(3, 1), OperatorSpec::det(r3)));
    specs.push_back(
        OperatorSpec::convex_combo(SparseSymPoly::power_mean(1), SparseSymPoly::power_mean(1)));
    specs.push_back(
        OperatorSpec::tensor_product(SparseSymPoly::power_mean(1), SparseSymPoly::power_mean(2)));

    for (const auto& F : specs) {
        const OperatorSpec G = operator_from_json(operator_to_json(F));
        CHECK(G.degree() == F.degree());
        CHECK(G.kind() == F.kind());
        const SymmetricMatrix A = random_positive_domain(rng, F);
        CHECK(G(A) == doctest::Approx(F(A)).epsilon(1e-12));
    }
}

TEST_CASE("report serialization carries the contract fields") {
    CheckReport r;
    r.pass = true;
    r.samples = 10;
    r.seed = 42;
    r.worst_gap = 0.5;
    r.residuals["x"] = 1.0;
    const json j = to_json(r);
    CHECK(j.contains("pass"));
    CHECK(j.contains("samples"));
    CHECK(j.contains("seed"));
    CHECK(j.contains("worst_gap"));
    CHECK(j.contains("witness"));
    CHECK(j["witness"].is_null());
    CHECK(j["residuals"]["x"] == 1.0);
    // serialization is deterministic
    CHECK(j.dump() == to_json(r).dump());
}
