#include "gd/io.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace gd {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    for (const auto& [key, value] : j.items())
        if (!allowed.count(key)) throw io_error(where + "/" + key, "unknown field");
}

const json& field(const json& j, const char* name, const std::string& where) {
    auto it = j.find(name);
    if (it == j.end()) throw io_error(where, std::string("missing field '") + name + "'");
    return *it;
}

json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error(path, "cannot open file");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw io_error(path, e.what());
    }
    return j;
}

}  // namespace

// ------------------------------------------------------------------- matrix

SymmetricMatrix matrix_from_json(const json& j, const std::string& where) {
    if (!j.is_object()) throw io_error(where, "matrix must be an object");
    reject_unknown(j, {"dim", "algebra", "entries"}, where);
    const int dim = field(j, "dim", where).get<int>();
    const Algebra alg = algebra_from_name(field(j, "algebra", where).get<std::string>());
    const json& rows = field(j, "entries", where);
    if (!rows.is_array() || static_cast<int>(rows.size()) != dim)
        throw io_error(where + "/entries", "expected " + std::to_string(dim) + " rows");
    std::vector<double> e(static_cast<std::size_t>(dim) * dim);
    double amax = 0.0;
    for (int i = 0; i < dim; ++i) {
        const json& row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != dim)
            throw io_error(where + "/entries/" + std::to_string(i),
                           "expected " + std::to_string(dim) + " columns");
        for (int k = 0; k < dim; ++k) {
            e[static_cast<std::size_t>(i * dim + k)] = row[static_cast<std::size_t>(k)].get<double>();
            amax = std::max(amax, std::fabs(e[static_cast<std::size_t>(i * dim + k)]));
        }
    }
    for (int i = 0; i < dim; ++i)
        for (int k = i + 1; k < dim; ++k)
            if (std::fabs(e[static_cast<std::size_t>(i * dim + k)] - e[static_cast<std::size_t>(k * dim + i)]) >
                1e-12 * std::max(1.0, amax))
                throw io_error(where + "/entries", "matrix is not symmetric at (" +
                                                       std::to_string(i) + "," + std::to_string(k) + ")");
    try {
        return SymmetricMatrix::from_entries(dim, e, alg);
    } catch (const std::exception& ex) {
        throw io_error(where, ex.what());
    }
}

json matrix_to_json(const SymmetricMatrix& A) {
    json rows = json::array();
    for (int i = 0; i < A.dim(); ++i) {
        json row = json::array();
        for (int k = 0; k < A.dim(); ++k) row.push_back(A(i, k));
        rows.push_back(std::move(row));
    }
    return json{{"dim", A.dim()}, {"algebra", algebra_name(A.algebra())}, {"entries", rows}};
}

SymmetricMatrix load_matrix(const std::string& path) {
    return matrix_from_json(read_file(path), path);
}

// --------------------------------------------------------------- polynomial

SparseSymPoly poly_from_json(const json& j, const std::string& where) {
    if (!j.is_object()) throw io_error(where, "polynomial must be an object");
    reject_unknown(j, {"nvars", "terms"}, where);
    const int nvars = field(j, "nvars", where).get<int>();
    const json& terms = field(j, "terms", where);
    if (!terms.is_array() || terms.empty())
        throw io_error(where + "/terms", "expected a non-empty array");
    std::map<MultiIndex, double> map;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const std::string tw = where + "/terms/" + std::to_string(i);
        const json& term = terms[i];
        reject_unknown(term, {"alpha", "coeff"}, tw);
        MultiIndex alpha = field(term, "alpha", tw).get<MultiIndex>();
        map[alpha] += field(term, "coeff", tw).get<double>();
    }
    try {
        return SparseSymPoly(nvars, std::move(map));
    } catch (const std::exception& ex) {
        throw io_error(where, ex.what());
    }
}

json poly_to_json(const SparseSymPoly& p) {
    json terms = json::array();
    for (const auto& [alpha, coeff] : p.terms())
        terms.push_back(json{{"alpha", alpha}, {"coeff", coeff}});
    return json{{"nvars", p.nvars()}, {"terms", terms}};
}

SparseSymPoly load_poly(const std::string& path) { return poly_from_json(read_file(path), path); }

// ----------------------------------------------------------------- operator

namespace {

OperatorSpec node_from_json(const json& j, const Space& space, const std::string& where) {
    if (!j.is_object()) throw io_error(where, "operator node must be an object");
    const std::string kind = field(j, "kind", where).get<std::string>();
    try {
        if (kind == "sigma") {
            reject_unknown(j, {"kind", "k"}, where);
            return OperatorSpec::sigma(space, field(j, "k", where).get<int>());
        }
        if (kind == "det") {
            reject_unknown(j, {"kind"}, where);
            return OperatorSpec::det(space);
        }
        if (kind == "pfold") {
            reject_unknown(j, {"kind", "p"}, where);
            return OperatorSpec::p_fold_sum(space, field(j, "p", where).get<int>());
        }
        if (kind == "lagrangian-ma") {
            reject_unknown(j, {"kind"}, where);
            if (space.algebra != Algebra::Complex)
                throw io_error(where, "lagrangian-ma requires the complex algebra");
            return OperatorSpec::lagrangian_ma(space.n);
        }
        if (kind == "sym-poly") {
            reject_unknown(j, {"kind", "poly"}, where);
            return OperatorSpec::sym_poly(space, poly_from_json(field(j, "poly", where), where + "/poly"));
        }
        if (kind == "diagonal-poly") {
            reject_unknown(j, {"kind", "poly"}, where);
            return OperatorSpec::diagonal_poly(poly_from_json(field(j, "poly", where), where + "/poly"));
        }
        if (kind == "ordered-eig-poly") {
            reject_unknown(j, {"kind", "poly"}, where);
            return OperatorSpec::ordered_eig_poly(
                poly_from_json(field(j, "poly", where), where + "/poly"));
        }
        if (kind == "product") {
            reject_unknown(j, {"kind", "factors"}, where);
            const json& factors = field(j, "factors", where);
            if (!factors.is_array() || factors.empty())
                throw io_error(where + "/factors", "expected a non-empty array");
            std::vector<OperatorSpec> subs;
            for (std::size_t i = 0; i < factors.size(); ++i)
                subs.push_back(node_from_json(factors[i], space,
                                              where + "/factors/" + std::to_string(i)));
            return OperatorSpec::product(std::move(subs));
        }
        if (kind == "directional-deriv") {
            reject_unknown(j, {"kind", "inner", "direction", "order"}, where);
            OperatorSpec inner = node_from_json(field(j, "inner", where), space, where + "/inner");
            const json& dir = field(j, "direction", where);
            SymmetricMatrix direction =
                dir.is_object() && dir.contains("file")
                    ? load_matrix(dir["file"].get<std::string>())
                    : matrix_from_json(dir, where + "/direction");
            return OperatorSpec::directional_derivative(std::move(inner), std::move(direction),
                                                        field(j, "order", where).get<int>());
        }
        if (kind == "compose") {
            reject_unknown(j, {"kind", "outer", "inner"}, where);
            OperatorSpec inner = node_from_json(field(j, "inner", where), space, where + "/inner");
            return OperatorSpec::compose(poly_from_json(field(j, "outer", where), where + "/outer"),
                                         std::move(inner));
        }
        if (kind == "convex-combo") {
            reject_unknown(j, {"kind", "q", "r"}, where);
            return OperatorSpec::convex_combo(poly_from_json(field(j, "q", where), where + "/q"),
                                              poly_from_json(field(j, "r", where), where + "/r"));
        }
        if (kind == "tensor-product") {
            reject_unknown(j, {"kind", "q", "r"}, where);
            return OperatorSpec::tensor_product(poly_from_json(field(j, "q", where), where + "/q"),
                                                poly_from_json(field(j, "r", where), where + "/r"));
        }
    } catch (const io_error&) {
        throw;
    } catch (const std::exception& ex) {
        throw io_error(where, ex.what());
    }
    throw io_error(where + "/kind", "unknown operator kind '" + kind + "'");
}

}  // namespace

OperatorSpec operator_from_json(const json& j, const std::string& where) {
    if (!j.is_object()) throw io_error(where, "operator spec must be an object");
    reject_unknown(j, {"space", "op"}, where);
    const json& js = field(j, "space", where);
    reject_unknown(js, {"algebra", "n"}, where + "/space");
    Space space;
    try {
        space.algebra = algebra_from_name(field(js, "algebra", where + "/space").get<std::string>());
    } catch (const std::exception& ex) {
        throw io_error(where + "/space/algebra", ex.what());
    }
    space.n = field(js, "n", where + "/space").get<int>();
    if (space.n < 1) throw io_error(where + "/space/n", "must be positive");

    OperatorSpec op = node_from_json(field(j, "op", where), space, where + "/op");
    if (!(op.space() == space))
        throw io_error(where + "/op",
                       "operator space disagrees with the declared space (polynomial arity?)");
    return op;
}

json operator_to_json(const OperatorSpec& F) {
    std::function<json(const OperatorSpec&)> node = [&](const OperatorSpec& f) -> json {
        using Kind = OperatorSpec::Kind;
        switch (f.kind()) {
            case Kind::Sigma: return json{{"kind", "sigma"}, {"k", f.param()}};
            case Kind::Det: return json{{"kind", "det"}};
            case Kind::PFoldSum: return json{{"kind", "pfold"}, {"p", f.param()}};
            case Kind::LagrangianMA: return json{{"kind", "lagrangian-ma"}};
            case Kind::SymPolyOfEigs:
                return json{{"kind", "sym-poly"}, {"poly", poly_to_json(f.polys()[0])}};
            case Kind::DiagonalPoly:
                return json{{"kind", "diagonal-poly"}, {"poly", poly_to_json(f.polys()[0])}};
            case Kind::OrderedEigPoly:
                return json{{"kind", "ordered-eig-poly"}, {"poly", poly_to_json(f.polys()[0])}};
            case Kind::Product: {
                json factors = json::array();
                for (const auto& c : f.children()) factors.push_back(node(c));
                return json{{"kind", "product"}, {"factors", factors}};
            }
            case Kind::DirectionalDeriv:
                return json{{"kind", "directional-deriv"},
                            {"inner", node(f.children()[0])},
                            {"direction", matrix_to_json(f.direction())},
                            {"order", f.param()}};
            case Kind::Compose:
                return json{{"kind", "compose"},
                            {"outer", poly_to_json(f.polys()[0])},
                            {"inner", node(f.children()[0])}};
            case Kind::ConvexCombo:
                return json{{"kind", "convex-combo"},
                            {"q", poly_to_json(f.polys()[0])},
                            {"r", poly_to_json(f.polys()[1])}};
            case Kind::TensorProduct:
                return json{{"kind", "tensor-product"},
                            {"q", poly_to_json(f.polys()[0])},
                            {"r", poly_to_json(f.polys()[1])}};
        }
        return json{};
    };
    return json{{"space", json{{"algebra", algebra_name(F.space().algebra)}, {"n", F.space().n}}},
                {"op", node(F)}};
}

OperatorSpec load_operator(const std::string& path) {
    return operator_from_json(read_file(path), path);
}

// ------------------------------------------------------------------ reports

json to_json(const CheckReport& r) {
    return json{{"pass", r.pass},
                {"samples", r.samples},
                {"seed", r.seed},
                {"worst_gap", r.worst_gap},
                {"witness", r.witness ? matrix_to_json(*r.witness) : json(nullptr)},
                {"residuals", r.residuals}};
}

json to_json(const MajorizationReport& r) {
    return json{{"pass", r.pass},
                {"gamma", r.gamma},
                {"samples", r.samples},
                {"seed", r.seed},
                {"min_gap", r.min_gap},
                {"witness", r.witness ? matrix_to_json(*r.witness) : json(nullptr)}};
}

json to_json(const HypothesisReport& r) {
    return json{{"coefficients_nonneg", r.coefficients_nonneg},
                {"violating_alpha", r.negative_term ? json(*r.negative_term) : json(nullptr)},
                {"normalization", r.normalization},
                {"central_ray", r.central_ray},
                {"central_ray_equal", r.central_ray_equal},
                {"k", r.k},
                {"euler_k", r.euler_k},
                {"crh_pass", r.crh_pass()}};
}

json to_json(const PolarTestReport& r) {
    return json{{"epsilon_hat", r.epsilon_hat},
                {"pass", r.pass},
                {"falsifier", r.falsifier ? matrix_to_json(*r.falsifier) : json(nullptr)},
                {"samples", r.samples},
                {"seed", r.seed}};
}

json to_json(const CentralRayReport& r) {
    return json{{"gradient_at_I", matrix_to_json(r.gradient_at_I)},
                {"k_hat", r.k_hat},
                {"deviation", r.deviation},
                {"k_theory", r.k_theory},
                {"laplacian_deviation", r.laplacian_deviation},
                {"inequality_margin", r.inequality_margin},
                {"ray_point", matrix_to_json(r.ray_point)},
                {"pass", r.pass}};
}

json to_json(const GardingSpectrum& s) {
    return json{{"values", s.values},
                {"hyperbolicity_residual", s.hyperbolicity_residual},
                {"degree_drop", s.degree_drop},
                {"factorization_residual", s.factorization_residual}};
}

}  // namespace gd
