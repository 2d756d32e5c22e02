#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "gd/cones.hpp"
#include "gd/garding.hpp"
#include "gd/majorize.hpp"
#include "gd/operators.hpp"
#include "gd/report.hpp"

namespace gd {

// Parse/validation error carrying a JSON-pointer-style location.
class io_error : public std::runtime_error {
public:
    io_error(std::string where, const std::string& what)
        : std::runtime_error(where + ": " + what), where_(std::move(where)) {}
    const std::string& where() const { return where_; }

private:
    std::string where_;
};

// {"dim": d, "algebra": "R"|"C"|"H", "entries": [[...], ...]}
// Asymmetric entries are rejected, not symmetrized.
SymmetricMatrix matrix_from_json(const nlohmann::json& j, const std::string& where = "");
nlohmann::json matrix_to_json(const SymmetricMatrix& A);
SymmetricMatrix load_matrix(const std::string& path);

// {"nvars": n, "terms": [{"alpha": [...], "coeff": c}, ...]}
SparseSymPoly poly_from_json(const nlohmann::json& j, const std::string& where = "");
nlohmann::json poly_to_json(const SparseSymPoly& p);
SparseSymPoly load_poly(const std::string& path);

// {"space": {"algebra": "R", "n": 3}, "op": {"kind": ..., ...}}
OperatorSpec operator_from_json(const nlohmann::json& j, const std::string& where = "");
nlohmann::json operator_to_json(const OperatorSpec& F);
OperatorSpec load_operator(const std::string& path);

nlohmann::json to_json(const CheckReport& r);
nlohmann::json to_json(const MajorizationReport& r);
nlohmann::json to_json(const HypothesisReport& r);
nlohmann::json to_json(const PolarTestReport& r);
nlohmann::json to_json(const CentralRayReport& r);
nlohmann::json to_json(const GardingSpectrum& s);

}  // namespace gd
