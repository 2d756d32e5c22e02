#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gd/garding.hpp"
#include "gd/operators.hpp"
#include "gd/report.hpp"

namespace gd {

// Exact coefficient-level evaluation of the three majorization hypotheses:
// nonnegative coefficients, normalization p(e), and the central ray
// (all partials at e equal).
struct HypothesisReport {
    bool coefficients_nonneg = false;
    std::optional<MultiIndex> negative_term;
    double normalization = 0.0;            // p(e)
    std::vector<double> central_ray;       // partials at e
    bool central_ray_equal = false;        // within 1e-12 of each other
    double k = 0.0;                        // common partial value (mean)
    double euler_k = 0.0;                  // N/n

    bool crh_pass() const { return coefficients_nonneg && central_ray_equal && k > 0.0; }
};

HypothesisReport check_hypotheses(const SparseSymPoly& p);

struct MajorizationReport {
    double gamma = 0.0;  // the factor used in the gap (F(I)^(1/N), or 1 for Lagrangian MA)
    int samples = 0;
    double min_gap = 0.0;  // min over samples of F(A)^(1/N) - gamma * det(A)^(1/n)
    std::optional<SymmetricMatrix> witness;
    std::uint64_t seed = 0;
    bool pass = false;
};

// Seeded positive samples in the operator's domain; the gap uses the field
// determinant and field dimension (real determinant and real dimension for
// the Lagrangian MA operator, whose inequality carries no gamma factor).
// When `gaps` is given it receives the per-sample gap in sample order.
MajorizationReport majorization_harness(const OperatorSpec& F, int samples, std::uint64_t seed,
                                        double eig_cap = 10.0,
                                        std::vector<double>* gaps = nullptr);

// F(A+P)^(1/N) >= F(A)^(1/N) + F(P)^(1/N) and, after normalizing by
// F(I)^(1/N), F(A+P)^(1/N) - F(A)^(1/N) >= det(P)^(1/n) on seeded pairs.
CheckReport superadditivity_check(const OperatorSpec& F, int samples, std::uint64_t seed);

// a_11 ... a_nn >= det(A) for SPD A, checked directly and through the
// Cholesky row-norm route.
CheckReport hadamard_check(const SymmetricMatrix& A);

// F(diag(s,1))^(1/3) / det^(1/2) for F(A) = a11^2 a22; equals s^(1/6).
double counterexample_ratio(double s);

// The diagonal operator a11^(N-1) * (1/n)(a22+...+a_{n+1,n+1}) on (n+1)x(n+1)
// matrices, and its ratio on diag(a11, 1, ..., 1).
OperatorSpec counterexample_general_operator(int N, int n);
double counterexample_ratio_general(int N, int n, double a11);

// Scans s = 10^-1 .. 10^-12 for a ratio below gamma; pass when a violating
// witness is found.
CheckReport counterexample_scan(double gamma);

struct PogorelovGrid {
    int nt = 10;
    int nx = 10;
    double t_min = 0.1, t_max = 0.9;
    double r_min = 0.2, r_max = 2.0;  // |x| range, strictly positive
};

// Integrates g'' = g^(-1/(N-1)), g(0)=1, g'(0)=0 by RK4 and compares the
// finite-difference Hessian evaluation of the regularized singular solution
// against the closed form, plus the subsolution bound F >= k.
CheckReport pogorelov_verify(int N, int n, double eps, const PogorelovGrid& grid = {});

// Tensor product (equal central-ray constants) and convex combination (equal
// degrees) of two hypothesis-passing polynomials, re-checked and run through
// the majorization harness as ordered-eigenvalue operators.
CheckReport ordered_eig_family_check(const SparseSymPoly& q, const SparseSymPoly& r,
                                     int samples = 200, std::uint64_t seed = 42);

}  // namespace gd
