#pragma once

#include <cstdint>
#include <vector>

#include "gd/operators.hpp"
#include "gd/report.hpp"

namespace gd {

// Garding eigenvalues lambda_j of B with respect to A, the reals in the
// factorization F(sA + B) = F(A) * prod_j (s + lambda_j).
struct GardingSpectrum {
    std::vector<double> values;            // ascending, length degree(F)
    double hyperbolicity_residual = 0.0;   // max |Im| from root finding
    int degree_drop = 0;                   // zero eigenvalues recovered by deflation
    double factorization_residual = 0.0;   // coefficient-wise defect of the factorization
};

// Interpolates s -> F(sA + B) at integer nodes 0..degree, extracts roots from
// the deflated polynomial and negates them; trailing coefficients below
// 1e-10 of the largest are deflated into zero eigenvalues.
// Throws if |F(A)| <= 1e-12 * max(1, ||A||^N) ("base point on zero set").
GardingSpectrum garding_spectrum(const OperatorSpec& F, const SymmetricMatrix& A,
                                 const SymmetricMatrix& B);

// Seeded sampling of the hyperbolicity residual over the operator's domain.
CheckReport is_hyperbolic(const OperatorSpec& F, int samples, std::uint64_t seed,
                          double tol = 1e-8);

// Minimum Garding I-eigenvalue of A above tol; tol < 0 selects the default
// 1e-9 * (1 + ||A||_F).
bool in_garding_cone(const OperatorSpec& F, const SymmetricMatrix& A, double tol = -1.0);

struct EdgeSpanDecomposition {
    std::vector<SymmetricMatrix> edge_basis;  // E: null directions of Q(B) = sum lambda_j(B)^2
    std::vector<SymmetricMatrix> span_basis;  // S = E^perp within the domain
    double nullspace_tolerance = 0.0;
};

// Gram matrix of Q over the domain basis via polarization, eigendecomposed;
// eigenvalues <= tol * max(1, lambda_max) span the edge.
EdgeSpanDecomposition edge_and_span(const OperatorSpec& F, double tol = 1e-6);

// k-th directional derivative of log F at A along B:
// (-1)^(k-1) (k-1)! sum_j lambda_j^A(B)^k.
double log_derivative(const OperatorSpec& F, const SymmetricMatrix& A, const SymmetricMatrix& B,
                      int k);

// Gradient of F at A as a matrix G with <G, B> = d/dt F(A + tB)|_0, assembled
// from directional derivatives along the domain basis.
SymmetricMatrix gradient_matrix(const OperatorSpec& F, const SymmetricMatrix& A);

// |sum lambda^k|^(1/k) <= (sum lambda^l)^(1/l) for l even, l <= k; equality
// exactly on the edge or on single-eigenvalue directions.
CheckReport guler_check(const OperatorSpec& F, const SymmetricMatrix& A, const SymmetricMatrix& B,
                        int k, int l);

// Second-derivative identities of log F, F and F^(1/N) along B against
// centered finite differences, relative tolerance 1e-4.
CheckReport discriminant_identity_check(const OperatorSpec& F, const SymmetricMatrix& A,
                                        const SymmetricMatrix& B);

}  // namespace gd
