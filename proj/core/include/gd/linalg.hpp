#pragma once

#include <span>
#include <string>
#include <vector>

#include "gd/poly.hpp"

namespace gd {

enum class Algebra { Real, Complex, Quaternionic };

// 1 for R, 2 for C, 4 for H: real dimensions per field coordinate
constexpr int algebra_factor(Algebra a) {
    switch (a) {
        case Algebra::Real: return 1;
        case Algebra::Complex: return 2;
        case Algebra::Quaternionic: return 4;
    }
    return 1;
}

std::string algebra_name(Algebra a);  // "R", "C", "H"
Algebra algebra_from_name(const std::string& s);

// Dense real symmetric matrix with an algebra tag.  Complex and quaternionic
// Hermitian matrices are realized as real symmetric matrices of dimension 2n
// and 4n commuting with the fixed complex structures below.
class SymmetricMatrix {
public:
    SymmetricMatrix(int dim, Algebra algebra = Algebra::Real);  // zero matrix
    static SymmetricMatrix from_entries(int dim, std::span<const double> row_major,
                                        Algebra algebra = Algebra::Real);  // symmetrizes
    static SymmetricMatrix identity(int dim, Algebra algebra = Algebra::Real);
    static SymmetricMatrix diagonal(std::span<const double> d, Algebra algebra = Algebra::Real);

    int dim() const { return dim_; }
    Algebra algebra() const { return algebra_; }
    int field_n() const { return dim_ / algebra_factor(algebra_); }

    double operator()(int i, int j) const { return e_[static_cast<std::size_t>(i * dim_ + j)]; }
    void set(int i, int j, double v);  // writes (i,j) and (j,i)
    std::span<const double> entries() const { return e_; }

    double trace() const;
    double frobenius_norm() const;
    double inner(const SymmetricMatrix& other) const;  // Frobenius inner product

    SymmetricMatrix with_algebra(Algebra a) const;  // retag (dim must divide)

    SymmetricMatrix& operator+=(const SymmetricMatrix& o);
    SymmetricMatrix& operator-=(const SymmetricMatrix& o);
    SymmetricMatrix& operator*=(double c);
    friend SymmetricMatrix operator+(SymmetricMatrix a, const SymmetricMatrix& b) { return a += b; }
    friend SymmetricMatrix operator-(SymmetricMatrix a, const SymmetricMatrix& b) { return a -= b; }
    friend SymmetricMatrix operator*(SymmetricMatrix a, double c) { return a *= c; }
    friend SymmetricMatrix operator*(double c, SymmetricMatrix a) { return a *= c; }

private:
    int dim_;
    Algebra algebra_;
    std::vector<double> e_;
};

// The fixed orthogonal complex structures: block-diagonal left-multiplication
// blocks, one per field coordinate, so I^2 = J^2 = K^2 = -Id and IJ = K.
class ComplexStructures {
public:
    static ComplexStructures complex(int n);        // dim 2n, J only
    static ComplexStructures quaternionic(int n);   // dim 4n, I J K
    static ComplexStructures canonical(Algebra a, int n);

    int dim() const { return dim_; }
    Algebra algebra() const { return alg_; }

    // S * A * S for S in {I, J, K}; index 0=I, 1=J, 2=K (Complex has J only)
    SymmetricMatrix conjugate(const SymmetricMatrix& A, int which) const;
    // || A*S - S*A ||_F
    double commutator_norm(const SymmetricMatrix& A, int which) const;
    int count() const { return alg_ == Algebra::Complex ? 1 : 3; }

private:
    ComplexStructures(int dim, Algebra alg);
    void verify() const;  // structure relations to machine precision

    int dim_;
    Algebra alg_;
    std::vector<std::vector<double>> s_;  // dense dim x dim, skew orthogonal
};

struct Spectrum {
    std::vector<double> values;  // ascending
    double residual = 0.0;       // max off-diagonal magnitude at convergence
};

// Cyclic Jacobi; throws after 100 sweeps without reaching 1e-12 * ||A||_F.
Spectrum eigenvalues_sym(const SymmetricMatrix& A);
// Same, also accumulating eigenvectors (column k of `vectors` pairs with values[k]).
Spectrum eigenvalues_sym(const SymmetricMatrix& A, std::vector<double>& vectors);

// Orthogonal projections onto the structure commutant.
SymmetricMatrix project_complex(const SymmetricMatrix& A, const ComplexStructures& S);
SymmetricMatrix project_quaternionic(const SymmetricMatrix& A, const ComplexStructures& S);
// Convenience: projects according to A's algebra tag (identity for Real).
SymmetricMatrix project_to_algebra(const SymmetricMatrix& A);

// Coefficients of det(Id + t A) up to degree m (m <= dim); coefficient k is
// the k-th elementary symmetric function of the eigenvalues.  Computed from
// LU determinant evaluations at integer nodes, no eigenvalue decomposition.
TruncatedSeries char_series(const SymmetricMatrix& A, int m);

// Field determinant: LU for Real; for Complex/Quaternionic the degree-n
// coefficient of the formal square/fourth root of char_series.  The matrix
// must already commute with the structures.
double det_field(const SymmetricMatrix& A);

// Plain real determinant of the stored matrix, by LU with partial pivoting.
double det_real(const SymmetricMatrix& A);

struct LowerTriangular {
    int dim = 0;
    std::vector<double> e;  // row-major, upper part zero
    double operator()(int i, int j) const { return e[static_cast<std::size_t>(i * dim + j)]; }
};

// Cholesky factor L with L L^t = A; throws if a pivot is not positive.
LowerTriangular cholesky(const SymmetricMatrix& A);

// Eigenvalues listed per field coordinate: all of them for Real, every pair
// (quadruple) collapsed for Complex (Quaternionic), with a multiplicity-
// divisibility check at 1e-7 * max(1, ||A||_F).
std::vector<double> field_eigenvalues(const SymmetricMatrix& A);

// Field trace: trace / algebra_factor.
double field_trace(const SymmetricMatrix& A);

// Orthonormal basis (Frobenius) of the symmetric matrices for Real, of the
// structure commutant for Complex/Quaternionic.
std::vector<SymmetricMatrix> orthonormal_basis(int dim, Algebra algebra);

}  // namespace gd
