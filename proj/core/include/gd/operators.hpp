#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "gd/linalg.hpp"
#include "gd/poly.hpp"

namespace gd {

// Matrix space of an operator: algebra tag plus field dimension n.
// The real matrices acted on have dimension n * algebra_factor.
struct Space {
    Algebra algebra = Algebra::Real;
    int n = 0;

    int matrix_dim() const { return n * algebra_factor(algebra); }
    bool operator==(const Space&) const = default;
};

// Trace / skew decomposition data for the Lagrangian Monge-Ampere operator on
// C^n = (R^{2n}, J):  A = t*Id + (traceless Hermitian part, ignored) + skew part.
struct LagrangianEigData {
    double t = 0.0;                    // tr(A) / 2n
    std::vector<double> lambdas;       // skew-part eigenvalue magnitudes, ascending
    std::vector<double> eps_plus;      // t + lambda_j
    std::vector<double> eps_minus;     // t - lambda_j
    double discarded_hermitian_norm = 0.0;  // ||traceless Hermitian part||_F
};

LagrangianEigData lagrangian_decompose(const SymmetricMatrix& A);

// Immutable expression tree describing a Garding-Dirichlet operator.
// Evaluation applies the node semantics to the field eigenvalue list
// (half multiplicity for C, quarter for H).
class OperatorSpec {
public:
    enum class Kind {
        Sigma,             // k-th elementary symmetric function of the eigenvalues
        Det,               // field determinant
        PFoldSum,          // product of (lambda_{j1}+...+lambda_{jp}) over p-subsets
        LagrangianMA,      // 2^n-factor product of (mu +- lambda_1 +- ... +- lambda_n)
        SymPolyOfEigs,     // symmetric p on the eigenvalue list
        DiagonalPoly,      // p on the diagonal entries (real spaces)
        OrderedEigPoly,    // p on the ascending eigenvalue list (real spaces)
        Product,
        DirectionalDeriv,  // k-th t-derivative of F(tP + A) at t = 0
        Compose,           // p evaluated on the Garding eigenvalues of the inner operator
        ConvexCombo,       // weighted split sum on ordered eigenvalues
        TensorProduct,     // split product on ordered eigenvalues
    };

    static OperatorSpec sigma(Space space, int k);
    static OperatorSpec det(Space space);
    static OperatorSpec p_fold_sum(Space space, int p);
    static OperatorSpec lagrangian_ma(int n);
    static OperatorSpec sym_poly(Space space, SparseSymPoly p);
    static OperatorSpec diagonal_poly(SparseSymPoly p);
    static OperatorSpec ordered_eig_poly(SparseSymPoly p);
    static OperatorSpec product(std::vector<OperatorSpec> factors);
    static OperatorSpec directional_derivative(OperatorSpec inner, SymmetricMatrix direction,
                                               int order);
    static OperatorSpec compose(SparseSymPoly outer, OperatorSpec inner);
    // q, r are normalized internally; weights k'/(k+k'), k/(k+k') from the
    // central-ray constants; degrees must agree.
    static OperatorSpec convex_combo(SparseSymPoly q, SparseSymPoly r);
    // q, r normalized internally so the product is normalized at the identity.
    static OperatorSpec tensor_product(SparseSymPoly q, SparseSymPoly r);

    Kind kind() const;
    Space space() const;
    int degree() const;
    // (field n, real matrix dimension)
    std::pair<int, int> dimension() const { return {space().n, space().matrix_dim()}; }

    double operator()(const SymmetricMatrix& A) const;  // evaluate

    // structural accessors (serialization, reports)
    int param() const;  // Sigma k / PFoldSum p / DirectionalDeriv order
    const std::vector<SparseSymPoly>& polys() const;
    const std::vector<OperatorSpec>& children() const;
    const SymmetricMatrix& direction() const;
    std::pair<double, double> combo_weights() const;

    // true if evaluation reads the field eigenvalue list of a C/H matrix,
    // i.e. inputs must commute with the structures
    bool requires_commutant() const;

private:
    struct Node;
    explicit OperatorSpec(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

// k! * (coefficient of t^k in t -> F(tP + A)), by exact interpolation at
// integer nodes 0..degree(F).
double directional_coefficient(const OperatorSpec& F, const SymmetricMatrix& A,
                               const SymmetricMatrix& P, int order);

// (1/k!) * delta_I^k F(A).  Computed by interpolation and cross-checked
// against sigma_{N-k}(Garding I-eigenvalues) * F(I); throws if the two
// routes disagree beyond 1e-7 relative.
double delta_I_elementary(const OperatorSpec& F, const SymmetricMatrix& A, int k);

// Orthonormal basis of the operator's domain: the structure commutant when
// field eigenvalues are read, the full symmetric space otherwise.
std::vector<SymmetricMatrix> domain_basis(const OperatorSpec& F);

}  // namespace gd
