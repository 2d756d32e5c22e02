#include "gd/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gd/garding.hpp"

namespace gd {

struct OperatorSpec::Node {
    Kind kind{};
    Space space{};
    int degree = 0;
    int param = 0;                        // Sigma k / PFoldSum p / DirectionalDeriv order
    std::vector<SparseSymPoly> polys;     // SymPoly/Diagonal/OrderedEig: 1; Compose outer: 1;
                                          // ConvexCombo/TensorProduct: q, r (normalized)
    std::vector<OperatorSpec> children;   // Product factors / DirectionalDeriv, Compose inner
    std::shared_ptr<const SymmetricMatrix> direction;
    double wq = 0.0, wr = 0.0;            // ConvexCombo weights
};

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

double mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

}  // namespace

OperatorSpec OperatorSpec::sigma(Space space, int k) {
    require(space.n >= 1, "sigma: space dimension must be positive");
    require(k >= 1 && k <= space.n, "sigma: k out of range");
    auto n = std::make_shared<OperatorSpec::Node>();
    n->kind = Kind::Sigma;
    n->space = space;
    n->degree = k;
    n->param = k;
    return OperatorSpec(std::move(n));
}

OperatorSpec OperatorSpec::det(Space space) {
    require(space.n >= 1, "det: space dimension must be positive");
    auto n = std::make_shared<OperatorSpec::Node>();
    n->kind = Kind::Det;
    n->space = space;
    n->degree = space.n;
    return OperatorSpec(std::move(n));
}

OperatorSpec OperatorSpec::p_fold_sum(Space space, int p) {
    require(space.n >= 1, "p_fold_sum: space dimension must be positive");
    require(p >= 1 && p <= space.n, "p_fold_sum: p out of range");
    auto n = std::make_shared<OperatorSpec::Node>();
    n->kind = Kind::PFoldSum;
    n->space = space;
    n->degree = static_cast<int>(binomial(space.n, p));
    n->param = p;
    return OperatorSpec(std::move(n));
}

OperatorSpec OperatorSpec::lagrangian_ma(int nn) {
    require(nn >= 1 && nn <= 16, "lagrangian_ma: n out of range");
    auto n = std::make_shared<OperatorSpec::Node>();
    n->kind = Kind::LagrangianMA;
    n->space = Space{Algebra::Complex, nn};
    n->degree = 1 << nn;
    return OperatorSpec(std::move(n));
}

OperatorSpec OperatorSpec::sym_poly(Space space, SparseSymPoly p) {
    require(p.nvars() == space.n, "sym_poly: polynomial arity != space dimension");
    require(p.is_permutation_symmetric(), "sym_poly: polynomial must be symmetric");
    auto n = std::make_shared<OperatorSpec::Node>();
    n->kind = Kind::SymPolyOfEigs;
    n->space = space;
    n->degree = p.degree();
    n->polys.push_back(std::move(p));
    return OperatorSpec(std::move(n));
}

OperatorSpec OperatorSpec::diagonal_poly(SparseSymPoly p) {
    auto n = std::make_shared<OperatorSpec::Node>();
    n->kind = Kind::DiagonalPoly;
    n->space = Space{Algebra::Real, p.nvars()};
    n->degree = p.degree();
    n->polys.push_back(std::move(p));
    return OperatorSpec(std::move(n));
}

OperatorSpec OperatorSpec::ordered_eig_poly(SparseSymPoly p) {
    auto n = std::make_shared<OperatorSpec::Node>();
    n->kind = Kind::OrderedEigPoly;
    n->space = Space{Algebra::Real, p.nvars()};
    n->degree = p.degree();
    n->polys.push_back(std::move(p));
    return OperatorSpec(std::move(n));
}

OperatorSpec OperatorSpec::product(std::vector<OperatorSpec> factors) {
    require(!factors.empty(), "product: needs at least one factor");
    auto n = std::make_shared<OperatorSpec::Node>();
    n->kind = Kind::Product;
    n->space = factors.front().space();
    for (const auto& f : factors) {
        require(f.space() == n->space, "product: factor spaces disagree");
        n->degree += f.degree();
    }
    n->children = std::move(factors);
    return OperatorSpec(std::move(n));
}

OperatorSpec OperatorSpec::directional_derivative(OperatorSpec inner, SymmetricMatrix direction,
                                                  int order) {
    require(direction.dim() == inner.space().matrix_dim(),
            "directional_derivative: direction dimension mismatch");
    require(order >= 1 && order < inner.degree(),
            "directional_derivative: order must be in [1, degree)");
    auto n = std::make_shared<OperatorSpec::Node>();
    n->kind = Kind::DirectionalDeriv;
    n->space = inner.space();
    n->degree = inner.degree() - order;
    n->param = order;
    n->children.push_back(std::move(inner));
    n->direction = std::make_shared<const SymmetricMatrix>(std::move(direction));
    return OperatorSpec(std::move(n));
}

OperatorSpec OperatorSpec::compose(SparseSymPoly outer, OperatorSpec inner) {
    require(outer.nvars() == inner.degree(),
            "compose: outer arity must equal the inner operator degree");
    require(outer.is_permutation_symmetric(), "compose: outer polynomial must be symmetric");
    auto n = std::make_shared<OperatorSpec::Node>();
    n->kind = Kind::Compose;
    n->space = inner.space();
    n->degree = outer.degree();
    n->polys.push_back(std::move(outer));
    n->children.push_back(std::move(inner));
    return OperatorSpec(std::move(n));
}

OperatorSpec OperatorSpec::convex_combo(SparseSymPoly q, SparseSymPoly r) {
    require(q.degree() == r.degree(), "convex_combo: summands must have the same degree");
    SparseSymPoly qn = q.normalized(), rn = r.normalized();
    const double kq = mean(qn.partials_at_e());
    const double kr = mean(rn.partials_at_e());
    require(kq > 0.0 && kr > 0.0, "convex_combo: central-ray constants must be positive");
    auto n = std::make_shared<OperatorSpec::Node>();
    n->kind = Kind::ConvexCombo;
    n->space = Space{Algebra::Real, qn.nvars() + rn.nvars()};
    n->degree = qn.degree();
    n->wq = kr / (kq + kr);
    n->wr = kq / (kq + kr);
    n->polys.push_back(std::move(qn));
    n->polys.push_back(std::move(rn));
    return OperatorSpec(std::move(n));
}

OperatorSpec OperatorSpec::tensor_product(SparseSymPoly q, SparseSymPoly r) {
    SparseSymPoly qn = q.normalized(), rn = r.normalized();
    auto n = std::make_shared<OperatorSpec::Node>();
    n->kind = Kind::TensorProduct;
    n->space = Space{Algebra::Real, qn.nvars() + rn.nvars()};
    n->degree = qn.degree() + rn.degree();
    n->polys.push_back(std::move(qn));
    n->polys.push_back(std::move(rn));
    return OperatorSpec(std::move(n));
}

OperatorSpec::Kind OperatorSpec::kind() const { return node_->kind; }
Space OperatorSpec::space() const { return node_->space; }
int OperatorSpec::degree() const { return node_->degree; }
int OperatorSpec::param() const { return node_->param; }
const std::vector<SparseSymPoly>& OperatorSpec::polys() const { return node_->polys; }
const std::vector<OperatorSpec>& OperatorSpec::children() const { return node_->children; }

const SymmetricMatrix& OperatorSpec::direction() const {
    if (!node_->direction) throw std::logic_error("OperatorSpec: node has no direction");
    return *node_->direction;
}

std::pair<double, double> OperatorSpec::combo_weights() const { return {node_->wq, node_->wr}; }

bool OperatorSpec::requires_commutant() const {
    if (space().algebra == Algebra::Real) return false;
    switch (kind()) {
        case Kind::LagrangianMA: return false;
        case Kind::Product:
        case Kind::DirectionalDeriv:
        case Kind::Compose: {
            for (const auto& c : children())
                if (c.requires_commutant()) return true;
            return false;
        }
        default: return true;
    }
}

// ------------------------------------------------------------------ evaluate

namespace {

double p_fold_product(const std::vector<double>& lam, int p) {
    const int n = static_cast<int>(lam.size());
    std::vector<int> idx(static_cast<std::size_t>(p));
    for (int i = 0; i < p; ++i) idx[static_cast<std::size_t>(i)] = i;
    double prod = 1.0;
    for (;;) {
        double sum = 0.0;
        for (int i : idx) sum += lam[static_cast<std::size_t>(i)];
        prod *= sum;
        int pos = p - 1;
        while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - p + pos) --pos;
        if (pos < 0) break;
        ++idx[static_cast<std::size_t>(pos)];
        for (int i = pos + 1; i < p; ++i)
            idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
    }
    return prod;
}

double lagrangian_product(const LagrangianEigData& d) {
    const int n = static_cast<int>(d.lambdas.size());
    const double mu = d.t * n;
    double prod = 1.0;
    for (unsigned signs = 0; signs < (1u << n); ++signs) {
        double factor = mu;
        for (int j = 0; j < n; ++j)
            factor += (signs >> j) & 1u ? -d.lambdas[static_cast<std::size_t>(j)]
                                        : d.lambdas[static_cast<std::size_t>(j)];
        prod *= factor;
    }
    return prod;
}

}  // namespace

LagrangianEigData lagrangian_decompose(const SymmetricMatrix& A) {
    if (A.algebra() != Algebra::Complex)
        throw std::invalid_argument("lagrangian_decompose: matrix must carry the complex tag");
    const int n = A.field_n();
    const int dim = A.dim();
    const ComplexStructures S = ComplexStructures::complex(n);

    LagrangianEigData out;
    out.t = A.trace() / dim;
    // Hermitian part commutes with J, skew part anticommutes
    const SymmetricMatrix herm = (A - S.conjugate(A, 0)) * 0.5;
    const SymmetricMatrix skew = A - herm;
    out.discarded_hermitian_norm =
        (herm - SymmetricMatrix::identity(dim, Algebra::Complex) * out.t).frobenius_norm();

    // skew-Hermitian spectrum is symmetric about zero: +-lambda_j
    const Spectrum spec = eigenvalues_sym(skew);
    out.lambdas.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
        out.lambdas[static_cast<std::size_t>(j)] =
            0.5 * (spec.values[static_cast<std::size_t>(n + j)] -
                   spec.values[static_cast<std::size_t>(n - 1 - j)]);
    std::sort(out.lambdas.begin(), out.lambdas.end());
    for (double l : out.lambdas) {
        out.eps_plus.push_back(out.t + l);
        out.eps_minus.push_back(out.t - l);
    }
    return out;
}

double OperatorSpec::operator()(const SymmetricMatrix& A) const {
    const Space sp = space();
    if (A.dim() != sp.matrix_dim() || A.algebra() != sp.algebra)
        throw std::invalid_argument("OperatorSpec: matrix not in the operator space");

    switch (kind()) {
        case Kind::Sigma:
            return elementary_symmetric(field_eigenvalues(A), param());
        case Kind::Det:
            return det_field(A);
        case Kind::PFoldSum:
            return p_fold_product(field_eigenvalues(A), param());
        case Kind::LagrangianMA:
            return lagrangian_product(lagrangian_decompose(A));
        case Kind::SymPolyOfEigs:
            return polys()[0].eval(field_eigenvalues(A));
        case Kind::DiagonalPoly: {
            std::vector<double> diag(static_cast<std::size_t>(A.dim()));
            for (int i = 0; i < A.dim(); ++i) diag[static_cast<std::size_t>(i)] = A(i, i);
            return polys()[0].eval(diag);
        }
        case Kind::OrderedEigPoly:
            return polys()[0].eval(eigenvalues_sym(A).values);
        case Kind::Product: {
            double prod = 1.0;
            for (const auto& f : children()) prod *= f(A);
            return prod;
        }
        case Kind::DirectionalDeriv:
            return directional_coefficient(children()[0], A, direction(), param());
        case Kind::Compose:
            return polys()[0].eval(garding_spectrum(children()[0],
                                                    SymmetricMatrix::identity(A.dim(), A.algebra()),
                                                    A)
                                       .values);
        case Kind::ConvexCombo:
        case Kind::TensorProduct: {
            const auto& q = polys()[0];
            const auto& r = polys()[1];
            const std::vector<double> lam = eigenvalues_sym(A).values;
            const std::span<const double> all(lam);
            const auto head = all.subspan(0, static_cast<std::size_t>(q.nvars()));
            const auto tail = all.subspan(static_cast<std::size_t>(q.nvars()));
            if (kind() == Kind::TensorProduct) return q.eval(head) * r.eval(tail);
            const auto [wq, wr] = combo_weights();
            return wq * q.eval(head) + wr * r.eval(tail);
        }
    }
    throw std::logic_error("OperatorSpec: unknown node kind");
}

double directional_coefficient(const OperatorSpec& F, const SymmetricMatrix& A,
                               const SymmetricMatrix& P, int order) {
    const int N = F.degree();
    if (order < 0 || order > N)
        throw std::invalid_argument("directional_coefficient: order out of range");
    // sample at t = k*h with the node range bounded by the scale of A, so the
    // values stay within a factor ~2^N of F(A)
    const double h = std::clamp(
        std::max(A.frobenius_norm(), 1e-6) /
            (std::max(P.frobenius_norm(), 1e-300) * std::max(N, 1)),
        1e-9, 1e9);
    std::vector<double> nodes(static_cast<std::size_t>(N) + 1);
    std::vector<double> values(static_cast<std::size_t>(N) + 1);
    for (int k = 0; k <= N; ++k) {
        nodes[static_cast<std::size_t>(k)] = k;
        values[static_cast<std::size_t>(k)] = F(A + P * (h * static_cast<double>(k)));
    }
    const UnivariatePoly poly = interpolate_univariate(nodes, values);
    if (order > poly.degree()) return 0.0;
    double factorial = 1.0;
    for (int i = 2; i <= order; ++i) factorial *= i;
    return factorial * poly.coeffs()[static_cast<std::size_t>(order)] / std::pow(h, order);
}

double delta_I_elementary(const OperatorSpec& F, const SymmetricMatrix& A, int k) {
    const int N = F.degree();
    if (k < 0 || k > N) throw std::invalid_argument("delta_I_elementary: k out of range");
    const SymmetricMatrix id = SymmetricMatrix::identity(A.dim(), A.algebra());
    double factorial = 1.0;
    for (int i = 2; i <= k; ++i) factorial *= i;
    const double via_interp = directional_coefficient(F, A, id, k) / factorial;

    const GardingSpectrum spec = garding_spectrum(F, id, A);
    const double via_sigma = F(id) * elementary_symmetric(spec.values, N - k);
    const double tol = 1e-7 * std::max({1.0, std::fabs(via_interp), std::fabs(via_sigma)});
    if (std::fabs(via_interp - via_sigma) > tol)
        throw std::runtime_error("delta_I_elementary: interpolation and eigenvalue routes disagree");
    return via_interp;
}

std::vector<SymmetricMatrix> domain_basis(const OperatorSpec& F) {
    const Space sp = F.space();
    if (sp.algebra != Algebra::Real && !F.requires_commutant()) {
        // full symmetric space, tagged with the operator's algebra
        std::vector<SymmetricMatrix> basis = orthonormal_basis(sp.matrix_dim(), Algebra::Real);
        for (auto& b : basis) b = b.with_algebra(sp.algebra);
        return basis;
    }
    return orthonormal_basis(sp.matrix_dim(), sp.algebra);
}

}  // namespace gd
