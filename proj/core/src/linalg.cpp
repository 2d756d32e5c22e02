#include "gd/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace gd {

namespace {

// row-major dense product c = a * b, all dim x dim
std::vector<double> mat_mul(const std::vector<double>& a, const std::vector<double>& b, int n) {
    std::vector<double> c(static_cast<std::size_t>(n * n), 0.0);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const double aik = a[static_cast<std::size_t>(i * n + k)];
            if (aik == 0.0) continue;
            for (int j = 0; j < n; ++j)
                c[static_cast<std::size_t>(i * n + j)] += aik * b[static_cast<std::size_t>(k * n + j)];
        }
    return c;
}

double scale_of(const SymmetricMatrix& A) { return std::max(1.0, A.frobenius_norm()); }

}  // namespace

std::string algebra_name(Algebra a) {
    switch (a) {
        case Algebra::Real: return "R";
        case Algebra::Complex: return "C";
        case Algebra::Quaternionic: return "H";
    }
    return "R";
}

Algebra algebra_from_name(const std::string& s) {
    if (s == "R") return Algebra::Real;
    if (s == "C") return Algebra::Complex;
    if (s == "H") return Algebra::Quaternionic;
    throw std::invalid_argument("unknown algebra tag: " + s);
}

// ------------------------------------------------------------ SymmetricMatrix

SymmetricMatrix::SymmetricMatrix(int dim, Algebra algebra)
    : dim_(dim), algebra_(algebra), e_(static_cast<std::size_t>(dim) * dim, 0.0) {
    if (dim <= 0) throw std::invalid_argument("SymmetricMatrix: dim must be positive");
    if (dim % algebra_factor(algebra) != 0)
        throw std::invalid_argument("SymmetricMatrix: dim not divisible by the algebra factor");
}

SymmetricMatrix SymmetricMatrix::from_entries(int dim, std::span<const double> row_major,
                                              Algebra algebra) {
    if (static_cast<int>(row_major.size()) != dim * dim)
        throw std::invalid_argument("SymmetricMatrix: entry count != dim*dim");
    SymmetricMatrix A(dim, algebra);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            A.e_[static_cast<std::size_t>(i * dim + j)] =
                0.5 * (row_major[static_cast<std::size_t>(i * dim + j)] +
                       row_major[static_cast<std::size_t>(j * dim + i)]);
    return A;
}

SymmetricMatrix SymmetricMatrix::identity(int dim, Algebra algebra) {
    SymmetricMatrix A(dim, algebra);
    for (int i = 0; i < dim; ++i) A.e_[static_cast<std::size_t>(i * dim + i)] = 1.0;
    return A;
}

SymmetricMatrix SymmetricMatrix::diagonal(std::span<const double> d, Algebra algebra) {
    SymmetricMatrix A(static_cast<int>(d.size()), algebra);
    for (int i = 0; i < A.dim_; ++i)
        A.e_[static_cast<std::size_t>(i * A.dim_ + i)] = d[static_cast<std::size_t>(i)];
    return A;
}

void SymmetricMatrix::set(int i, int j, double v) {
    e_[static_cast<std::size_t>(i * dim_ + j)] = v;
    e_[static_cast<std::size_t>(j * dim_ + i)] = v;
}

double SymmetricMatrix::trace() const {
    double t = 0.0;
    for (int i = 0; i < dim_; ++i) t += e_[static_cast<std::size_t>(i * dim_ + i)];
    return t;
}

double SymmetricMatrix::frobenius_norm() const {
    double s = 0.0;
    for (double v : e_) s += v * v;
    return std::sqrt(s);
}

double SymmetricMatrix::inner(const SymmetricMatrix& other) const {
    if (other.dim_ != dim_) throw std::invalid_argument("inner: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < e_.size(); ++i) s += e_[i] * other.e_[i];
    return s;
}

SymmetricMatrix SymmetricMatrix::with_algebra(Algebra a) const {
    SymmetricMatrix out(dim_, a);
    out.e_ = e_;
    return out;
}

SymmetricMatrix& SymmetricMatrix::operator+=(const SymmetricMatrix& o) {
    if (o.dim_ != dim_) throw std::invalid_argument("matrix sum: dimension mismatch");
    for (std::size_t i = 0; i < e_.size(); ++i) e_[i] += o.e_[i];
    return *this;
}

SymmetricMatrix& SymmetricMatrix::operator-=(const SymmetricMatrix& o) {
    if (o.dim_ != dim_) throw std::invalid_argument("matrix difference: dimension mismatch");
    for (std::size_t i = 0; i < e_.size(); ++i) e_[i] -= o.e_[i];
    return *this;
}

SymmetricMatrix& SymmetricMatrix::operator*=(double c) {
    for (double& v : e_) v *= c;
    return *this;
}

// --------------------------------------------------------- ComplexStructures

ComplexStructures::ComplexStructures(int dim, Algebra alg) : dim_(dim), alg_(alg) {}

ComplexStructures ComplexStructures::complex(int n) {
    ComplexStructures S(2 * n, Algebra::Complex);
    std::vector<double> J(static_cast<std::size_t>(S.dim_) * S.dim_, 0.0);
    for (int b = 0; b < n; ++b) {
        const int o = 2 * b;
        J[static_cast<std::size_t>((o + 1) * S.dim_ + o)] = 1.0;   // e0 -> e1
        J[static_cast<std::size_t>(o * S.dim_ + o + 1)] = -1.0;    // e1 -> -e0
    }
    S.s_.push_back(std::move(J));
    S.verify();
    return S;
}

ComplexStructures ComplexStructures::quaternionic(int n) {
    ComplexStructures S(4 * n, Algebra::Quaternionic);
    // left multiplication by i, j, k on each (1,i,j,k) block
    const int d = S.dim_;
    std::vector<double> I(static_cast<std::size_t>(d) * d, 0.0), J = I, K = I;
    auto put = [d](std::vector<double>& M, int o, int row, int col, double v) {
        M[static_cast<std::size_t>((o + row) * d + o + col)] = v;
    };
    for (int b = 0; b < n; ++b) {
        const int o = 4 * b;
        put(I, o, 1, 0, 1.0);  put(I, o, 0, 1, -1.0);
        put(I, o, 3, 2, 1.0);  put(I, o, 2, 3, -1.0);

        put(J, o, 2, 0, 1.0);  put(J, o, 3, 1, -1.0);
        put(J, o, 0, 2, -1.0); put(J, o, 1, 3, 1.0);

        put(K, o, 3, 0, 1.0);  put(K, o, 2, 1, 1.0);
        put(K, o, 1, 2, -1.0); put(K, o, 0, 3, -1.0);
    }
    S.s_.push_back(std::move(I));
    S.s_.push_back(std::move(J));
    S.s_.push_back(std::move(K));
    S.verify();
    return S;
}

ComplexStructures ComplexStructures::canonical(Algebra a, int n) {
    switch (a) {
        case Algebra::Complex: return complex(n);
        case Algebra::Quaternionic: return quaternionic(n);
        case Algebra::Real: break;
    }
    throw std::invalid_argument("ComplexStructures: no structures for the real algebra");
}

void ComplexStructures::verify() const {
    const int d = dim_;
    auto check_zero = [d](const std::vector<double>& M, const char* what) {
        for (double v : M)
            if (std::fabs(v) > 1e-14) throw std::logic_error(std::string("structure relation failed: ") + what);
    };
    for (const auto& S : s_) {
        auto SS = mat_mul(S, S, d);
        for (int i = 0; i < d; ++i) SS[static_cast<std::size_t>(i * d + i)] += 1.0;
        check_zero(SS, "S^2 = -Id");
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                if (std::fabs(S[static_cast<std::size_t>(i * d + j)] + S[static_cast<std::size_t>(j * d + i)]) > 1e-14)
                    throw std::logic_error("structure relation failed: skew");
    }
    if (s_.size() == 3) {
        auto IJ = mat_mul(s_[0], s_[1], d);
        for (std::size_t i = 0; i < IJ.size(); ++i) IJ[i] -= s_[2][i];
        check_zero(IJ, "IJ = K");
    }
}

SymmetricMatrix ComplexStructures::conjugate(const SymmetricMatrix& A, int which) const {
    if (A.dim() != dim_) throw std::invalid_argument("conjugate: dimension mismatch");
    const auto& S = s_.at(static_cast<std::size_t>(which));
    std::vector<double> tmp(A.entries().begin(), A.entries().end());
    auto SA = mat_mul(S, tmp, dim_);
    auto SAS = mat_mul(SA, S, dim_);
    return SymmetricMatrix::from_entries(dim_, SAS, A.algebra());
}

double ComplexStructures::commutator_norm(const SymmetricMatrix& A, int which) const {
    const auto& S = s_.at(static_cast<std::size_t>(which));
    std::vector<double> tmp(A.entries().begin(), A.entries().end());
    auto AS = mat_mul(tmp, S, dim_);
    auto SA = mat_mul(S, tmp, dim_);
    double s = 0.0;
    for (std::size_t i = 0; i < AS.size(); ++i) {
        const double d = AS[i] - SA[i];
        s += d * d;
    }
    return std::sqrt(s);
}

// -------------------------------------------------------------------- Jacobi

namespace {

Spectrum jacobi_impl(const SymmetricMatrix& A, std::vector<double>* vectors) {
    const int n = A.dim();
    std::vector<double> a(A.entries().begin(), A.entries().end());
    auto at = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i * n + j)]; };
    std::vector<double> v;
    if (vectors) {
        v.assign(static_cast<std::size_t>(n) * n, 0.0);
        for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i * n + i)] = 1.0;
    }

    const double fro = A.frobenius_norm();
    const double tol = std::max(1e-12 * fro, 1e-300);
    auto off_norm = [&] {
        double s = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) s += 2.0 * at(p, q) * at(p, q);
        return std::sqrt(s);
    };

    bool converged = n == 1;
    for (int sweep = 0; sweep < 100 && !converged; ++sweep) {
        if (off_norm() <= tol) {
            converged = true;
            break;
        }
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) {
                const double apq = at(p, q);
                if (std::fabs(apq) <= 1e-3 * tol / n) continue;
                const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double app = at(p, p), aqq = at(q, q);
                for (int k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const double akp = at(k, p), akq = at(k, q);
                    at(k, p) = at(p, k) = c * akp - s * akq;
                    at(k, q) = at(q, k) = s * akp + c * akq;
                }
                at(p, p) = c * c * app - 2.0 * s * c * apq + s * s * aqq;
                at(q, q) = s * s * app + 2.0 * s * c * apq + c * c * aqq;
                at(p, q) = at(q, p) = 0.0;
                if (vectors)
                    for (int k = 0; k < n; ++k) {
                        const double vkp = v[static_cast<std::size_t>(k * n + p)];
                        const double vkq = v[static_cast<std::size_t>(k * n + q)];
                        v[static_cast<std::size_t>(k * n + p)] = c * vkp - s * vkq;
                        v[static_cast<std::size_t>(k * n + q)] = s * vkp + c * vkq;
                    }
            }
        if (off_norm() <= tol) converged = true;
    }

    double residual = 0.0;
    for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q) residual = std::max(residual, std::fabs(at(p, q)));
    if (!converged && off_norm() > tol)
        throw std::runtime_error("eigenvalues_sym: Jacobi did not converge, off-diagonal residual " +
                                 std::to_string(residual));

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) { return at(i, i) < at(j, j); });

    Spectrum spec;
    spec.residual = residual;
    spec.values.reserve(static_cast<std::size_t>(n));
    for (int i : order) spec.values.push_back(at(i, i));
    if (vectors) {
        vectors->assign(static_cast<std::size_t>(n) * n, 0.0);
        for (int col = 0; col < n; ++col)
            for (int row = 0; row < n; ++row)
                (*vectors)[static_cast<std::size_t>(row * n + col)] =
                    v[static_cast<std::size_t>(row * n + order[static_cast<std::size_t>(col)])];
    }
    return spec;
}

}  // namespace

Spectrum eigenvalues_sym(const SymmetricMatrix& A) { return jacobi_impl(A, nullptr); }

Spectrum eigenvalues_sym(const SymmetricMatrix& A, std::vector<double>& vectors) {
    return jacobi_impl(A, &vectors);
}

// --------------------------------------------------------------- projections

SymmetricMatrix project_complex(const SymmetricMatrix& A, const ComplexStructures& S) {
    if (S.algebra() != Algebra::Complex || A.dim() != S.dim())
        throw std::invalid_argument("project_complex: dimension/structure mismatch");
    SymmetricMatrix out = (A - S.conjugate(A, 0)) * 0.5;
    return out.with_algebra(Algebra::Complex);
}

SymmetricMatrix project_quaternionic(const SymmetricMatrix& A, const ComplexStructures& S) {
    if (S.algebra() != Algebra::Quaternionic || A.dim() != S.dim())
        throw std::invalid_argument("project_quaternionic: dimension/structure mismatch");
    SymmetricMatrix out = (A - S.conjugate(A, 0) - S.conjugate(A, 1) - S.conjugate(A, 2)) * 0.25;
    return out.with_algebra(Algebra::Quaternionic);
}

SymmetricMatrix project_to_algebra(const SymmetricMatrix& A) {
    switch (A.algebra()) {
        case Algebra::Real: return A;
        case Algebra::Complex:
            return project_complex(A, ComplexStructures::complex(A.field_n()));
        case Algebra::Quaternionic:
            return project_quaternionic(A, ComplexStructures::quaternionic(A.field_n()));
    }
    return A;
}

// ------------------------------------------------------------- determinants

double det_real(const SymmetricMatrix& A) {
    const int n = A.dim();
    std::vector<double> a(A.entries().begin(), A.entries().end());
    auto at = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i * n + j)]; };
    double det = 1.0;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::fabs(at(r, col)) > std::fabs(at(piv, col))) piv = r;
        if (at(piv, col) == 0.0) return 0.0;
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(at(piv, j), at(col, j));
            det = -det;
        }
        det *= at(col, col);
        const double inv = 1.0 / at(col, col);
        for (int r = col + 1; r < n; ++r) {
            const double f = at(r, col) * inv;
            if (f == 0.0) continue;
            for (int j = col; j < n; ++j) at(r, j) -= f * at(col, j);
        }
    }
    return det;
}

namespace {

// det(Id + t_k A) sampled at t_k = k*h and interpolated; done in long double
// with h ~ 1/(dim * ||A||) so the node values stay O(1) and the small series
// coefficients survive the divided differences.
std::vector<long double> char_series_impl(const SymmetricMatrix& A) {
    const int n = A.dim();
    const long double h = 1.0L / (n * static_cast<long double>(std::max(A.frobenius_norm(), 1e-300)));

    std::vector<long double> values(static_cast<std::size_t>(n) + 1);
    std::vector<long double> work(static_cast<std::size_t>(n) * n);
    for (int k = 0; k <= n; ++k) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                work[static_cast<std::size_t>(i * n + j)] =
                    (i == j ? 1.0L : 0.0L) + h * k * static_cast<long double>(A(i, j));
        // LU with partial pivoting
        long double det = 1.0L;
        for (int col = 0; col < n; ++col) {
            int piv = col;
            for (int r = col + 1; r < n; ++r)
                if (std::fabs(static_cast<double>(work[static_cast<std::size_t>(r * n + col)])) >
                    std::fabs(static_cast<double>(work[static_cast<std::size_t>(piv * n + col)])))
                    piv = r;
            if (work[static_cast<std::size_t>(piv * n + col)] == 0.0L) {
                det = 0.0L;
                break;
            }
            if (piv != col) {
                for (int j = 0; j < n; ++j)
                    std::swap(work[static_cast<std::size_t>(piv * n + j)],
                              work[static_cast<std::size_t>(col * n + j)]);
                det = -det;
            }
            det *= work[static_cast<std::size_t>(col * n + col)];
            const long double inv = 1.0L / work[static_cast<std::size_t>(col * n + col)];
            for (int r = col + 1; r < n; ++r) {
                const long double f = work[static_cast<std::size_t>(r * n + col)] * inv;
                if (f == 0.0L) continue;
                for (int j = col; j < n; ++j)
                    work[static_cast<std::size_t>(r * n + j)] -= f * work[static_cast<std::size_t>(col * n + j)];
            }
        }
        values[static_cast<std::size_t>(k)] = det;
    }

    // divided differences at the integer nodes u = 0..n, then Newton -> monomial
    std::vector<long double> dd = values;
    for (int level = 1; level <= n; ++level)
        for (int i = n; i >= level; --i)
            dd[static_cast<std::size_t>(i)] =
                (dd[static_cast<std::size_t>(i)] - dd[static_cast<std::size_t>(i - 1)]) / level;
    std::vector<long double> coeffs(static_cast<std::size_t>(n) + 1, 0.0L);
    std::vector<long double> basis{1.0L};
    for (int j = 0; j <= n; ++j) {
        for (std::size_t i = 0; i < basis.size(); ++i) coeffs[i] += dd[static_cast<std::size_t>(j)] * basis[i];
        if (j < n) {
            basis.push_back(0.0L);
            for (std::size_t i = basis.size() - 1; i > 0; --i)
                basis[i] = basis[i - 1] - static_cast<long double>(j) * basis[i];
            basis[0] *= -static_cast<long double>(j);
        }
    }
    // undo the node scaling: coefficient of t^k is coeff_u(k) / h^k
    long double hk = 1.0L;
    for (int k = 0; k <= n; ++k) {
        coeffs[static_cast<std::size_t>(k)] /= hk;
        hk *= h;
    }
    coeffs[0] = 1.0L;
    return coeffs;
}

}  // namespace

TruncatedSeries char_series(const SymmetricMatrix& A, int m) {
    const int n = A.dim();
    if (m < 0 || m > n) throw std::invalid_argument("char_series: need 0 <= m <= dim");
    const std::vector<long double> c = char_series_impl(A);
    TruncatedSeries s;
    s.coeffs.assign(static_cast<std::size_t>(m) + 1, 0.0);
    for (int k = 0; k <= m; ++k)
        s.coeffs[static_cast<std::size_t>(k)] = static_cast<double>(c[static_cast<std::size_t>(k)]);
    return s;
}

double det_field(const SymmetricMatrix& A) {
    if (A.algebra() == Algebra::Real) return det_real(A);
    const ComplexStructures S = ComplexStructures::canonical(A.algebra(), A.field_n());
    const double tol = 1e-10 * scale_of(A);
    for (int w = 0; w < S.count(); ++w)
        if (S.commutator_norm(A, w) > tol)
            throw std::invalid_argument("det_field: matrix does not commute with the structures");

    const int q = A.algebra() == Algebra::Complex ? 2 : 4;
    const std::vector<long double> s = char_series_impl(A);
    const int m = A.dim();
    std::vector<long double> r(static_cast<std::size_t>(m) + 1, 0.0L);
    r[0] = 1.0L;
    for (int k = 1; k <= m; ++k) {
        // [t^k] of r^q with r_k still zero, raising r_k then adds q*r_k
        std::vector<long double> pw(static_cast<std::size_t>(k) + 1, 0.0L);
        pw[0] = 1.0L;
        for (int rep = 0; rep < q; ++rep) {
            std::vector<long double> nx(static_cast<std::size_t>(k) + 1, 0.0L);
            for (int i = 0; i <= k; ++i) {
                if (pw[static_cast<std::size_t>(i)] == 0.0L) continue;
                for (int j = 0; i + j <= k; ++j)
                    nx[static_cast<std::size_t>(i + j)] +=
                        pw[static_cast<std::size_t>(i)] * r[static_cast<std::size_t>(j)];
            }
            pw = std::move(nx);
        }
        r[static_cast<std::size_t>(k)] = (s[static_cast<std::size_t>(k)] - pw[static_cast<std::size_t>(k)]) / q;
    }
    return static_cast<double>(r.at(static_cast<std::size_t>(A.field_n())));
}

LowerTriangular cholesky(const SymmetricMatrix& A) {
    const int n = A.dim();
    LowerTriangular L;
    L.dim = n;
    L.e.assign(static_cast<std::size_t>(n) * n, 0.0);
    auto at = [&](int i, int j) -> double& { return L.e[static_cast<std::size_t>(i * n + j)]; };
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            double sum = A(i, j);
            for (int k = 0; k < j; ++k) sum -= at(i, k) * at(j, k);
            if (i == j) {
                if (sum <= 0.0) throw std::invalid_argument("cholesky: not positive definite");
                at(i, i) = std::sqrt(sum);
            } else {
                at(i, j) = sum / at(j, j);
            }
        }
    }
    return L;
}

// ---------------------------------------------------------- field eigenvalues

std::vector<double> field_eigenvalues(const SymmetricMatrix& A) {
    const int f = algebra_factor(A.algebra());
    const Spectrum spec = eigenvalues_sym(A);
    if (f == 1) return spec.values;
    const double tol = 1e-7 * scale_of(A);
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(A.field_n()));
    for (int g = 0; g < A.field_n(); ++g) {
        const double lo = spec.values[static_cast<std::size_t>(g * f)];
        const double hi = spec.values[static_cast<std::size_t>(g * f + f - 1)];
        if (hi - lo > tol)
            throw std::runtime_error("field_eigenvalues: multiplicity not divisible by the algebra factor");
        double mean = 0.0;
        for (int i = 0; i < f; ++i) mean += spec.values[static_cast<std::size_t>(g * f + i)];
        out.push_back(mean / f);
    }
    return out;
}

double field_trace(const SymmetricMatrix& A) { return A.trace() / algebra_factor(A.algebra()); }

// -------------------------------------------------------------------- basis

std::vector<SymmetricMatrix> orthonormal_basis(int dim, Algebra algebra) {
    std::vector<SymmetricMatrix> cand;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < dim; ++i)
        for (int j = i; j < dim; ++j) {
            SymmetricMatrix B(dim, algebra);
            B.set(i, j, i == j ? 1.0 : inv_sqrt2);
            cand.push_back(std::move(B));
        }
    if (algebra == Algebra::Real) return cand;

    // project onto the commutant, then Gram-Schmidt with rank detection
    std::vector<SymmetricMatrix> basis;
    for (auto& c : cand) {
        SymmetricMatrix p = project_to_algebra(c);
        for (const auto& b : basis) p -= b * p.inner(b);
        const double nrm = p.frobenius_norm();
        if (nrm > 1e-8) basis.push_back(p * (1.0 / nrm));
    }
    const int n = dim / algebra_factor(algebra);
    const int expected = algebra == Algebra::Complex ? n * n : n * (2 * n - 1);
    if (static_cast<int>(basis.size()) != expected)
        throw std::runtime_error("orthonormal_basis: unexpected commutant dimension");
    return basis;
}

}  // namespace gd
