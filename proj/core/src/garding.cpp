#include "gd/garding.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "gd/sample.hpp"

namespace gd {

// ------------------------------------------------------------------ samplers

SymmetricMatrix random_symmetric(Rng& rng, int dim, Algebra algebra) {
    SymmetricMatrix A(dim, algebra);
    for (int i = 0; i < dim; ++i)
        for (int j = i; j < dim; ++j) A.set(i, j, rng.normal());
    return A;
}

SymmetricMatrix random_commutant(Rng& rng, int dim, Algebra algebra) {
    return project_to_algebra(random_symmetric(rng, dim, algebra));
}

SymmetricMatrix random_spd(Rng& rng, int dim, Algebra algebra, double eig_cap) {
    std::vector<double> m(static_cast<std::size_t>(dim) * dim);
    for (double& v : m) v = rng.normal();
    SymmetricMatrix A(dim, algebra);
    for (int i = 0; i < dim; ++i)
        for (int j = i; j < dim; ++j) {
            double s = 0.0;
            for (int k = 0; k < dim; ++k)
                s += m[static_cast<std::size_t>(k * dim + i)] * m[static_cast<std::size_t>(k * dim + j)];
            A.set(i, j, s + (i == j ? 1e-3 : 0.0));
        }
    A = project_to_algebra(A);  // projection of SPD stays SPD
    const double top = eigenvalues_sym(A).values.back();
    if (top > eig_cap) A *= eig_cap / top;
    return A;
}

SymmetricMatrix random_lagrangian_positive(Rng& rng, int n, double eig_cap) {
    const int dim = 2 * n;
    const ComplexStructures S = ComplexStructures::complex(n);
    const SymmetricMatrix G = random_symmetric(rng, dim, Algebra::Complex);
    SymmetricMatrix skew = (G + S.conjugate(G, 0)) * 0.5;  // anticommutes with J
    const Spectrum spec = eigenvalues_sym(skew);
    double lmax = 0.0;
    for (double v : spec.values) lmax = std::max(lmax, std::fabs(v));
    double t = lmax == 0.0 ? 1.0 : lmax * (1.0 + rng.uniform(0.05, 1.5));
    if (t > eig_cap) {
        const double f = eig_cap / t;
        t *= f;
        skew *= f;
    }
    return skew + SymmetricMatrix::identity(dim, Algebra::Complex) * t;
}

SymmetricMatrix random_domain(Rng& rng, const OperatorSpec& F) {
    const Space sp = F.space();
    if (sp.algebra != Algebra::Real && F.requires_commutant())
        return random_commutant(rng, sp.matrix_dim(), sp.algebra);
    return random_symmetric(rng, sp.matrix_dim(), sp.algebra);
}

SymmetricMatrix random_positive_domain(Rng& rng, const OperatorSpec& F, double eig_cap) {
    if (F.kind() == OperatorSpec::Kind::LagrangianMA)
        return random_lagrangian_positive(rng, F.space().n, eig_cap);
    return random_spd(rng, F.space().matrix_dim(), F.space().algebra, eig_cap);
}

// ------------------------------------------------------------------ spectrum

namespace {

bool is_identity(const SymmetricMatrix& A) {
    for (int i = 0; i < A.dim(); ++i)
        for (int j = 0; j < A.dim(); ++j)
            if (A(i, j) != (i == j ? 1.0 : 0.0)) return false;
    return true;
}

struct StructuredEigs {
    std::vector<double> values;
    double residual = 0.0;  // propagated hyperbolicity residual
};

// Exact I-eigenvalues for the structured node kinds; products factor for any
// base point, the rest require the identity.  Empty when only the generic
// interpolation route applies.
std::optional<StructuredEigs> structured_eigenvalues(const OperatorSpec& F,
                                                     const SymmetricMatrix& A,
                                                     const SymmetricMatrix& B,
                                                     bool base_identity) {
    using Kind = OperatorSpec::Kind;
    switch (F.kind()) {
        case Kind::Product: {
            // F(sA+B) G(sA+B): the factorizations multiply at any base point
            StructuredEigs all;
            for (const auto& child : F.children()) {
                const GardingSpectrum s = garding_spectrum(child, A, B);
                all.values.insert(all.values.end(), s.values.begin(), s.values.end());
                all.residual = std::max(all.residual, s.hyperbolicity_residual);
            }
            return all;
        }
        case Kind::Det: {
            if (!base_identity) return std::nullopt;
            return StructuredEigs{field_eigenvalues(B), 0.0};
        }
        case Kind::PFoldSum: {
            if (!base_identity) return std::nullopt;
            // prod_J (lambda_J(sI+B)) = prod_J p(s + lambda_J(B)/p)
            const std::vector<double> lam = field_eigenvalues(B);
            const int p = F.param();
            const int n = static_cast<int>(lam.size());
            std::vector<int> idx(static_cast<std::size_t>(p));
            for (int i = 0; i < p; ++i) idx[static_cast<std::size_t>(i)] = i;
            std::vector<double> out;
            for (;;) {
                double sum = 0.0;
                for (int i : idx) sum += lam[static_cast<std::size_t>(i)];
                out.push_back(sum / p);
                int pos = p - 1;
                while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - p + pos) --pos;
                if (pos < 0) break;
                ++idx[static_cast<std::size_t>(pos)];
                for (int i = pos + 1; i < p; ++i)
                    idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
            }
            return StructuredEigs{std::move(out), 0.0};
        }
        case Kind::LagrangianMA: {
            if (!base_identity) return std::nullopt;
            // factors n(s + t) +- lambda_1 +- ... +- lambda_n
            const LagrangianEigData d = lagrangian_decompose(B);
            const int n = static_cast<int>(d.lambdas.size());
            std::vector<double> out;
            for (unsigned signs = 0; signs < (1u << n); ++signs) {
                double comb = 0.0;
                for (int j = 0; j < n; ++j)
                    comb += (signs >> j) & 1u ? -d.lambdas[static_cast<std::size_t>(j)]
                                              : d.lambdas[static_cast<std::size_t>(j)];
                out.push_back(d.t + comb / n);
            }
            return StructuredEigs{std::move(out), 0.0};
        }
        default: return std::nullopt;
    }
}

}  // namespace

GardingSpectrum garding_spectrum(const OperatorSpec& F, const SymmetricMatrix& A,
                                 const SymmetricMatrix& B) {
    const int N = F.degree();
    const double FA = F(A);
    if (std::fabs(FA) <= 1e-12 * std::max(1.0, std::pow(A.frobenius_norm(), N)))
        throw std::invalid_argument("garding_spectrum: base point on zero set");

    if (auto exact = structured_eigenvalues(F, A, B, is_identity(A))) {
        GardingSpectrum out;
        out.values = std::move(exact->values);
        out.hyperbolicity_residual = exact->residual;
        std::sort(out.values.begin(), out.values.end());
        double scale = 0.0;
        for (double v : out.values) scale = std::max(scale, std::fabs(v));
        for (double v : out.values)
            if (std::fabs(v) <= 1e-10 * std::max(1.0, scale)) ++out.degree_drop;
        // factorization defect in value space at the interpolation nodes
        const double h = std::clamp(std::max(scale, 1e-6), 1e-9, 1e6);
        double vmax = 0.0, defect = 0.0;
        for (int k = 0; k <= N; ++k) {
            const double s = h * k;
            const double lhs = F(A * s + B);
            double rhs = FA;
            for (double v : out.values) rhs *= s + v;
            vmax = std::max(vmax, std::fabs(lhs));
            defect = std::max(defect, std::fabs(lhs - rhs));
        }
        out.factorization_residual = defect / std::max(1.0, vmax);
        return out;
    }

    // sample s -> F(sA + B) at s = k*h with h at the root scale, so the
    // interpolated coefficients stay balanced: the geometric-mean root
    // |F(B)/F(A)|^(1/N) equalizes the first and last coefficients exactly
    const double norm_scale = B.frobenius_norm() / std::max(A.frobenius_norm(), 1e-300);
    const double geo_scale = std::pow(std::fabs(F(B)) / std::fabs(FA), 1.0 / N);
    const double h = std::clamp(std::max(geo_scale, norm_scale), 1e-9, 1e6);
    std::vector<long double> values(static_cast<std::size_t>(N) + 1);
    for (int k = 0; k <= N; ++k)
        values[static_cast<std::size_t>(k)] = F(A * (h * static_cast<double>(k)) + B);

    // divided differences at integer nodes u = 0..N (s = u*h)
    std::vector<long double> dd = values;
    for (int level = 1; level <= N; ++level)
        for (int i = N; i >= level; --i)
            dd[static_cast<std::size_t>(i)] =
                (dd[static_cast<std::size_t>(i)] - dd[static_cast<std::size_t>(i - 1)]) / level;
    std::vector<long double> c(static_cast<std::size_t>(N) + 1, 0.0L);
    std::vector<long double> basis{1.0L};
    for (int j = 0; j <= N; ++j) {
        for (std::size_t i = 0; i < basis.size(); ++i) c[i] += dd[static_cast<std::size_t>(j)] * basis[i];
        if (j < N) {
            basis.push_back(0.0L);
            for (std::size_t i = basis.size() - 1; i > 0; --i)
                basis[i] = basis[i - 1] - static_cast<long double>(j) * basis[i];
            basis[0] *= -static_cast<long double>(j);
        }
    }

    long double cmax = 0.0L;
    for (long double v : c) cmax = std::max(cmax, std::fabs(static_cast<double>(v)) + 0.0L);

    // trailing coefficients below the trim threshold are zero eigenvalues
    int drop = 0;
    while (drop < N &&
           std::fabs(static_cast<double>(c[static_cast<std::size_t>(drop)])) <= 1e-10 * cmax)
        ++drop;

    GardingSpectrum out;
    out.degree_drop = drop;
    std::vector<double> deflated;
    deflated.reserve(static_cast<std::size_t>(N - drop) + 1);
    for (int k = drop; k <= N; ++k) deflated.push_back(static_cast<double>(c[static_cast<std::size_t>(k)]));
    const RootResult rr = real_roots(UnivariatePoly(deflated, 0.0));
    out.hyperbolicity_residual = rr.max_imag * h;
    out.values.reserve(static_cast<std::size_t>(N));
    for (int i = 0; i < drop; ++i) out.values.push_back(0.0);
    for (double root : rr.roots) out.values.push_back(-h * root);
    std::sort(out.values.begin(), out.values.end());

    // defect of F(sA+B) = F(A) prod (s + lambda_j) in value space at the nodes
    double vmax = 0.0, defect = 0.0;
    for (int k = 0; k <= N; ++k) {
        const double s = h * k;
        double rhs = FA;
        for (double v : out.values) rhs *= s + v;
        const double lhs = static_cast<double>(values[static_cast<std::size_t>(k)]);
        vmax = std::max(vmax, std::fabs(lhs));
        defect = std::max(defect, std::fabs(lhs - rhs));
    }
    out.factorization_residual = defect / std::max(1.0, vmax);
    return out;
}

CheckReport is_hyperbolic(const OperatorSpec& F, int samples, std::uint64_t seed, double tol) {
    const SymmetricMatrix id =
        SymmetricMatrix::identity(F.space().matrix_dim(), F.space().algebra);
    CheckReport report;
    report.samples = samples;
    report.seed = seed;

    struct Sample {
        double residual;
        SymmetricMatrix B;
    };
    const auto results = map_samples<Sample>(samples, [&](int i) {
        Rng rng = Rng::for_sample(seed, static_cast<std::uint64_t>(i));
        SymmetricMatrix B = random_domain(rng, F);
        const GardingSpectrum spec = garding_spectrum(F, id, B);
        double root_scale = 1.0;
        for (double v : spec.values) root_scale = std::max(root_scale, std::fabs(v));
        return Sample{spec.hyperbolicity_residual / root_scale, std::move(B)};
    });

    double worst = 0.0;
    const SymmetricMatrix* witness = nullptr;
    for (const auto& s : results)
        if (s.residual > worst) {
            worst = s.residual;
            witness = &s.B;
        }
    report.worst_gap = worst;
    report.residuals["max_residual"] = worst;
    report.pass = worst <= tol;
    if (!report.pass && witness) report.witness = *witness;
    return report;
}

bool in_garding_cone(const OperatorSpec& F, const SymmetricMatrix& A, double tol) {
    if (tol < 0.0) tol = 1e-9 * (1.0 + A.frobenius_norm());
    const SymmetricMatrix id = SymmetricMatrix::identity(A.dim(), A.algebra());
    GardingSpectrum spec;
    try {
        spec = garding_spectrum(F, id, A);
    } catch (const std::invalid_argument&) {
        return false;  // F(I) degenerate relative to A's scale
    }
    return spec.values.front() > tol;
}

EdgeSpanDecomposition edge_and_span(const OperatorSpec& F, double tol) {
    const std::vector<SymmetricMatrix> basis = domain_basis(F);
    const int D = static_cast<int>(basis.size());
    const SymmetricMatrix id =
        SymmetricMatrix::identity(F.space().matrix_dim(), F.space().algebra);

    auto q_form = [&](const SymmetricMatrix& B) {
        const GardingSpectrum s = garding_spectrum(F, id, B);
        double q = 0.0;
        for (double v : s.values) q += v * v;
        return q;
    };

    std::vector<double> qi(static_cast<std::size_t>(D));
    for (int i = 0; i < D; ++i) qi[static_cast<std::size_t>(i)] = q_form(basis[static_cast<std::size_t>(i)]);

    SymmetricMatrix gram(D, Algebra::Real);
    for (int i = 0; i < D; ++i) {
        gram.set(i, i, qi[static_cast<std::size_t>(i)]);
        for (int j = i + 1; j < D; ++j) {
            const double qij = q_form(basis[static_cast<std::size_t>(i)] + basis[static_cast<std::size_t>(j)]);
            gram.set(i, j, 0.5 * (qij - qi[static_cast<std::size_t>(i)] - qi[static_cast<std::size_t>(j)]));
        }
    }

    std::vector<double> vectors;
    const Spectrum spec = eigenvalues_sym(gram, vectors);
    const double cut = tol * std::max(1.0, spec.values.back());

    EdgeSpanDecomposition out;
    out.nullspace_tolerance = cut;
    for (int col = 0; col < D; ++col) {
        SymmetricMatrix dir(F.space().matrix_dim(), F.space().algebra);
        for (int row = 0; row < D; ++row)
            dir += basis[static_cast<std::size_t>(row)] * vectors[static_cast<std::size_t>(row * D + col)];
        if (spec.values[static_cast<std::size_t>(col)] <= cut)
            out.edge_basis.push_back(std::move(dir));
        else
            out.span_basis.push_back(std::move(dir));
    }
    return out;
}

double log_derivative(const OperatorSpec& F, const SymmetricMatrix& A, const SymmetricMatrix& B,
                      int k) {
    if (k < 1) throw std::invalid_argument("log_derivative: order must be >= 1");
    if (!in_garding_cone(F, A))
        throw std::invalid_argument("log_derivative: base point not in the Garding cone");
    const GardingSpectrum spec = garding_spectrum(F, A, B);
    double powsum = 0.0;
    for (double v : spec.values) powsum += std::pow(v, k);
    double factorial = 1.0;
    for (int i = 2; i <= k - 1; ++i) factorial *= i;
    return (k % 2 == 1 ? 1.0 : -1.0) * factorial * powsum;
}

SymmetricMatrix gradient_matrix(const OperatorSpec& F, const SymmetricMatrix& A) {
    SymmetricMatrix G(A.dim(), A.algebra());
    for (const auto& b : domain_basis(F)) G += b * directional_coefficient(F, A, b, 1);
    return G;
}

CheckReport guler_check(const OperatorSpec& F, const SymmetricMatrix& A, const SymmetricMatrix& B,
                        int k, int l) {
    if (l % 2 != 0 || l < 2 || l > k)
        throw std::invalid_argument("guler_check: need l even and 2 <= l <= k");
    if (!in_garding_cone(F, A))
        throw std::invalid_argument("guler_check: base point not in the Garding cone");

    const GardingSpectrum spec = garding_spectrum(F, A, B);
    double sum_k = 0.0, sum_l = 0.0, scale = 0.0;
    int nonzero = 0;
    for (double v : spec.values) {
        sum_k += std::pow(v, k);
        sum_l += std::pow(v, l);
        scale = std::max(scale, std::fabs(v));
    }
    for (double v : spec.values)
        if (std::fabs(v) > 1e-9 * std::max(1.0, scale)) ++nonzero;

    const double lhs = std::pow(std::fabs(sum_k), 1.0 / k);
    const double rhs = std::pow(sum_l, 1.0 / l);

    CheckReport report;
    report.samples = 1;
    report.worst_gap = rhs - lhs;
    report.residuals["lhs"] = lhs;
    report.residuals["rhs"] = rhs;
    report.residuals["nonzero_eigenvalues"] = nonzero;
    const double tol = 1e-9 * std::max(1.0, rhs);
    report.pass = lhs <= rhs + tol;
    if (nonzero <= 1) {
        report.residuals["equality_expected"] = 1.0;
        report.pass = report.pass && std::fabs(rhs - lhs) <= tol;
    }
    if (!report.pass) report.witness = B;
    return report;
}

CheckReport discriminant_identity_check(const OperatorSpec& F, const SymmetricMatrix& A,
                                        const SymmetricMatrix& B) {
    if (!in_garding_cone(F, A))
        throw std::invalid_argument("discriminant_identity_check: base point not in the cone");
    const int N = F.degree();
    const GardingSpectrum spec = garding_spectrum(F, A, B);

    double sum1 = 0.0, sum2 = 0.0;
    for (double v : spec.values) {
        sum1 += v;
        sum2 += v * v;
    }
    const double sigma2 = 0.5 * (sum1 * sum1 - sum2);
    double discr = 0.0;
    for (std::size_t i = 0; i < spec.values.size(); ++i)
        for (std::size_t j = i + 1; j < spec.values.size(); ++j) {
            const double d = spec.values[i] - spec.values[j];
            discr += d * d;
        }

    const double FA = F(A);
    const double d2_log_exact = -sum2;
    const double d2_F_exact = 2.0 * FA * sigma2;
    const double d2_root_exact = -(1.0 / (N * static_cast<double>(N))) * std::pow(FA, 1.0 / N) * discr;

    // step sized against the Garding radius of B with respect to A
    double radius = 0.0;
    for (double v : spec.values) radius = std::max(radius, std::fabs(v));
    const double h = 2e-3 / std::max(radius, 1e-6);
    const double fp = F(A + B * h), fm = F(A - B * h);
    const double d2_F_fd = (fp - 2.0 * FA + fm) / (h * h);
    const double d2_log_fd = (std::log(fp) - 2.0 * std::log(FA) + std::log(fm)) / (h * h);
    const double d2_root_fd =
        (std::pow(fp, 1.0 / N) - 2.0 * std::pow(FA, 1.0 / N) + std::pow(fm, 1.0 / N)) / (h * h);

    auto rel = [](double a, double b) {
        return std::fabs(a - b) / std::max({1.0, std::fabs(a), std::fabs(b)});
    };

    CheckReport report;
    report.samples = 1;
    report.residuals["d2_log"] = rel(d2_log_exact, d2_log_fd);
    report.residuals["d2_F"] = rel(d2_F_exact, d2_F_fd);
    report.residuals["d2_root"] = rel(d2_root_exact, d2_root_fd);
    report.residuals["d2_root_exact"] = d2_root_exact;
    report.residuals["discr"] = discr;
    report.worst_gap = std::max({report.residuals["d2_log"], report.residuals["d2_F"],
                                 report.residuals["d2_root"]});
    report.pass = report.worst_gap <= 1e-4 && d2_log_exact <= 1e-12;
    if (!report.pass) report.witness = B;
    return report;
}

}  // namespace gd
