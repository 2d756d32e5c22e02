#include "gd/majorize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gd/sample.hpp"

namespace gd {

namespace {

double signed_root(double v, int n) {
    return v >= 0.0 ? std::pow(v, 1.0 / n) : -std::pow(-v, 1.0 / n);
}

}  // namespace

HypothesisReport check_hypotheses(const SparseSymPoly& p) {
    HypothesisReport r;
    r.coefficients_nonneg = true;
    for (const auto& [alpha, coeff] : p.terms())
        if (coeff < 0.0) {
            r.coefficients_nonneg = false;
            r.negative_term = alpha;
            break;
        }
    r.normalization = p.value_at_e();
    r.central_ray = p.partials_at_e();
    double lo = r.central_ray.front(), hi = lo, sum = 0.0;
    for (double v : r.central_ray) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        sum += v;
    }
    r.k = sum / static_cast<double>(r.central_ray.size());
    r.central_ray_equal = hi - lo <= 1e-12 * std::max(1.0, std::fabs(hi));
    r.euler_k = static_cast<double>(p.degree()) / p.nvars();
    return r;
}

MajorizationReport majorization_harness(const OperatorSpec& F, int samples, std::uint64_t seed,
                                        double eig_cap, std::vector<double>* gaps) {
    const bool lagrangian = F.kind() == OperatorSpec::Kind::LagrangianMA;
    const int N = F.degree();
    const int dim = F.space().matrix_dim();
    const int det_dim = lagrangian ? dim : F.space().n;
    const SymmetricMatrix id = SymmetricMatrix::identity(dim, F.space().algebra);

    MajorizationReport report;
    report.samples = samples;
    report.seed = seed;
    report.gamma = lagrangian ? 1.0 : std::pow(F(id), 1.0 / N);

    struct Sample {
        double gap;
        SymmetricMatrix A;
    };
    const auto results = map_samples<Sample>(samples, [&](int i) {
        Rng rng = Rng::for_sample(seed, static_cast<std::uint64_t>(i));
        SymmetricMatrix A = random_positive_domain(rng, F, eig_cap);
        const double det = lagrangian ? det_real(A) : det_field(A);
        const double gap = signed_root(F(A), N) - report.gamma * signed_root(det, det_dim);
        return Sample{gap, std::move(A)};
    });

    report.min_gap = std::numeric_limits<double>::infinity();
    if (gaps) gaps->clear();
    for (const auto& s : results) {
        if (gaps) gaps->push_back(s.gap);
        if (s.gap < report.min_gap) {
            report.min_gap = s.gap;
            report.witness = s.A;
        }
    }
    report.pass = report.min_gap >= -1e-9 * std::max(1.0, report.gamma);
    if (report.pass) report.witness.reset();
    return report;
}

CheckReport superadditivity_check(const OperatorSpec& F, int samples, std::uint64_t seed) {
    const int N = F.degree();
    const bool lagrangian = F.kind() == OperatorSpec::Kind::LagrangianMA;
    const int det_dim = lagrangian ? F.space().matrix_dim() : F.space().n;
    const SymmetricMatrix id =
        SymmetricMatrix::identity(F.space().matrix_dim(), F.space().algebra);
    const double gamma = std::pow(F(id), 1.0 / N);

    CheckReport report;
    report.samples = samples;
    report.seed = seed;

    struct Sample {
        double superadd, det_bound;
        SymmetricMatrix A;
    };
    const auto results = map_samples<Sample>(samples, [&](int i) {
        Rng rng = Rng::for_sample(seed, static_cast<std::uint64_t>(i));
        SymmetricMatrix A = random_positive_domain(rng, F);
        const SymmetricMatrix P = random_positive_domain(rng, F);
        const double rs = signed_root(F(A + P), N);
        const double ra = signed_root(F(A), N);
        const double rp = signed_root(F(P), N);
        const double det = lagrangian ? det_real(P) : det_field(P);
        const double superadd = rs - ra - rp;
        const double det_bound = (rs - ra) / gamma - signed_root(det, det_dim);
        return Sample{superadd, det_bound, std::move(A)};
    });

    double worst = std::numeric_limits<double>::infinity();
    double worst_superadd = worst, worst_det = worst;
    for (const auto& s : results) {
        worst_superadd = std::min(worst_superadd, s.superadd);
        worst_det = std::min(worst_det, s.det_bound);
        const double m = std::min(s.superadd, s.det_bound);
        if (m < worst) {
            worst = m;
            report.witness = s.A;
        }
    }
    report.worst_gap = worst;
    report.residuals["min_superadditivity_slack"] = worst_superadd;
    report.residuals["min_det_bound_slack"] = worst_det;
    report.pass = worst >= -1e-9;
    if (report.pass) report.witness.reset();
    return report;
}

CheckReport hadamard_check(const SymmetricMatrix& A) {
    const LowerTriangular L = cholesky(A);  // throws when not SPD
    const int n = A.dim();

    double diag_prod = 1.0, det_chol = 1.0;
    double worst_row = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        diag_prod *= A(i, i);
        det_chol *= L(i, i) * L(i, i);
        // a_ii is the squared norm of the i-th Cholesky row, at least L_ii^2
        worst_row = std::min(worst_row, A(i, i) - L(i, i) * L(i, i));
    }
    const double det = det_real(A);
    const double scale = std::max({1.0, std::fabs(det), diag_prod});

    CheckReport report;
    report.samples = 1;
    report.residuals["diag_product"] = diag_prod;
    report.residuals["det"] = det;
    report.residuals["det_cholesky"] = det_chol;
    report.residuals["min_row_margin"] = worst_row;
    report.worst_gap = diag_prod - det;
    report.pass = diag_prod - det >= -1e-10 * scale &&
                  diag_prod - det_chol >= -1e-10 * scale &&
                  std::fabs(det - det_chol) <= 1e-8 * scale && worst_row >= -1e-10 * scale;
    if (!report.pass) report.witness = A;
    return report;
}

namespace {

OperatorSpec counterexample_operator() {
    return OperatorSpec::diagonal_poly(SparseSymPoly::monomial(2, MultiIndex{2, 1}));
}

}  // namespace

double counterexample_ratio(double s) {
    if (s <= 0.0) throw std::invalid_argument("counterexample_ratio: s must be positive");
    const OperatorSpec F = counterexample_operator();
    const std::vector<double> d{s, 1.0};
    const SymmetricMatrix A = SymmetricMatrix::diagonal(d);
    return std::pow(F(A), 1.0 / 3.0) / std::sqrt(det_real(A));
}

OperatorSpec counterexample_general_operator(int N, int n) {
    if (N < 3 || n < 1) throw std::invalid_argument("counterexample_general_operator: need N >= 3, n >= 1");
    std::map<MultiIndex, double> terms;
    for (int j = 1; j <= n; ++j) {
        MultiIndex alpha(static_cast<std::size_t>(n) + 1, 0);
        alpha[0] = N - 1;
        alpha[static_cast<std::size_t>(j)] = 1;
        terms.emplace(std::move(alpha), 1.0 / n);
    }
    return OperatorSpec::diagonal_poly(SparseSymPoly(n + 1, std::move(terms)));
}

double counterexample_ratio_general(int N, int n, double a11) {
    if (a11 <= 0.0) throw std::invalid_argument("counterexample_ratio_general: a11 must be positive");
    const OperatorSpec F = counterexample_general_operator(N, n);
    std::vector<double> d(static_cast<std::size_t>(n) + 1, 1.0);
    d[0] = a11;
    const SymmetricMatrix A = SymmetricMatrix::diagonal(d);
    return std::pow(F(A), 1.0 / N) / std::pow(det_real(A), 1.0 / (n + 1));
}

CheckReport counterexample_scan(double gamma) {
    if (gamma <= 0.0) throw std::invalid_argument("counterexample_scan: gamma must be positive");
    CheckReport report;
    report.samples = 12;
    double min_ratio = std::numeric_limits<double>::infinity();
    for (int e = 1; e <= 12; ++e) {
        const double s = std::pow(10.0, -e);
        const double ratio = counterexample_ratio(s);
        if (ratio < min_ratio) min_ratio = ratio;
        if (ratio < gamma && !report.pass) {
            report.pass = true;
            const std::vector<double> d{s, 1.0};
            report.witness = SymmetricMatrix::diagonal(d);
            report.residuals["s"] = s;
            report.residuals["ratio"] = ratio;
        }
    }
    report.worst_gap = min_ratio - gamma;
    report.residuals["min_ratio"] = min_ratio;
    return report;
}

// ----------------------------------------------------------------- Pogorelov

namespace {

struct OdeTrajectory {
    double h = 1e-4;
    std::vector<double> g, gp;  // knots at t = i*h

    // cubic Hermite between knots
    double eval(double t) const {
        const double pos = t / h;
        std::size_t i = static_cast<std::size_t>(pos);
        if (i + 1 >= g.size()) i = g.size() - 2;
        const double s = pos - static_cast<double>(i);
        const double g0 = g[i], g1 = g[i + 1];
        const double m0 = gp[i] * h, m1 = gp[i + 1] * h;
        const double s2 = s * s, s3 = s2 * s;
        return (2 * s3 - 3 * s2 + 1) * g0 + (s3 - 2 * s2 + s) * m0 +
               (-2 * s3 + 3 * s2) * g1 + (s3 - s2) * m1;
    }
};

OdeTrajectory integrate_pogorelov(int N) {
    const double expo = -1.0 / (N - 1);
    auto accel = [expo](double g) { return std::pow(g, expo); };
    OdeTrajectory tr;
    const int steps = static_cast<int>(std::lround(1.0 / tr.h));
    tr.g.reserve(static_cast<std::size_t>(steps) + 1);
    tr.gp.reserve(static_cast<std::size_t>(steps) + 1);
    double g = 1.0, gp = 0.0;
    tr.g.push_back(g);
    tr.gp.push_back(gp);
    for (int i = 0; i < steps; ++i) {
        const double h = tr.h;
        const double k1g = gp, k1p = accel(g);
        const double k2g = gp + 0.5 * h * k1p, k2p = accel(g + 0.5 * h * k1g);
        const double k3g = gp + 0.5 * h * k2p, k3p = accel(g + 0.5 * h * k2g);
        const double k4g = gp + h * k3p, k4p = accel(g + h * k3g);
        g += h / 6.0 * (k1g + 2 * k2g + 2 * k3g + k4g);
        gp += h / 6.0 * (k1p + 2 * k2p + 2 * k3p + k4p);
        tr.g.push_back(g);
        tr.gp.push_back(gp);
    }
    return tr;
}

}  // namespace

CheckReport pogorelov_verify(int N, int n, double eps, const PogorelovGrid& grid) {
    if (N < 3 || n < 2) throw std::invalid_argument("pogorelov_verify: need N >= 3, n >= 2");
    if (eps <= 0.0) throw std::invalid_argument("pogorelov_verify: eps must be positive");
    if (grid.r_min <= 0.0) throw std::invalid_argument("pogorelov_verify: grid touching x = 0");

    const OdeTrajectory tr = integrate_pogorelov(N);
    const double C = n - 2.0 + 2.0 / N;
    const double k = 2.0 / (n * N) * C;

    // direction of the x-ray; the exact value depends only on |x|
    std::vector<double> dir(static_cast<std::size_t>(n));
    double dn = 0.0;
    for (int j = 0; j < n; ++j) {
        dir[static_cast<std::size_t>(j)] = j + 1.0;
        dn += dir[static_cast<std::size_t>(j)] * dir[static_cast<std::size_t>(j)];
    }
    for (double& v : dir) v /= std::sqrt(dn);

    auto u = [&](double t, const std::vector<double>& x) {
        double r2 = 0.0;
        for (double v : x) r2 += v * v;
        return tr.eval(t) * std::pow(r2 + eps, 1.0 / N);
    };

    CheckReport report;
    report.samples = grid.nt * grid.nx;
    double max_dev = 0.0, min_margin = std::numeric_limits<double>::infinity();
    for (int it = 0; it < grid.nt; ++it) {
        const double t = grid.nt == 1 ? grid.t_min
                                      : grid.t_min + (grid.t_max - grid.t_min) * it / (grid.nt - 1.0);
        for (int ix = 0; ix < grid.nx; ++ix) {
            const double r = grid.nx == 1
                                 ? grid.r_min
                                 : grid.r_min + (grid.r_max - grid.r_min) * ix / (grid.nx - 1.0);
            std::vector<double> x(static_cast<std::size_t>(n));
            for (int j = 0; j < n; ++j) x[static_cast<std::size_t>(j)] = r * dir[static_cast<std::size_t>(j)];

            const double ht = 1e-4 * (1.0 + std::fabs(t));
            const double u0 = u(t, x);
            const double utt = (u(t + ht, x) - 2.0 * u0 + u(t - ht, x)) / (ht * ht);
            double lap = 0.0;
            for (int j = 0; j < n; ++j) {
                const double hx = 1e-4 * (1.0 + std::fabs(x[static_cast<std::size_t>(j)]));
                std::vector<double> xp = x, xm = x;
                xp[static_cast<std::size_t>(j)] += hx;
                xm[static_cast<std::size_t>(j)] -= hx;
                lap += (u(t, xp) - 2.0 * u0 + u(t, xm)) / (hx * hx);
            }
            const double fd = std::pow(utt, N - 1) * lap / n;
            const double exact = (2.0 / (n * N)) * (C * r * r + eps * n) / (r * r + eps);
            max_dev = std::max(max_dev, std::fabs(fd - exact) / std::fabs(exact));
            min_margin = std::min(min_margin, fd - k);
        }
    }
    report.worst_gap = max_dev;
    report.residuals["k"] = k;
    report.residuals["max_rel_deviation"] = max_dev;
    report.residuals["min_subsolution_margin"] = min_margin;
    report.pass = max_dev <= 1e-3 && min_margin >= -1e-3 * k;
    return report;
}

CheckReport ordered_eig_family_check(const SparseSymPoly& q, const SparseSymPoly& r, int samples,
                                     std::uint64_t seed) {
    const SparseSymPoly qn = q.normalized(), rn = r.normalized();
    const HypothesisReport hq = check_hypotheses(qn), hr = check_hypotheses(rn);
    if (!hq.crh_pass() || !hr.crh_pass())
        throw std::invalid_argument("ordered_eig_family_check: inputs must satisfy the hypotheses");

    CheckReport report;
    report.samples = samples;
    report.seed = seed;
    report.pass = true;
    double min_gap = std::numeric_limits<double>::infinity();

    const bool same_k = std::fabs(hq.k - hr.k) <= 1e-9 * std::max(1.0, std::fabs(hq.k));
    const bool same_degree = qn.degree() == rn.degree();
    if (!same_k && !same_degree)
        throw std::invalid_argument(
            "ordered_eig_family_check: no combinator applies (unequal k and unequal degree)");

    auto run = [&](const SparseSymPoly& p, const char* tag) {
        const HypothesisReport hp = check_hypotheses(p);
        report.residuals[std::string(tag) + "_crh"] = hp.crh_pass() ? 1.0 : 0.0;
        report.pass = report.pass && hp.crh_pass();
        const MajorizationReport mr =
            majorization_harness(OperatorSpec::ordered_eig_poly(p), samples, seed);
        report.residuals[std::string(tag) + "_min_gap"] = mr.min_gap;
        min_gap = std::min(min_gap, mr.min_gap);
        report.pass = report.pass && mr.pass;
        if (!mr.pass) report.witness = mr.witness;
    };

    report.residuals["tensor_built"] = same_k ? 1.0 : 0.0;
    report.residuals["combo_built"] = same_degree ? 1.0 : 0.0;
    if (same_k) run(SparseSymPoly::split_product(qn, rn), "tensor");
    if (same_degree) {
        const double wq = hr.k / (hq.k + hr.k), wr = hq.k / (hq.k + hr.k);
        run(SparseSymPoly::split_sum(qn, rn, wq, wr), "combo");
    }
    report.worst_gap = min_gap;
    return report;
}

}  // namespace gd
