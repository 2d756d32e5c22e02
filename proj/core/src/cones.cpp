#include "gd/cones.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "gd/sample.hpp"

namespace gd {

namespace {

SymmetricMatrix project_onto(const SymmetricMatrix& X, const std::vector<SymmetricMatrix>& basis) {
    SymmetricMatrix out(X.dim(), X.algebra());
    for (const auto& b : basis) out += b * X.inner(b);
    return out;
}

}  // namespace

ConeSampler garding_cone_sampler(const OperatorSpec& F) {
    struct State {
        OperatorSpec F;
        SymmetricMatrix id, id_span;
        std::vector<SymmetricMatrix> span;
    };
    const SymmetricMatrix id =
        SymmetricMatrix::identity(F.space().matrix_dim(), F.space().algebra);
    const EdgeSpanDecomposition esd = edge_and_span(F);
    SymmetricMatrix id_span = project_onto(id, esd.span_basis);
    // eigenvalue functionals vanish on the edge, so the span part of the
    // identity still has Garding eigenvalues e and serves as the shift direction
    auto state = std::make_shared<State>(State{F, id, std::move(id_span), esd.span_basis});

    return [state](Rng& rng) {
        for (int attempt = 0; attempt < 64; ++attempt) {
            SymmetricMatrix B = project_onto(random_domain(rng, state->F), state->span);
            const double margin = rng.uniform() < 0.5 ? 0.0 : std::fabs(rng.normal());
            double lmin;
            try {
                lmin = garding_spectrum(state->F, state->id, B).values.front();
            } catch (const std::invalid_argument&) {
                continue;
            }
            B += state->id_span * (margin - lmin);
            const double nrm = B.frobenius_norm();
            if (nrm < 1e-12) continue;
            return B * (1.0 / nrm);
        }
        throw std::runtime_error("garding_cone_sampler: could not draw a cone point");
    };
}

PolarTestReport open_polar_test(const SymmetricMatrix& y, const ConeSampler& sampler, int samples,
                                std::uint64_t seed, double margin) {
    PolarTestReport report;
    report.samples = samples;
    report.seed = seed;
    report.epsilon_hat = std::numeric_limits<double>::infinity();

    struct Sample {
        double value;
        SymmetricMatrix x;
    };
    const auto results = map_samples<Sample>(samples, [&](int i) {
        Rng rng = Rng::for_sample(seed, static_cast<std::uint64_t>(i));
        SymmetricMatrix x = sampler(rng);
        const double v = y.inner(x) / x.frobenius_norm();
        return Sample{v, std::move(x)};
    });

    for (const auto& s : results) {
        if (s.value < report.epsilon_hat) report.epsilon_hat = s.value;
        if (s.value <= 0.0 && !report.falsifier) report.falsifier = s.x;
    }
    report.pass = !report.falsifier && report.epsilon_hat > margin;
    return report;
}

double exhaustion_value(const OperatorSpec& g, const SymmetricMatrix& y,
                        const SymmetricMatrix& x) {
    const double gx = g(x);
    if (gx <= 0.0) throw std::invalid_argument("exhaustion_value: point outside the cone");
    return y.inner(x) - std::log(gx);
}

double prelevel_radius_bound(double c, double epsilon, int N, double sup_g) {
    if (epsilon <= 0.0) throw std::invalid_argument("prelevel_radius_bound: epsilon must be positive");
    double factorial = 1.0;
    for (int i = 2; i <= N + 1; ++i) factorial *= i;
    return factorial * std::exp(c) / std::pow(epsilon, N + 1) * sup_g;
}

double sup_on_cone_sphere(const OperatorSpec& g, int samples, std::uint64_t seed) {
    const ConeSampler sampler = garding_cone_sampler(g);
    double best = 0.0;
    for (int i = 0; i < samples; ++i) {
        Rng rng = Rng::for_sample(seed, static_cast<std::uint64_t>(i));
        best = std::max(best, g(sampler(rng)));
    }
    return 1.1 * best;
}

CentralRayReport central_ray_check(const OperatorSpec& F) {
    const Space sp = F.space();
    const int dim = sp.matrix_dim();
    const int factor = algebra_factor(sp.algebra);
    const SymmetricMatrix id = SymmetricMatrix::identity(dim, sp.algebra);
    const double FI = F(id);
    if (FI <= 0.0) throw std::invalid_argument("central_ray_check: F(I) must be positive");
    const int N = F.degree();

    CentralRayReport report{SymmetricMatrix(dim, sp.algebra), 0, 0, 0, 0, 0,
                            SymmetricMatrix(dim, sp.algebra), false};
    report.gradient_at_I = gradient_matrix(F, id) * (1.0 / FI);
    // fit grad log F = (k/factor) Id; k is stated against the field trace
    report.k_hat = factor * report.gradient_at_I.trace() / dim;
    report.deviation = (report.gradient_at_I - id * (report.k_hat / factor)).frobenius_norm();
    report.k_theory = static_cast<double>(N) / sp.n;

    // Garding Laplacian against k * field trace on the domain basis
    double lap_dev = 0.0;
    for (const auto& b : domain_basis(F)) {
        const GardingSpectrum s = garding_spectrum(F, id, b);
        double tr_f = 0.0;
        for (double v : s.values) tr_f += v;
        lap_dev = std::max(lap_dev, std::fabs(tr_f - report.k_hat * field_trace(b)));
    }
    report.laplacian_deviation = lap_dev;

    // spot-check F(A)^{1/N} <= F(I)^{1/N} (k/N) <I,A>_field on cone samples
    const ConeSampler sampler = garding_cone_sampler(F);
    double margin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 100; ++i) {
        Rng rng = Rng::for_sample(0xce7a1u, static_cast<std::uint64_t>(i));
        const SymmetricMatrix A = sampler(rng);
        const double lhs = std::pow(std::max(F(A), 0.0), 1.0 / N);
        const double rhs = std::pow(FI, 1.0 / N) * report.k_hat / N * field_trace(A);
        margin = std::min(margin, rhs - lhs);
    }
    report.inequality_margin = margin;

    report.ray_point = central_ray_search(F, 1, 150, 12);
    report.pass = report.deviation <= 1e-8 && std::fabs(report.k_hat - report.k_theory) <= 1e-8 &&
                  lap_dev <= 1e-7 && margin >= -1e-9;
    return report;
}

SymmetricMatrix central_ray_search(const OperatorSpec& F, std::uint64_t seed, int iters,
                                   int restarts, std::vector<SearchTraceRow>* trace) {
    const Space sp = F.space();
    const int dim = sp.matrix_dim();
    const SymmetricMatrix id = SymmetricMatrix::identity(dim, sp.algebra);
    if (F(id) <= 0.0) throw std::invalid_argument("central_ray_search: F(I) must be positive");
    const EdgeSpanDecomposition esd = edge_and_span(F);
    const SymmetricMatrix id_span = project_onto(id, esd.span_basis);

    auto normalize = [](SymmetricMatrix m) {
        const double n = m.frobenius_norm();
        return m * (1.0 / n);
    };
    auto tangential = [&](const SymmetricMatrix& B, double& grad_norm) {
        SymmetricMatrix g = project_onto(gradient_matrix(F, B), esd.span_basis);
        grad_norm = g.frobenius_norm();
        return g - B * g.inner(B);
    };

    bool have_best = false;
    double best_value = 0.0, best_residual = std::numeric_limits<double>::infinity();
    SymmetricMatrix best(dim, sp.algebra);

    for (int r = 0; r < restarts; ++r) {
        Rng rng = Rng::for_sample(seed, static_cast<std::uint64_t>(r));
        SymmetricMatrix B(dim, sp.algebra);
        if (r == 0) {
            B = normalize(id_span);
        } else {
            B = project_onto(random_domain(rng, F), esd.span_basis);
            double lmin;
            try {
                lmin = garding_spectrum(F, id, B).values.front();
            } catch (const std::invalid_argument&) {
                continue;
            }
            B = normalize(B + id_span * (0.2 + std::fabs(rng.normal()) - lmin));
        }
        double fb = F(B);
        if (fb <= 0.0) continue;

        double residual = std::numeric_limits<double>::infinity();
        for (int it = 0; it < iters; ++it) {
            double grad_norm = 0.0;
            SymmetricMatrix gt = tangential(B, grad_norm);
            residual = gt.frobenius_norm() / std::max(grad_norm, 1e-300);
            if (trace) trace->push_back({r, it, std::log(fb), residual});
            if (residual <= 1e-10) break;
            const SymmetricMatrix dir = gt * (1.0 / gt.frobenius_norm());
            double alpha = 0.1;
            bool moved = false;
            while (alpha > 1e-14) {
                const SymmetricMatrix cand = normalize(B + dir * alpha);
                const double fc = F(cand);
                if (fc > fb) {
                    B = cand;
                    fb = fc;
                    moved = true;
                    break;
                }
                alpha *= 0.5;
            }
            if (!moved) break;
        }
        if (!have_best || fb > best_value) {
            have_best = true;
            best_value = fb;
            best_residual = residual;
            best = B;
        }
    }
    if (!have_best || best_residual > 1e-6)
        throw std::runtime_error("central_ray_search: no restart converged");
    return best;
}

}  // namespace gd
