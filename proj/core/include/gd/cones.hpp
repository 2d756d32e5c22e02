#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "gd/garding.hpp"
#include "gd/operators.hpp"
#include "gd/report.hpp"
#include "gd/rng.hpp"

namespace gd {

struct PolarTestReport {
    double epsilon_hat = 0.0;  // empirical min of <y,x> over unit samples of the cone closure
    bool pass = false;
    std::optional<SymmetricMatrix> falsifier;  // sample with <y,x> <= 0, conclusive
    int samples = 0;
    std::uint64_t seed = 0;
};

using ConeSampler = std::function<SymmetricMatrix(Rng&)>;

// Unit-norm samples of the closed Garding cone intersected with the span:
// Gaussian directions projected to the span, spectrum-shifted to a random
// interior margin (zero for boundary enrichment).
ConeSampler garding_cone_sampler(const OperatorSpec& F);

// One-sided numeric polar test: pass is evidence, a falsifier is conclusive.
PolarTestReport open_polar_test(const SymmetricMatrix& y, const ConeSampler& sampler, int samples,
                                std::uint64_t seed, double margin);

// psi(x) = <y,x> - log g(x); throws when g(x) <= 0.
double exhaustion_value(const OperatorSpec& g, const SymmetricMatrix& y, const SymmetricMatrix& x);

// R = (N+1)! e^c / eps^(N+1) * sup_g, the prelevel-set radius bound.
double prelevel_radius_bound(double c, double epsilon, int N, double sup_g);

// Estimate of sup g over the unit sphere of the cone closure, with a 1.1
// safety multiplier.
double sup_on_cone_sphere(const OperatorSpec& g, int samples, std::uint64_t seed);

struct CentralRayReport {
    SymmetricMatrix gradient_at_I;  // gradient of log F at the identity
    double k_hat = 0.0;             // fitted field-trace multiple
    double deviation = 0.0;         // || grad log F - fit ||_F
    double k_theory = 0.0;          // N / n
    double laplacian_deviation = 0.0;
    double inequality_margin = 0.0;
    SymmetricMatrix ray_point;      // B0 from the search
    bool pass = false;
};

CentralRayReport central_ray_check(const OperatorSpec& F);

struct SearchTraceRow {
    int restart = 0;
    int iter = 0;
    double value = 0.0;     // log F at the iterate
    double residual = 0.0;  // tangential gradient norm, relative
};

// Projected-gradient ascent of F^(1/N) on the unit sphere inside the cone's
// span; restarts from seeded interior points, backtracking line search.
SymmetricMatrix central_ray_search(const OperatorSpec& F, std::uint64_t seed, int iters = 200,
                                   int restarts = 50, std::vector<SearchTraceRow>* trace = nullptr);

}  // namespace gd
