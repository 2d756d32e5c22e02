// gd -- command-line front end: loads operator specs and matrices, runs the
// checks and harnesses, and emits machine-readable reports.
//
// Exit codes: 0 pass, 2 property failure, 1 usage or I/O error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "gd/cones.hpp"
#include "gd/garding.hpp"
#include "gd/io.hpp"
#include "gd/majorize.hpp"
#include "gd/operators.hpp"
#include "gd/rng.hpp"
#include "gd/sample.hpp"

#define GD_VERSION "0.1.0"

namespace {

using nlohmann::json;

struct Options {
    std::string spec_path;
    std::string builtin;
    int n = 0;
    int k = 0;
    int p = 0;
    std::string algebra = "R";
    std::string matrix_path;
    int samples = 1000;
    std::uint64_t seed = 42;
    double tol = 1e-8;
    std::string out;
    std::string format = "json";
};

void add_common(CLI::App* cmd, Options& o, bool wants_spec = true) {
    if (wants_spec) cmd->add_option("spec", o.spec_path, "operator spec JSON file");
    cmd->add_option("--builtin", o.builtin,
                    "builtin operator: sigma | det | pfold | lagrangian-ma | sec9");
    cmd->add_option("--n", o.n, "field dimension for --builtin");
    cmd->add_option("--k", o.k, "sigma index for --builtin sigma");
    cmd->add_option("--p", o.p, "subset size for --builtin pfold");
    cmd->add_option("--algebra", o.algebra, "R | C | H for --builtin (default R)");
    cmd->add_option("--samples", o.samples, "sample count")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", o.seed, "random seed");
    cmd->add_option("--tol", o.tol, "tolerance")->check(CLI::PositiveNumber);
    cmd->add_option("--out", o.out, "output path (default stdout)");
    cmd->add_option("--format", o.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
}

gd::OperatorSpec resolve_operator(const Options& o) {
    if (!o.spec_path.empty()) return gd::load_operator(o.spec_path);
    if (o.builtin.empty())
        throw gd::io_error("spec", "provide an operator spec file or --builtin NAME");
    const gd::Algebra alg = gd::algebra_from_name(o.algebra);
    if (o.builtin == "sec9")
        return gd::OperatorSpec::diagonal_poly(gd::SparseSymPoly::monomial(2, {2, 1}));
    if (o.n < 1) throw gd::io_error("--n", "builtin operators need --n >= 1");
    const gd::Space space{alg, o.n};
    if (o.builtin == "sigma") {
        if (o.k < 1) throw gd::io_error("--k", "builtin sigma needs --k >= 1");
        return gd::OperatorSpec::sigma(space, o.k);
    }
    if (o.builtin == "det") return gd::OperatorSpec::det(space);
    if (o.builtin == "pfold") {
        if (o.p < 1) throw gd::io_error("--p", "builtin pfold needs --p >= 1");
        return gd::OperatorSpec::p_fold_sum(space, o.p);
    }
    if (o.builtin == "lagrangian-ma") return gd::OperatorSpec::lagrangian_ma(o.n);
    throw gd::io_error("--builtin", "unknown builtin '" + o.builtin + "'");
}

json config_json(const Options& o, const std::string& command) {
    json cfg{{"samples", o.samples}, {"seed", o.seed},       {"tol", o.tol},
             {"format", o.format},   {"builtin", o.builtin}, {"spec", o.spec_path}};
    if (!o.matrix_path.empty()) cfg["matrix"] = o.matrix_path;
    if (!o.builtin.empty()) {
        cfg["n"] = o.n;
        cfg["algebra"] = o.algebra;
        if (o.k > 0) cfg["k"] = o.k;
        if (o.p > 0) cfg["p"] = o.p;
    }
    cfg["command"] = command;
    return cfg;
}

int emit(const Options& o, const std::string& command, const json& report, bool pass,
         const std::string& csv = "") {
    std::string payload;
    if (o.format == "csv") {
        if (csv.empty()) throw gd::io_error("--format", "csv output not supported for " + command);
        payload = csv;
    } else {
        const json envelope{{"tool_version", GD_VERSION},
                            {"command", command},
                            {"config", config_json(o, command)},
                            {"report", report}};
        payload = envelope.dump(2) + "\n";
    }
    if (o.out.empty()) {
        std::cout << payload;
    } else {
        std::ofstream f(o.out);
        if (!f) throw gd::io_error(o.out, "cannot open output file");
        f << payload;
    }
    return pass ? 0 : 2;
}

// the defining polynomial on eigenvalue space, when the node has one
std::optional<gd::SparseSymPoly> defining_polynomial(const gd::OperatorSpec& F) {
    using Kind = gd::OperatorSpec::Kind;
    switch (F.kind()) {
        case Kind::Sigma: return gd::SparseSymPoly::elementary(F.space().n, F.param());
        case Kind::Det: return gd::SparseSymPoly::elementary(F.space().n, F.space().n);
        case Kind::SymPolyOfEigs:
        case Kind::DiagonalPoly:
        case Kind::OrderedEigPoly: return F.polys()[0];
        case Kind::ConvexCombo: {
            const auto [wq, wr] = F.combo_weights();
            return gd::SparseSymPoly::split_sum(F.polys()[0], F.polys()[1], wq, wr);
        }
        case Kind::TensorProduct:
            return gd::SparseSymPoly::split_product(F.polys()[0], F.polys()[1]);
        default: return std::nullopt;
    }
}

int cmd_check(const Options& o) {
    const gd::OperatorSpec F = resolve_operator(o);
    json report;
    bool pass = true;

    if (const auto p = defining_polynomial(F)) {
        const gd::HypothesisReport h = gd::check_hypotheses(*p);
        report["hypotheses"] = gd::to_json(h);
        pass = pass && h.crh_pass();
    } else {
        report["hypotheses"] = nullptr;
    }

    const gd::CheckReport hyp = gd::is_hyperbolic(F, o.samples, o.seed, o.tol);
    report["hyperbolic"] = gd::to_json(hyp);
    pass = pass && hyp.pass;

    const bool cone = gd::in_garding_cone(
        F, gd::SymmetricMatrix::identity(F.space().matrix_dim(), F.space().algebra));
    report["identity_in_cone"] = cone;
    pass = pass && cone;

    report["degree"] = F.degree();
    report["pass"] = pass;
    return emit(o, "check", report, pass);
}

int cmd_majorize(const Options& o) {
    const gd::OperatorSpec F = resolve_operator(o);
    std::vector<double> gaps;
    const gd::MajorizationReport r = gd::majorization_harness(F, o.samples, o.seed, 10.0, &gaps);
    std::string csv = "sample_index,gap\n";
    for (std::size_t i = 0; i < gaps.size(); ++i)
        csv += std::to_string(i) + "," + json(gaps[i]).dump() + "\n";
    return emit(o, "majorize", gd::to_json(r), r.pass, csv);
}

int cmd_eigs(const Options& o) {
    const gd::OperatorSpec F = resolve_operator(o);
    const gd::SymmetricMatrix B = gd::load_matrix(o.matrix_path);
    const gd::SymmetricMatrix id =
        gd::SymmetricMatrix::identity(F.space().matrix_dim(), F.space().algebra);
    const gd::GardingSpectrum s = gd::garding_spectrum(F, id, B);
    const bool pass = s.hyperbolicity_residual <= o.tol * std::max(1.0, std::fabs(s.values.back()));
    json report = gd::to_json(s);
    report["pass"] = pass;
    std::string csv = "index,value\n";
    for (std::size_t i = 0; i < s.values.size(); ++i)
        csv += std::to_string(i) + "," + json(s.values[i]).dump() + "\n";
    return emit(o, "eigs", report, pass, csv);
}

int cmd_barrier(const Options& o) {
    const gd::OperatorSpec F = resolve_operator(o);
    const gd::SymmetricMatrix B = gd::load_matrix(o.matrix_path);
    const gd::SymmetricMatrix A =
        gd::SymmetricMatrix::identity(F.space().matrix_dim(), F.space().algebra);

    json report;
    json logd = json::array();
    for (int k = 1; k <= 4; ++k) logd.push_back(gd::log_derivative(F, A, B, k));
    report["log_derivatives"] = logd;

    bool pass = true;
    const gd::CheckReport g32 = gd::guler_check(F, A, B, 3, 2);
    const gd::CheckReport g42 = gd::guler_check(F, A, B, 4, 2);
    report["guler_3_2"] = gd::to_json(g32);
    report["guler_4_2"] = gd::to_json(g42);
    pass = pass && g32.pass && g42.pass;

    const gd::CheckReport disc = gd::discriminant_identity_check(F, A, B);
    report["discriminant"] = gd::to_json(disc);
    pass = pass && disc.pass;

    report["pass"] = pass;
    return emit(o, "barrier", report, pass);
}

int cmd_central_ray(const Options& o) {
    const gd::OperatorSpec F = resolve_operator(o);
    const gd::CentralRayReport r = gd::central_ray_check(F);
    std::vector<gd::SearchTraceRow> trace;
    gd::central_ray_search(F, o.seed, 150, 12, &trace);
    std::string csv = "restart,iter,log_value,residual\n";
    for (const auto& row : trace)
        csv += std::to_string(row.restart) + "," + std::to_string(row.iter) + "," +
               json(row.value).dump() + "," + json(row.residual).dump() + "\n";
    return emit(o, "central-ray", gd::to_json(r), r.pass, csv);
}

int cmd_exhaustion(const Options& o, double c) {
    const gd::OperatorSpec F = resolve_operator(o);
    const gd::SymmetricMatrix y =
        o.matrix_path.empty()
            ? gd::SymmetricMatrix::identity(F.space().matrix_dim(), F.space().algebra)
            : gd::load_matrix(o.matrix_path);

    const gd::ConeSampler sampler = gd::garding_cone_sampler(F);

    // midpoint convexity along interior segments
    double min_slack = std::numeric_limits<double>::infinity();
    int segments = 0;
    for (int i = 0; segments < o.samples && i < 20 * o.samples; ++i) {
        gd::Rng rng = gd::Rng::for_sample(o.seed, static_cast<std::uint64_t>(i));
        gd::SymmetricMatrix a = sampler(rng) * rng.uniform(0.5, 3.0);
        gd::SymmetricMatrix b = sampler(rng) * rng.uniform(0.5, 3.0);
        double pa, pb, pm;
        try {
            pa = gd::exhaustion_value(F, y, a);
            pb = gd::exhaustion_value(F, y, b);
            pm = gd::exhaustion_value(F, y, (a + b) * 0.5);
        } catch (const std::invalid_argument&) {
            continue;  // boundary sample
        }
        ++segments;
        min_slack = std::min(min_slack, 0.5 * (pa + pb) - pm);
    }

    // prelevel radius bound over scaled cone samples
    const double sup_g = gd::sup_on_cone_sphere(F, std::max(200, o.samples / 4), o.seed + 1);
    const gd::PolarTestReport polar = gd::open_polar_test(y, sampler, o.samples, o.seed + 2, 0.0);
    const double eps_hat = std::max(polar.epsilon_hat, 1e-6);
    const double R = gd::prelevel_radius_bound(c, eps_hat, F.degree(), sup_g);
    int level_hits = 0, violations = 0;
    for (int i = 0; i < o.samples; ++i) {
        gd::Rng rng = gd::Rng::for_sample(o.seed + 3, static_cast<std::uint64_t>(i));
        const gd::SymmetricMatrix x = sampler(rng) * std::exp(rng.uniform(-3.0, std::log(2.0 * R)));
        double psi;
        try {
            psi = gd::exhaustion_value(F, y, x);
        } catch (const std::invalid_argument&) {
            continue;
        }
        if (psi <= c) {
            ++level_hits;
            if (x.frobenius_norm() > R) ++violations;
        }
    }

    const bool pass = min_slack >= -1e-9 && violations == 0 && polar.pass;
    const json report{{"midpoint_min_slack", min_slack},
                      {"segments", segments},
                      {"epsilon_hat", polar.epsilon_hat},
                      {"sup_g", sup_g},
                      {"c", c},
                      {"radius_bound", R},
                      {"prelevel_hits", level_hits},
                      {"radius_violations", violations},
                      {"pass", pass}};
    return emit(o, "exhaustion", report, pass);
}

int cmd_counterexample(const Options& o, const std::string& mode, double s, double gamma, int bigN,
                       int smalln, double eps) {
    if (mode == "ratio") {
        const double r = gd::counterexample_ratio(s);
        const json report{{"s", s}, {"ratio", r}, {"pass", true}};
        return emit(o, "counterexample", report, true);
    }
    if (mode == "scan") {
        const gd::CheckReport r = gd::counterexample_scan(gamma);
        json report = gd::to_json(r);
        report["gamma"] = gamma;
        return emit(o, "counterexample", report, r.pass);
    }
    if (mode == "pogorelov") {
        const gd::CheckReport r = gd::pogorelov_verify(bigN, smalln, eps);
        json report = gd::to_json(r);
        report["N"] = bigN;
        report["n"] = smalln;
        report["eps"] = eps;
        return emit(o, "counterexample", report, r.pass);
    }
    throw gd::io_error("mode", "counterexample mode must be ratio | scan | pogorelov");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Garding-Dirichlet operators: spectra, majorization and cone checks"};
    app.require_subcommand(1);
    app.set_version_flag("--version", GD_VERSION);

    Options o;
    double c = 5.0, s = 1.0, gamma = 0.5, eps = 1e-2;
    int bigN = 3;
    std::string mode;

    CLI::App* check = app.add_subcommand("check", "hypotheses, hyperbolicity and cone membership");
    add_common(check, o);

    CLI::App* maj = app.add_subcommand("majorize", "determinant-majorization harness");
    add_common(maj, o);

    CLI::App* eigs = app.add_subcommand("eigs", "Garding spectrum of a matrix");
    add_common(eigs, o);
    eigs->add_option("--matrix", o.matrix_path, "matrix JSON file")->required();

    CLI::App* barrier = app.add_subcommand("barrier", "barrier derivative identities");
    add_common(barrier, o);
    barrier->add_option("--matrix", o.matrix_path, "direction matrix JSON file")->required();

    CLI::App* ray = app.add_subcommand("central-ray", "central ray fit and search");
    add_common(ray, o);

    CLI::App* exh = app.add_subcommand("exhaustion", "exhaustion convexity and radius bound");
    add_common(exh, o);
    exh->add_option("--matrix", o.matrix_path, "polar vector y as a matrix JSON file");
    exh->add_option("--c", c, "prelevel cutoff (default 5)");

    CLI::App* ce = app.add_subcommand("counterexample", "majorization failure reproductions");
    ce->add_option("mode", mode, "ratio | scan | pogorelov")->required();
    add_common(ce, o, false);
    ce->add_option("--s", s, "diagonal entry for ratio mode");
    ce->add_option("--gamma", gamma, "threshold for scan mode");
    ce->add_option("--N", bigN, "exponent N for pogorelov mode");
    ce->add_option("--eps", eps, "regularization epsilon for pogorelov mode");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }

    try {
        if (check->parsed()) return cmd_check(o);
        if (maj->parsed()) return cmd_majorize(o);
        if (eigs->parsed()) return cmd_eigs(o);
        if (barrier->parsed()) return cmd_barrier(o);
        if (ray->parsed()) return cmd_central_ray(o);
        if (exh->parsed()) return cmd_exhaustion(o, c);
        if (ce->parsed()) return cmd_counterexample(o, mode, s, gamma, bigN, o.n < 1 ? 2 : o.n, eps);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
