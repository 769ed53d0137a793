// srso3 — sub-Riemannian geometry of SO(3) at the command line.
//
// Subcommands: geodesic, cut-time, diameter, distance, cut-locus, sphere,
// check.  Exit codes: 0 ok, 1 check/convergence failure, 2 usage error.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "srso3/checks.hpp"
#include "srso3/cut_locus.hpp"
#include "srso3/distance.hpp"
#include "srso3/export.hpp"
#include "srso3/geodesic.hpp"
#include "srso3/kernels.hpp"
#include "srso3/sphere.hpp"

namespace {

using namespace srso3;

struct GlobalOptions {
    std::string format = "csv";
    std::uint64_t seed = 20250809;
    double tol = 1e-9;
    int jobs = 1;
};

Rotation parse_target(const std::vector<double>& matrix, const std::vector<double>& axis,
                      double angle, bool have_angle) {
    Mat3 m;
    if (!matrix.empty()) {
        if (matrix.size() != 9)
            throw CLI::ValidationError("--matrix expects 9 row-major entries");
        for (std::size_t i = 0; i < 9; ++i) m.e[i] = matrix[i];
    } else if (axis.size() == 3 && have_angle) {
        Vec3 u{axis[0], axis[1], axis[2]};
        const double n = u.norm();
        if (n < 1e-12) throw CLI::ValidationError("--axis must be a nonzero vector");
        u = u * (1.0 / n);
        // coefficients (xa, xb, xc) of the rotation about u by `angle`
        m = exp(LieVector{angle * u.z, -angle * u.y, angle * u.x}).matrix();
    } else {
        throw CLI::ValidationError("provide --matrix or --axis + --angle");
    }
    // accept inputs within 1e-8 of SO(3), then tighten
    Rotation::from_matrix(m, 1e-8);
    return Rotation::from_matrix(orthonormalize(m), 1e-12);
}

int cmd_geodesic(const GlobalOptions& g, double phi0, double beta, double t_max,
                 int steps) {
    if (steps < 1) throw CLI::ValidationError("--steps must be >= 1");
    auto writer = make_writer(parse_format(g.format), std::cout);
    const GeodesicParam p(phi0, beta);
    for (int k = 0; k < steps; ++k) {
        const double t = (steps == 1) ? 0.0
                                      : t_max * static_cast<double>(k) /
                                            static_cast<double>(steps - 1);
        GeodesicSampleRow row;
        row.t = t;
        row.phi0 = p.phi0;
        row.beta = p.beta;
        row.r = geodesic_closed_form(p, t).matrix();
        writer->write(row);
    }
    writer->finish();
    return 0;
}

int cmd_cut_time(const GlobalOptions& g, bool have_beta, double beta, double beta_min,
                 double beta_max, int steps, const std::string& spacing) {
    if (have_beta) {
        std::cout << format_double(cut_time(beta).t1) << '\n';
        return 0;
    }
    if (steps < 1) throw CLI::ValidationError("--steps must be >= 1");
    auto writer = make_writer(parse_format(g.format), std::cout);
    for (int i = 0; i < steps; ++i) {
        double b;
        if (steps == 1)
            b = 0.5 * (beta_min + beta_max);
        else if (spacing == "atan") {
            const double lo = std::atan(beta_min), hi = std::atan(beta_max);
            b = std::tan(lo + (hi - lo) * static_cast<double>(i) /
                                  static_cast<double>(steps - 1));
        } else {
            b = beta_min + (beta_max - beta_min) * static_cast<double>(i) /
                               static_cast<double>(steps - 1);
        }
        const CutPoint cp = cut_time(b);
        CutPointRow row;
        row.beta = cp.beta;
        row.t1 = cp.t1;
        row.branch = to_string(cp.branch);
        row.r = cp.endpoint.matrix();
        writer->write(row);
    }
    writer->finish();
    return 0;
}

int cmd_diameter(const GlobalOptions& g, bool do_check, std::size_t grid_n,
                 double beta_max) {
    if (!do_check) {
        std::cout << format_double(diameter()) << '\n';
        return 0;
    }
    const DiameterCheck dc =
        diameter_check(DiameterGrid{-beta_max, beta_max, grid_n, true}, g.jobs);
    std::cout << "diameter " << format_double(diameter()) << '\n'
              << "grid_max " << format_double(dc.grid_max) << " at beta "
              << format_double(dc.grid_argmax) << '\n'
              << "refined_max " << format_double(dc.refined_max) << " at beta "
              << format_double(dc.refined_argmax) << '\n';
    return 0;
}

int cmd_distance(const GlobalOptions& g, const std::vector<double>& matrix,
                 const std::vector<double>& axis, double angle, bool have_angle,
                 bool run_oracle, int segments, int budget) {
    const Rotation target = parse_target(matrix, axis, angle, have_angle);
    try {
        DistanceResult res = sr_log(target, g.tol);
        if (run_oracle)
            res.oracle_bound =
                brute_force_distance(target, segments, budget, g.seed);
        if (g.format == "json") {
            std::cout << "{\"distance\":" << format_double(res.distance)
                      << ",\"phi0\":" << format_double(res.param.phi0)
                      << ",\"beta\":" << format_double(res.param.beta)
                      << ",\"time\":" << format_double(res.time)
                      << ",\"residual\":" << format_double(res.residual)
                      << ",\"multiplicity\":\"" << to_string(res.multiplicity) << '"';
            if (res.oracle_bound)
                std::cout << ",\"oracle_bound\":" << format_double(*res.oracle_bound);
            std::cout << "}\n";
        } else {
            std::cout << format_double(res.distance) << '\n';
            if (res.oracle_bound)
                std::cerr << "oracle bound: " << format_double(*res.oracle_bound)
                          << '\n';
        }
        return 0;
    } catch (const NoConvergence& e) {
        std::cerr << "error: " << e.what()
                  << " (best residual " << format_double(e.best.residual) << ")\n";
        return 1;
    }
}

int cmd_cut_locus(const GlobalOptions& g, std::size_t n, double beta_max) {
    auto writer = make_writer(parse_format(g.format), std::cout);
    for (const CutPoint& cp : sample_cut_locus(n, beta_max, g.jobs)) {
        CutPointRow row;
        row.beta = cp.beta;
        row.t1 = cp.t1;
        row.branch = to_string(cp.branch);
        row.r = cp.endpoint.matrix();
        writer->write(row);
    }
    writer->finish();
    return 0;
}

int cmd_sphere(const GlobalOptions& g, double radius, std::size_t n) {
    if (!(radius > 0.0) || radius > diameter() + 1e-12)
        throw CLI::ValidationError("--radius must lie in (0, pi*sqrt(3)]");
    auto writer = make_writer(parse_format(g.format), std::cout);

    // The sphere of radius R is {Exp((phi0, beta), R) : t1(beta) >= R}.  The
    // qualifying set is |beta| in [beta_lo, beta_hi]: beta_hi solves
    // 2*pi/sqrt(1+beta^2) = R on the falling branch, beta_lo is 0 for
    // R <= pi and otherwise the rising-branch boundary (t1 is unimodal, so
    // generic grids miss the narrow window near the peak — grid the window
    // itself instead).
    // clamp to the computed peak so the exact-diameter query stays reachable
    radius = std::min(radius, detail::cut_time_scalar(detail::inv_sqrt3()).t1);
    const double k = 2.0 * M_PI / radius;
    const double beta_hi =
        std::max(std::sqrt(std::max(k * k - 1.0, 0.0)), detail::inv_sqrt3());
    double beta_lo = 0.0;
    if (radius > M_PI) {
        double lo = 0.0, hi = detail::inv_sqrt3();
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (lo + hi);
            if (mid == lo || mid == hi) break;
            (detail::cut_time_scalar(mid).t1 >= radius ? hi : lo) = mid;
        }
        beta_lo = hi;
    }

    const double xi_lo = std::atan(beta_lo), xi_hi = std::atan(beta_hi);
    const std::size_t nphi = n;
    std::vector<double> betas;
    if (xi_hi - xi_lo < 1e-12) {
        // sphere at (or within rounding of) the diameter: only the peak reaches
        betas = {detail::inv_sqrt3(), -detail::inv_sqrt3()};
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            const double xi = xi_lo + (xi_hi - xi_lo) * (static_cast<double>(i) + 0.5) /
                                          static_cast<double>(n);
            const double b = std::tan(xi);
            if (beta_lo == 0.0 && i == 0) betas.push_back(0.0);
            betas.push_back(b);
            if (b != 0.0) betas.push_back(-b);
        }
    }
    for (const double beta : betas) {
        if (detail::cut_time_scalar(beta).t1 < radius) continue; // edge rounding
        for (std::size_t kk = 0; kk < nphi; ++kk) {
            const double phi0 =
                2.0 * M_PI * static_cast<double>(kk) / static_cast<double>(nphi);
            SpherePointRow row;
            row.phi0 = phi0;
            row.beta = beta;
            row.t = radius;
            row.r = geodesic_closed_form(GeodesicParam(phi0, beta), radius).matrix();
            writer->write(row);
        }
    }
    writer->finish();
    return 0;
}

int cmd_check(const GlobalOptions& g, const std::string& suite,
              const std::string& profile) {
    checks::CheckOptions opt;
    std::string prof = profile;
    if (prof.empty()) {
        const char* env = std::getenv("SRSO3_TOL");
        prof = (env && *env) ? env : "default";
    }
    opt.tol_scale = checks::profile_scale(prof);
    opt.seed = g.seed;
    opt.jobs = g.jobs;

    const std::vector<checks::CheckResult> results =
        (suite == "all") ? checks::run_all(opt) : checks::run_suite(suite, opt);

    // stdout stays byte-deterministic for fixed flags + seed; wall times go
    // to the stderr record stream only.
    auto writer = make_writer(parse_format(g.format), std::cerr);
    for (const auto& r : results) {
        std::cout << (r.pass ? "PASS" : "FAIL") << ' ' << r.suite << '/' << r.id
                  << " value=" << format_double(r.value)
                  << " threshold=" << format_double(r.threshold);
        if (!r.detail.empty()) std::cout << " [" << r.detail << ']';
        std::cout << '\n';
        CheckRow row;
        row.suite = r.suite;
        row.id = r.id;
        row.pass = r.pass;
        row.value = r.value;
        row.threshold = r.threshold;
        row.seconds = r.seconds;
        writer->write(row);
    }
    writer->finish();
    return checks::all_passed(results) ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sub-Riemannian geometry of SO(3): geodesics, cut times, distances"};
    app.require_subcommand(1);

    GlobalOptions g;
    app.add_option("--format", g.format, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--seed", g.seed, "Seed for randomized runs");
    app.add_option("--tol", g.tol, "Solver tolerance (distance)");
    app.add_option("--jobs", g.jobs, "Worker threads for grid sweeps")
        ->check(CLI::PositiveNumber);
    std::string kernel = "auto";
    app.add_option("--kernel", kernel, "Kernel backend: auto, scalar or avx2")
        ->check(CLI::IsMember({"auto", "scalar", "avx2"}));

    // geodesic
    auto* geo = app.add_subcommand("geodesic", "Sample a geodesic from the identity");
    double phi0 = 0.0, beta = 0.0, t_max = 2.0 * M_PI;
    int steps = 100;
    geo->add_option("--phi0", phi0, "Initial horizontal direction (radians)");
    geo->add_option("--beta", beta, "Vertical momentum");
    geo->add_option("--t-max", t_max, "Final arc length");
    geo->add_option("--steps", steps, "Number of samples");

    // cut-time
    auto* ct = app.add_subcommand("cut-time", "Cut time t1(beta)");
    double ct_beta = 0.0, ct_min = -3.0, ct_max = 3.0;
    int ct_steps = 101;
    std::string ct_spacing = "atan";
    auto* ct_beta_opt = ct->add_option("--beta", ct_beta, "Single beta value");
    ct->add_option("--beta-min", ct_min, "Range start (range mode)");
    ct->add_option("--beta-max", ct_max, "Range end (range mode)");
    ct->add_option("--steps", ct_steps, "Range sample count");
    ct->add_option("--spacing", ct_spacing, "Range spacing: atan or uniform")
        ->check(CLI::IsMember({"atan", "uniform"}));

    // diameter
    auto* diam = app.add_subcommand("diameter", "Diameter of (SO(3), d)");
    bool diam_check = false;
    std::size_t diam_n = 10000;
    double diam_bmax = 5.0;
    diam->add_flag("--check", diam_check, "Also scan a beta grid and refine the peak");
    diam->add_option("--grid-n", diam_n, "Grid size for --check");
    diam->add_option("--beta-max", diam_bmax, "Grid range for --check");

    // distance
    auto* dist = app.add_subcommand("distance", "Sub-Riemannian distance from the identity");
    std::vector<double> dist_matrix, dist_axis;
    double dist_angle = 0.0;
    bool dist_oracle = false;
    int dist_segments = 16, dist_budget = 200;
    dist->add_option("--matrix", dist_matrix, "Target rotation, 9 row-major entries")
        ->expected(9);
    dist->add_option("--axis", dist_axis, "Target rotation axis (with --angle)")
        ->expected(3);
    auto* angle_opt = dist->add_option("--angle", dist_angle, "Rotation angle (radians)");
    dist->add_flag("--oracle", dist_oracle, "Also run the brute-force upper bound");
    dist->add_option("--segments", dist_segments, "Oracle path segments (4..32)");
    dist->add_option("--budget", dist_budget, "Oracle restarts");

    // cut-locus
    auto* cl = app.add_subcommand("cut-locus", "Sample the cut locus C(e)");
    std::size_t cl_n = 201;
    double cl_bmax = 50.0;
    cl->add_option("--n", cl_n, "Number of beta grid points");
    cl->add_option("--beta-max", cl_bmax, "Clip |beta| at this value");

    // sphere
    auto* sph = app.add_subcommand("sphere", "Sample the metric sphere of a given radius");
    double sph_r = 1.0;
    std::size_t sph_n = 64;
    sph->add_option("--radius", sph_r, "Sphere radius in (0, pi*sqrt(3)]")->required();
    sph->add_option("--n", sph_n, "Grid resolution per axis");

    // check
    auto* chk = app.add_subcommand("check", "Run verification suites");
    std::string chk_suite = "all", chk_profile;
    chk->add_option("--suite", chk_suite, "Suite name or 'all'");
    chk->add_option("--tolerance-profile", chk_profile,
                    "default, strict or loose (env SRSO3_TOL)");

    // accept the global flags after the subcommand too
    for (CLI::App* sc : {geo, ct, diam, dist, cl, sph, chk}) sc->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        kernels::force_backend(kernel.c_str());
        if (geo->parsed()) return cmd_geodesic(g, phi0, beta, t_max, steps);
        if (ct->parsed())
            return cmd_cut_time(g, ct_beta_opt->count() > 0, ct_beta, ct_min, ct_max,
                                ct_steps, ct_spacing);
        if (diam->parsed()) return cmd_diameter(g, diam_check, diam_n, diam_bmax);
        if (dist->parsed())
            return cmd_distance(g, dist_matrix, dist_axis, dist_angle,
                                angle_opt->count() > 0, dist_oracle, dist_segments,
                                dist_budget);
        if (cl->parsed()) return cmd_cut_locus(g, cl_n, cl_bmax);
        if (sph->parsed()) return cmd_sphere(g, sph_r, sph_n);
        if (chk->parsed()) return cmd_check(g, chk_suite, chk_profile);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const InvalidRotation& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
