#include "srso3/cut_locus.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "srso3/kernels.hpp"
#include "srso3/parallel.hpp"

namespace srso3 {

const char* to_string(CutBranch b) {
    switch (b) {
        case CutBranch::BetaZero: return "zero";
        case CutBranch::FullCircle: return "full-circle";
        case CutBranch::DigonPi: return "digon-pi";
    }
    return "?";
}

CutPoint cut_time(double beta) {
    const auto r = detail::cut_time_scalar(beta);
    CutPoint cp;
    cp.beta = beta;
    cp.t1 = r.t1;
    cp.branch = r.branch;
    cp.endpoint = geodesic_closed_form(GeodesicParam(0.0, beta), r.t1);
    return cp;
}

double cut_root_residual(double beta, double t1) {
    const double ab = std::abs(beta);
    const double w = std::sqrt(1.0 + beta * beta);
    const double h = 0.5 * t1 * w;
    const double psi = std::atan2(ab * std::sin(h), w * std::cos(h));
    return 2.0 * psi - ab * t1 - M_PI;
}

double diameter() { return M_PI * std::sqrt(3.0); }

namespace {

double cut_time_t1_only(double beta) { return detail::cut_time_scalar(beta).t1; }

// Golden-section maximization of t1(|beta|) on [lo, hi]; t1 is unimodal
// there (increasing to the peak, decreasing after).
std::pair<double, double> golden_max(double lo, double hi) {
    const double invphi = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - invphi * (hi - lo);
    double x2 = lo + invphi * (hi - lo);
    double f1 = cut_time_t1_only(x1);
    double f2 = cut_time_t1_only(x2);
    double best_x = (f1 > f2) ? x1 : x2;
    double best_f = std::max(f1, f2);
    for (int it = 0; it < 120 && (hi - lo) > 1e-13; ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + invphi * (hi - lo);
            f2 = cut_time_t1_only(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - invphi * (hi - lo);
            f1 = cut_time_t1_only(x1);
        }
        if (f1 > best_f) best_f = f1, best_x = x1;
        if (f2 > best_f) best_f = f2, best_x = x2;
    }
    return {best_x, best_f};
}

std::vector<double> make_beta_grid(const DiameterGrid& g) {
    if (g.points == 0)
        throw std::invalid_argument("diameter_check: grid needs at least one point");
    std::vector<double> betas(g.points);
    if (g.points == 1) {
        betas[0] = 0.5 * (g.beta_min + g.beta_max);
        return betas;
    }
    if (g.atan_spacing) {
        const double xi_min = std::atan(g.beta_min);
        const double xi_max = std::atan(g.beta_max);
        for (std::size_t i = 0; i < g.points; ++i) {
            const double xi = xi_min + (xi_max - xi_min) * static_cast<double>(i) /
                                           static_cast<double>(g.points - 1);
            betas[i] = std::tan(xi);
        }
    } else {
        for (std::size_t i = 0; i < g.points; ++i)
            betas[i] = g.beta_min + (g.beta_max - g.beta_min) * static_cast<double>(i) /
                                        static_cast<double>(g.points - 1);
    }
    return betas;
}

} // namespace

DiameterCheck diameter_check(const DiameterGrid& grid, int jobs) {
    const std::vector<double> betas = make_beta_grid(grid);
    std::vector<double> t1(betas.size());
    run_partitioned(betas.size(), jobs, [&](std::size_t b, std::size_t e) {
        kernels::active_backend().cut_time_batch(betas.data() + b, e - b, t1.data() + b,
                                                 nullptr);
    });

    DiameterCheck out;
    std::size_t imax = 0;
    for (std::size_t i = 0; i < t1.size(); ++i)
        if (t1[i] > t1[imax]) imax = i;
    out.grid_max = t1[imax];
    out.grid_argmax = betas[imax];

    // Refine around the grid peak on the |beta| axis; the peak of t1(|beta|)
    // sits at 1/sqrt(3), approached with a vertical tangent from the digon
    // side, so only the refined value certifies the diameter tolerance.
    const double ab = std::abs(out.grid_argmax);
    double span = 1e-3;
    if (imax > 0) span = std::max(span, std::abs(betas[imax] - betas[imax - 1]));
    if (imax + 1 < betas.size()) span = std::max(span, std::abs(betas[imax + 1] - betas[imax]));
    const double abs_hi = std::max(std::abs(grid.beta_min), std::abs(grid.beta_max));
    const double abs_lo =
        (grid.beta_min <= 0.0 && grid.beta_max >= 0.0)
            ? 0.0
            : std::min(std::abs(grid.beta_min), std::abs(grid.beta_max));
    const double lo = std::max(abs_lo, ab - 4.0 * span);
    const double hi = std::min(abs_hi, ab + 4.0 * span);
    const auto [bx, bf] = golden_max(lo, hi);
    out.refined_max = bf;
    out.refined_argmax = (out.grid_argmax < 0.0) ? -bx : bx;
    if (out.grid_max > out.refined_max) {
        out.refined_max = out.grid_max;
        out.refined_argmax = out.grid_argmax;
    }
    return out;
}

Rotation cut_endpoint(double beta) {
    const auto r = detail::cut_time_scalar(beta);
    return geodesic_closed_form(GeodesicParam(0.0, beta), r.t1);
}

std::pair<double, double> cut_symmetry_partner(double phi0, double beta) {
    if (std::abs(beta) > detail::inv_sqrt3())
        throw std::domain_error("cut_symmetry_partner: requires beta^2 <= 1/3");
    const double t1 = detail::cut_time_scalar(beta).t1;
    // With beta' = -beta the partner phase is -beta'*t1 + phi0 + pi.  These
    // cut endpoints are angle-pi rotations, so the reversed-momentum geodesic
    // reaches the same point at the common cut time.
    return {wrap_2pi(beta * t1 + phi0 + M_PI), -beta};
}

std::vector<CutPoint> sample_cut_locus(std::size_t n, double beta_max, int jobs) {
    if (n < 1) throw std::invalid_argument("sample_cut_locus: n >= 1 required");
    // Mirror the positive half so the grid is symmetric bit for bit.
    std::vector<double> betas(n);
    for (std::size_t i = n / 2; i < n; ++i) {
        const double xi = M_PI * ((static_cast<double>(i) + 0.5) /
                                      static_cast<double>(n) -
                                  0.5);
        betas[i] = std::clamp(std::tan(xi), -beta_max, beta_max);
        if (n - 1 - i != i) betas[n - 1 - i] = -betas[i];
    }
    std::vector<double> t1(n);
    std::vector<unsigned char> br(n);
    std::vector<CutPoint> out(n);
    run_partitioned(n, jobs, [&](std::size_t b, std::size_t e) {
        kernels::active_backend().cut_time_batch(betas.data() + b, e - b, t1.data() + b,
                                                 br.data() + b);
        for (std::size_t i = b; i < e; ++i) {
            out[i].beta = betas[i];
            out[i].t1 = t1[i];
            out[i].branch = static_cast<CutBranch>(br[i]);
            out[i].endpoint = geodesic_closed_form(GeodesicParam(0.0, betas[i]), t1[i]);
        }
    });
    return out;
}

double conjugate_rank_defect(double beta) {
    const double t1 = detail::cut_time_scalar(beta).t1;
    const Rotation base = geodesic_closed_form(GeodesicParam(0.0, beta), t1);
    const double h = 1e-6;

    // Columns: d log(base^{-1} gamma(phi0, beta, t)) / d(phi0, beta, t).
    Mat3 j;
    const auto fill = [&](int col, double dphi, double dbeta, double dt) {
        const Rotation plus =
            geodesic_closed_form(GeodesicParam(dphi, beta + dbeta), t1 + dt);
        const Rotation minus =
            geodesic_closed_form(GeodesicParam(-dphi, beta - dbeta), t1 - dt);
        const LieVector d =
            (log_matrix(base.inverse().matrix() * plus.matrix(), 1e-6) -
             log_matrix(base.inverse().matrix() * minus.matrix(), 1e-6)) *
            (0.5 / h);
        j(0, col) = d.xa;
        j(1, col) = d.xb;
        j(2, col) = d.xc;
    };
    fill(0, h, 0.0, 0.0);
    fill(1, 0.0, h, 0.0);
    fill(2, 0.0, 0.0, h);

    // Smallest singular value via one-sided Jacobi on J^T J.
    Mat3 a = j.transposed() * j;
    for (int sweep = 0; sweep < 30; ++sweep) {
        for (int p = 0; p < 3; ++p)
            for (int q = p + 1; q < 3; ++q) {
                const double apq = a(p, q);
                if (std::abs(apq) < 1e-300) continue;
                const double theta = 0.5 * std::atan2(2.0 * apq, a(q, q) - a(p, p));
                const double c = std::cos(theta), s = std::sin(theta);
                Mat3 rot = Mat3::identity();
                rot(p, p) = c;
                rot(q, q) = c;
                rot(p, q) = s;
                rot(q, p) = -s;
                a = rot.transposed() * a * rot;
            }
    }
    const double ev = std::min({a(0, 0), a(1, 1), a(2, 2)});
    return std::sqrt(std::max(ev, 0.0));
}

} // namespace srso3
