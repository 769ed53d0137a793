#include "srso3/distance.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "srso3/cut_locus.hpp"
#include "srso3/kernels.hpp"
#include "srso3/parallel.hpp"

namespace srso3 {

const char* to_string(Multiplicity m) {
    switch (m) {
        case Multiplicity::Unique: return "unique";
        case Multiplicity::CutPair: return "cut-pair";
        case Multiplicity::Circle: return "circle";
    }
    return "?";
}

namespace {

constexpr double kDiameterSlack = 1e-9;

double cut_t1(double beta) { return detail::cut_time_scalar(beta).t1; }

// Solve A x = b for 3x3 A (Gaussian elimination, partial pivoting).
bool solve3(Mat3 a, Vec3 b, Vec3& x) {
    double m[3][4] = {{a(0, 0), a(0, 1), a(0, 2), b.x},
                      {a(1, 0), a(1, 1), a(1, 2), b.y},
                      {a(2, 0), a(2, 1), a(2, 2), b.z}};
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
        if (std::abs(m[piv][col]) < 1e-300) return false;
        std::swap(m[piv], m[col]);
        for (int r = 0; r < 3; ++r) {
            if (r == col) continue;
            const double f = m[r][col] / m[col][col];
            for (int cc = col; cc < 4; ++cc) m[r][cc] -= f * m[col][cc];
        }
    }
    x = {m[0][3] / m[0][0], m[1][3] / m[1][1], m[2][3] / m[2][2]};
    return true;
}

double residual_norm(const GeodesicParam& p, double t, const Rotation& g) {
    const Mat3 rel = geodesic_closed_form(p, t).matrix().transposed() * g.matrix();
    return log_matrix(rel, 1e-5).norm();
}

// ----- SO(2) targets: closed-form solution ------------------------------

// Endpoint exp(theta c) is reached exactly at the cut time of
// beta = x/sqrt(1-x^2), x = 1 - |theta|/(2 pi), with distance 2 pi sqrt(1-x^2).
DistanceResult solve_so2(double theta, const Rotation& g, double tol) {
    DistanceResult res;
    if (theta == 0.0) return res; // identity
    const double at = std::abs(theta);
    const double x = 1.0 - at / (2.0 * M_PI);
    const double root = std::sqrt((1.0 - x) * (1.0 + x));
    double beta = x / root;
    if (theta < 0.0) beta = -beta;
    const double t = 2.0 * M_PI * root;
    res.param = GeodesicParam(0.0, beta);
    res.time = t;
    res.distance = t;
    res.residual = residual_norm(res.param, t, g);
    res.multiplicity = Multiplicity::Circle;
    (void)tol;
    return res;
}

// ----- damped Gauss–Newton on log(gamma(p,t)^{-1} g) --------------------

struct GnResult {
    bool ok = false;
    double phi0 = 0.0, beta = 0.0, t = 0.0, residual = 0.0;
};

GnResult gauss_newton(const Rotation& g, double phi0, double xi, double t, double tol) {
    const auto res_vec = [&](double p0, double x, double tt) {
        const GeodesicParam p(p0, std::tan(x));
        const Mat3 rel = geodesic_closed_form(p, tt).matrix().transposed() * g.matrix();
        const LieVector lv = log_matrix(rel, 1e-5);
        return Vec3{lv.xa, lv.xb, lv.xc};
    };
    const double xi_lim = 0.5 * M_PI - 1e-9;

    const auto clamp_state = [&](double& x, double& tt) {
        x = std::clamp(x, -xi_lim, xi_lim);
        const double t1 = cut_t1(std::tan(x));
        tt = std::clamp(tt, 1e-12, t1);
    };

    clamp_state(xi, t);
    Vec3 r = res_vec(phi0, xi, t);
    double rn = r.norm();
    double lambda = 1e-8;

    for (int iter = 0; iter < 80 && rn > tol * 0.25; ++iter) {
        const double h = 1e-7;
        // numeric Jacobian, central differences
        Mat3 jt; // columns d r / d(phi0, xi, t)
        const auto put = [&](int col, const Vec3& d) {
            jt(0, col) = d.x;
            jt(1, col) = d.y;
            jt(2, col) = d.z;
        };
        put(0, (res_vec(phi0 + h, xi, t) - res_vec(phi0 - h, xi, t)) * (0.5 / h));
        put(1, (res_vec(phi0, xi + h, t) - res_vec(phi0, xi - h, t)) * (0.5 / h));
        put(2, (res_vec(phi0, xi, t + h) - res_vec(phi0, xi, t - h)) * (0.5 / h));

        const Mat3 jtj = jt.transposed() * jt;
        const Vec3 jtr = jt.transposed() * r;
        bool stepped = false;
        for (int attempt = 0; attempt < 12; ++attempt) {
            Mat3 lhs = jtj;
            for (int d = 0; d < 3; ++d) lhs(d, d) += lambda * (1.0 + jtj(d, d));
            Vec3 delta;
            if (!solve3(lhs, -1.0 * jtr, delta)) {
                lambda *= 10.0;
                continue;
            }
            double p0n = phi0 + delta.x, xin = xi + delta.y, tn = t + delta.z;
            clamp_state(xin, tn);
            const Vec3 rn_vec = res_vec(p0n, xin, tn);
            const double rnn = rn_vec.norm();
            if (rnn < rn) {
                phi0 = p0n;
                xi = xin;
                t = tn;
                r = rn_vec;
                rn = rnn;
                lambda = std::max(lambda * 0.3, 1e-14);
                stepped = true;
                break;
            }
            lambda *= 8.0;
        }
        if (!stepped) break;
    }

    GnResult out;
    out.ok = rn <= tol;
    out.phi0 = wrap_2pi(phi0);
    out.beta = std::tan(xi);
    out.t = t;
    out.residual = rn;
    return out;
}

// Gauss–Newton in (phi0, k, t) with k = beta*t.  Near the identity the
// (xi, t) chart is stiff (beta -> inf while t -> 0); in these coordinates
// t*sqrt(1+beta^2) = hypot(t, k) and the closed form stays smooth, so the
// numeric Jacobian keeps full rank down to arbitrarily small targets.
GnResult gauss_newton_small(const Rotation& g, double phi0, double k, double t,
                            double tol) {
    const auto clamp_state = [&](double& kk, double& tt) {
        tt = std::max(tt, 1e-12);
        // reachable set: hypot(t, k) <= 2*pi on the full-circle branch,
        // t <= t1(k/t) on the digon side
        const double beta = kk / tt;
        if (std::abs(beta) >= detail::inv_sqrt3()) {
            const double r = std::hypot(tt, kk);
            const double cap = 2.0 * M_PI * (1.0 - 1e-12);
            if (r > cap) {
                tt *= cap / r;
                kk *= cap / r;
            }
        } else {
            tt = std::min(tt, cut_t1(beta));
        }
    };
    const auto res_vec = [&](double p0, double kk, double tt) {
        const GeodesicParam p(p0, kk / std::max(tt, 1e-12));
        const Mat3 rel = geodesic_closed_form(p, tt).matrix().transposed() * g.matrix();
        const LieVector lv = log_matrix(rel, 1e-5);
        return Vec3{lv.xa, lv.xb, lv.xc};
    };

    clamp_state(k, t);
    Vec3 r = res_vec(phi0, k, t);
    double rn = r.norm();
    double lambda = 1e-8;

    for (int iter = 0; iter < 80 && rn > tol * 0.25; ++iter) {
        const double hs = 1e-8 * std::max(1.0, std::abs(k) + t);
        Mat3 j;
        const auto put = [&](int col, const Vec3& d) {
            j(0, col) = d.x;
            j(1, col) = d.y;
            j(2, col) = d.z;
        };
        put(0, (res_vec(phi0 + hs, k, t) - res_vec(phi0 - hs, k, t)) * (0.5 / hs));
        put(1, (res_vec(phi0, k + hs, t) - res_vec(phi0, k - hs, t)) * (0.5 / hs));
        put(2, (res_vec(phi0, k, t + hs) - res_vec(phi0, k, t - hs)) * (0.5 / hs));

        const Mat3 jtj = j.transposed() * j;
        const Vec3 jtr = j.transposed() * r;
        bool stepped = false;
        for (int attempt = 0; attempt < 12; ++attempt) {
            Mat3 lhs = jtj;
            for (int d = 0; d < 3; ++d) lhs(d, d) += lambda * (1.0 + jtj(d, d));
            Vec3 delta;
            if (!solve3(lhs, -1.0 * jtr, delta)) {
                lambda *= 10.0;
                continue;
            }
            double p0n = phi0 + delta.x, kn = k + delta.y, tn = t + delta.z;
            clamp_state(kn, tn);
            const Vec3 rv = res_vec(p0n, kn, tn);
            if (rv.norm() < rn) {
                phi0 = p0n;
                k = kn;
                t = tn;
                r = rv;
                rn = rv.norm();
                lambda = std::max(lambda * 0.3, 1e-14);
                stepped = true;
                break;
            }
            lambda *= 8.0;
        }
        if (!stepped) break;
    }

    GnResult out;
    out.ok = rn <= tol;
    out.phi0 = wrap_2pi(phi0);
    out.beta = k / std::max(t, 1e-12);
    out.t = t;
    out.residual = rn;
    return out;
}

struct Candidate {
    double phi0, beta, t, residual;
};

void consider(std::vector<Candidate>& cands, GnResult& best_attempt, const GnResult& gn) {
    if (gn.residual < best_attempt.residual) best_attempt = gn;
    if (!gn.ok) return;
    for (const auto& c : cands)
        if (std::abs(c.t - gn.t) < 1e-7 && std::abs(c.beta - gn.beta) < 1e-6 &&
            std::abs(std::remainder(c.phi0 - gn.phi0, 2.0 * M_PI)) < 1e-6)
            return; // duplicate
    cands.push_back({gn.phi0, gn.beta, gn.t, gn.residual});
}

// Shared fixed xi-grid with cached cut times.
struct XiGrid {
    std::vector<double> xi, beta, t1;
};

const XiGrid& xi_grid() {
    static const XiGrid g = [] {
        XiGrid grid;
        const std::size_t n = 96;
        grid.xi.resize(n);
        grid.beta.resize(n);
        grid.t1.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double xi =
                -0.5 * M_PI + M_PI * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
            grid.xi[i] = xi;
            grid.beta[i] = std::tan(xi);
            grid.t1[i] = cut_t1(grid.beta[i]);
        }
        return grid;
    }();
    return g;
}

// ----- invariant-first route ---------------------------------------------

// gamma_{(0,beta)}(t) entries entering the SO(2)-conjugation invariants.
void invariants_of(double beta, double t, double& g11, double& tr) {
    const auto [m, n] = mn(beta, t);
    const double cb = std::cos(beta * t), sb = std::sin(beta * t);
    g11 = 1.0 - n;
    tr = (1.0 - n) + (2.0 - n - 2.0 * beta * beta * n) * cb + 2.0 * beta * m * sb;
}

struct Inv2DSeed {
    double xi, s, h2;
};

std::vector<Candidate> invariant_route(const Rotation& g, double tol,
                                       GnResult& best_attempt) {
    const double g11 = g(0, 0);
    const double trg = g.matrix().trace();
    const XiGrid& grid = xi_grid();
    const std::size_t ns = 48;

    std::vector<Inv2DSeed> seeds;
    for (std::size_t i = 0; i < grid.xi.size(); ++i) {
        for (std::size_t k = 1; k <= ns; ++k) {
            const double s = static_cast<double>(k) / static_cast<double>(ns);
            double a, b;
            invariants_of(grid.beta[i], s * grid.t1[i], a, b);
            const double h2 = (a - g11) * (a - g11) + (b - trg) * (b - trg);
            seeds.push_back({grid.xi[i], s, h2});
        }
    }
    std::sort(seeds.begin(), seeds.end(),
              [](const Inv2DSeed& a, const Inv2DSeed& b) { return a.h2 < b.h2; });

    std::vector<Candidate> cands;
    int used = 0;
    std::vector<std::pair<double, double>> taken;
    for (const auto& seed : seeds) {
        if (used >= 8) break;
        bool close = false;
        for (const auto& [x, s] : taken)
            if (std::abs(x - seed.xi) < 0.09 && std::abs(s - seed.s) < 0.08) close = true;
        if (close) continue;
        taken.emplace_back(seed.xi, seed.s);
        ++used;

        // 2D Newton on (xi, s) -> (g11, trace) mismatch.
        double xi = seed.xi, s = seed.s;
        const double xi_lim = 0.5 * M_PI - 1e-9;
        bool converged = false;
        for (int iter = 0; iter < 60; ++iter) {
            const double beta = std::tan(xi);
            const double t1 = cut_t1(beta);
            double a, b;
            invariants_of(beta, s * t1, a, b);
            const double f0 = a - g11, f1 = b - trg;
            if (f0 * f0 + f1 * f1 < 1e-26) {
                converged = true;
                break;
            }
            const double h = 1e-7;
            const auto eval = [&](double x, double ss, double& fa, double& fb) {
                const double bb = std::tan(std::clamp(x, -xi_lim, xi_lim));
                const double tt1 = cut_t1(bb);
                double aa, bbv;
                invariants_of(bb, std::clamp(ss, 1e-9, 1.0) * tt1, aa, bbv);
                fa = aa - g11;
                fb = bbv - trg;
            };
            double fa1, fb1, fa2, fb2, fa3, fb3, fa4, fb4;
            eval(xi + h, s, fa1, fb1);
            eval(xi - h, s, fa2, fb2);
            eval(xi, s + h, fa3, fb3);
            eval(xi, s - h, fa4, fb4);
            const double j00 = (fa1 - fa2) / (2 * h), j01 = (fa3 - fa4) / (2 * h);
            const double j10 = (fb1 - fb2) / (2 * h), j11 = (fb3 - fb4) / (2 * h);
            const double det = j00 * j11 - j01 * j10;
            if (std::abs(det) < 1e-14) break;
            double dxi = (-f0 * j11 + f1 * j01) / det;
            double ds = (-j00 * f1 + j10 * f0) / det;
            // damped step, keep inside the box
            const double damp = std::min(1.0, 0.2 / std::max(std::abs(dxi), std::abs(ds)));
            xi = std::clamp(xi + damp * dxi, -xi_lim, xi_lim);
            s = std::clamp(s + damp * ds, 1e-9, 1.0);
            if (std::abs(damp * dxi) < 1e-13 && std::abs(damp * ds) < 1e-13) {
                converged = true;
                break;
            }
        }
        if (!converged) continue;

        const double beta = std::tan(xi);
        const double t = s * cut_t1(beta);
        // phi0 alignment: rotate the first column's (y, z) phase onto the target's.
        const auto [m, n] = mn(beta, t);
        const double cnorm = std::hypot(m, beta * n);
        const double tnorm = std::hypot(g(1, 0), g(2, 0));
        if (cnorm < 1e-9 || tnorm < 1e-9) continue; // SO(2)-like, handled elsewhere
        const double phi0 =
            std::atan2(g(2, 0), g(1, 0)) - std::atan2(beta * n, m);
        // verify the full matrix, polish with a short Gauss–Newton run
        consider(cands, best_attempt, gauss_newton(g, wrap_2pi(phi0), xi, t, tol));
    }
    return cands;
}

// ----- near-identity route -------------------------------------------------

// Seeds gauss_newton_small over the vertical winding k and the path length t.
// Only used for targets close to the identity, where the generic charts are
// ill-conditioned.
std::vector<Candidate> small_target_route(const Rotation& g, double tol,
                                          GnResult& best_attempt) {
    const LieVector v = log_matrix(g.matrix(), 1e-6);
    const double hnorm = std::hypot(v.xa, v.xb);
    const double tscale = hnorm + 2.0 * std::sqrt(M_PI * std::abs(v.xc));
    if (!(tscale > 0.0)) return {};

    const std::size_t nk = 33, nt = 14, nphi = 12;
    std::vector<double> phis, betas, ts;
    phis.reserve(nk * nt * nphi);
    betas.reserve(nk * nt * nphi);
    ts.reserve(nk * nt * nphi);
    for (std::size_t ik = 0; ik < nk; ++ik) {
        const double k = -2.0 * M_PI + 4.0 * M_PI * (static_cast<double>(ik) + 0.5) /
                                           static_cast<double>(nk);
        for (std::size_t it = 0; it < nt; ++it) {
            const double t = tscale * (0.3 + 2.2 * static_cast<double>(it) /
                                                 static_cast<double>(nt - 1));
            if (std::hypot(t, k) >= 2.0 * M_PI) continue;
            for (std::size_t ip = 0; ip < nphi; ++ip) {
                phis.push_back(2.0 * M_PI * static_cast<double>(ip) /
                               static_cast<double>(nphi));
                betas.push_back(k / t);
                ts.push_back(t);
            }
        }
    }
    if (phis.empty()) return {};

    std::vector<double> gap(phis.size());
    kernels::active_backend().frobenius_gap_batch(phis.data(), betas.data(), ts.data(),
                                                  phis.size(), g.matrix(), gap.data());
    std::vector<std::size_t> order(phis.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    const std::size_t top = std::min<std::size_t>(200, order.size());
    std::partial_sort(order.begin(), order.begin() + top, order.end(),
                      [&](std::size_t a, std::size_t b) { return gap[a] < gap[b]; });

    std::vector<Candidate> cands;
    std::vector<std::array<double, 2>> taken;
    int used = 0;
    for (std::size_t oi = 0; oi < top && used < 8; ++oi) {
        const std::size_t i = order[oi];
        const double k = betas[i] * ts[i];
        bool close = false;
        for (const auto& tk : taken)
            if (std::abs(tk[0] - k) < 0.4 &&
                std::abs(std::remainder(tk[1] - phis[i], 2.0 * M_PI)) < 0.6)
                close = true;
        if (close) continue;
        taken.push_back({k, phis[i]});
        ++used;
        consider(cands, best_attempt, gauss_newton_small(g, phis[i], k, ts[i], tol));
    }
    return cands;
}

// ----- full 3-parameter route --------------------------------------------

std::vector<Candidate> full_route(const Rotation& g, double tol, GnResult& best_attempt) {
    const XiGrid& grid = xi_grid();
    const std::size_t nphi = 48, ns = 32;
    const std::size_t total = nphi * grid.xi.size() * ns;

    std::vector<double> phis(total), betas(total), ts(total), gap(total);
    std::size_t idx = 0;
    for (std::size_t ip = 0; ip < nphi; ++ip) {
        const double phi0 = 2.0 * M_PI * static_cast<double>(ip) / static_cast<double>(nphi);
        for (std::size_t ix = 0; ix < grid.xi.size(); ++ix) {
            for (std::size_t is = 1; is <= ns; ++is) {
                phis[idx] = phi0;
                betas[idx] = grid.beta[ix];
                ts[idx] = grid.t1[ix] * static_cast<double>(is) / static_cast<double>(ns);
                ++idx;
            }
        }
    }
    kernels::active_backend().frobenius_gap_batch(phis.data(), betas.data(), ts.data(),
                                                  total, g.matrix(), gap.data());

    std::vector<std::size_t> order(total);
    for (std::size_t i = 0; i < total; ++i) order[i] = i;
    std::partial_sort(order.begin(), order.begin() + std::min<std::size_t>(400, total),
                      order.end(),
                      [&](std::size_t a, std::size_t b) { return gap[a] < gap[b]; });

    std::vector<Candidate> cands;
    std::vector<std::array<double, 3>> taken;
    int used = 0;
    for (std::size_t oi = 0; oi < std::min<std::size_t>(400, total) && used < 10; ++oi) {
        const std::size_t i = order[oi];
        const double xi = std::atan(betas[i]);
        bool close = false;
        for (const auto& tk : taken)
            if (std::abs(std::remainder(tk[0] - phis[i], 2.0 * M_PI)) < 0.5 &&
                std::abs(tk[1] - xi) < 0.12 && std::abs(tk[2] - ts[i]) < 0.3)
                close = true;
        if (close) continue;
        taken.push_back({phis[i], xi, ts[i]});
        ++used;
        consider(cands, best_attempt, gauss_newton(g, phis[i], xi, ts[i], tol));
    }
    return cands;
}

DistanceResult finish(std::vector<Candidate> cands, const GnResult& best_attempt,
                      const char* route) {
    if (cands.empty()) {
        DistanceResult best;
        if (best_attempt.residual < 1e300) {
            best.param = GeodesicParam(best_attempt.phi0, best_attempt.beta);
            best.time = best_attempt.t;
            best.distance = best_attempt.t;
            best.residual = best_attempt.residual;
        }
        throw NoConvergence(std::string("sr_log: no candidate converged (") + route + ")",
                            best);
    }
    std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
        return (a.t != b.t) ? a.t < b.t : a.residual < b.residual;
    });
    const Candidate& c = cands.front();

    DistanceResult res;
    res.param = GeodesicParam(c.phi0, c.beta);
    res.time = c.t;
    res.distance = c.t;
    res.residual = c.residual;
    const double t1 = cut_t1(c.beta);
    if (c.beta * c.beta <= 1.0 / 3.0 + 1e-12 && std::abs(c.t - t1) <= 1e-7 * std::max(1.0, t1))
        res.multiplicity = Multiplicity::CutPair;
    else
        res.multiplicity = Multiplicity::Unique;

    if (res.distance > diameter() + kDiameterSlack)
        throw NoConvergence("sr_log: candidate exceeds the diameter bound", res);
    return res;
}

bool so2_like(const Rotation& g, double tol) {
    const double dev = std::max({std::abs(g(0, 0) - 1.0), std::abs(g(1, 0)),
                                 std::abs(g(2, 0)), std::abs(g(0, 1)), std::abs(g(0, 2))});
    return dev <= tol;
}

} // namespace

DistanceResult sr_log(const Rotation& g, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("sr_log: tol must be positive");

    if (g.max_abs_diff(Rotation::identity()) < 1e-14) return DistanceResult{};

    if (so2_like(g, tol)) {
        const double theta = std::atan2(g(2, 1), g(1, 1));
        DistanceResult res = solve_so2(theta, g, tol);
        if (res.residual <= tol) return res;
        // fall through: target only looked like SO(2)
    }

    GnResult best_attempt;
    best_attempt.residual = 1e300;

    // near-identity targets live where the generic charts degenerate
    if (rotation_distance(Rotation::identity(), g) < 0.02) {
        std::vector<Candidate> cands = small_target_route(g, tol, best_attempt);
        if (!cands.empty()) return finish(std::move(cands), best_attempt, "small");
    }

    std::vector<Candidate> cands = invariant_route(g, tol, best_attempt);
    if (!cands.empty()) return finish(std::move(cands), best_attempt, "invariant");
    cands = full_route(g, tol, best_attempt);
    if (cands.empty()) cands = small_target_route(g, tol, best_attempt);

    // near-miss rescue: restart the well-conditioned chart from jittered
    // copies of the best attempt
    if (cands.empty() && best_attempt.residual < 1e4 * tol) {
        const GnResult base = best_attempt;
        const double ts = std::max(base.t, 1e-3);
        for (int j = 0; j < 18 && cands.empty(); ++j) {
            const double f = 1.0 + j / 6;
            const double dp = ((j % 3) - 1) * 2e-3 * f;
            const double dk = (((j / 3) % 3) - 1) * 2e-3 * ts * f;
            const double dt = (((j / 9) % 2) * 2 - 1) * 1e-3 * ts * f;
            consider(cands, best_attempt,
                     gauss_newton_small(g, base.phi0 + dp, base.beta * base.t + dk,
                                        std::max(base.t + dt, 1e-9), tol));
        }
    }
    return finish(std::move(cands), best_attempt, "full");
}

DistanceResult sr_log_full(const Rotation& g, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("sr_log_full: tol must be positive");
    if (g.max_abs_diff(Rotation::identity()) < 1e-14) return DistanceResult{};
    if (so2_like(g, tol)) {
        const double theta = std::atan2(g(2, 1), g(1, 1));
        DistanceResult res = solve_so2(theta, g, tol);
        if (res.residual <= tol) return res;
    }
    GnResult best_attempt;
    best_attempt.residual = 1e300;
    return finish(full_route(g, tol, best_attempt), best_attempt, "full");
}

double distance(const Rotation& g) { return sr_log(g).distance; }

// ----- brute-force oracle -------------------------------------------------

namespace {

struct OraclePath {
    std::vector<double> theta, len;
};

double splitmix(std::uint64_t& s) {
    s += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    z = z ^ (z >> 31);
    return static_cast<double>(z >> 11) * 0x1.0p-53;
}

Mat3 horizontal_arc(double theta, double len) {
    return exp(LieVector{len * std::cos(theta), len * std::sin(theta), 0.0}).matrix();
}

double endpoint_gap(const Mat3& endpoint, const Mat3& g) {
    return log_matrix(endpoint.transposed() * g, 1e-5).norm();
}

struct RestartOutcome {
    double length = 1e300;
    double mismatch = 1e300;
};

RestartOutcome run_restart(const Rotation& g, int nseg, std::uint64_t seed) {
    const Mat3& target = g.matrix();
    const std::size_t n = static_cast<std::size_t>(nseg);

    std::uint64_t state = seed;
    OraclePath path{std::vector<double>(n), std::vector<double>(n)};

    const double base = log_matrix(target, 1e-5).norm();
    const double total0 = std::clamp(base, 0.4, 2.0 * M_PI) * (0.8 + 1.0 * splitmix(state));
    const bool ramp = splitmix(state) < 0.6;
    const double th0 = 2.0 * M_PI * splitmix(state);
    // minimizing geodesics sweep their heading by beta*t in (-2*pi, 2*pi);
    // the ramp family must reach that range for the descent to start in the
    // right basin
    const double dth =
        (splitmix(state) - 0.5) * 4.0 * M_PI / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        path.theta[i] = ramp ? th0 + dth * static_cast<double>(i)
                             : 2.0 * M_PI * splitmix(state);
        path.len[i] = total0 / static_cast<double>(n);
    }

    std::vector<Mat3> seg(n), suffix(n + 1);
    for (std::size_t i = 0; i < n; ++i) seg[i] = horizontal_arc(path.theta[i], path.len[i]);

    double total_len = total0;
    const auto objective = [&](double mismatch, double ltot, double mu) {
        return ltot + mu * mismatch * mismatch;
    };

    double cur_mismatch = 0.0;
    {
        Mat3 e = Mat3::identity();
        for (std::size_t i = 0; i < n; ++i) e = e * seg[i];
        cur_mismatch = endpoint_gap(e, target);
    }

    const double mus[] = {30.0, 3e2, 3e3, 3e4, 3e5, 3e6, 3e7};
    for (const double mu : mus) {
        double h_theta = 0.5, h_len = 0.12;
        double cur_obj = objective(cur_mismatch, total_len, mu);
        for (int sweep = 0; sweep < 64; ++sweep) {
            bool improved = false;
            suffix[n] = Mat3::identity();
            for (std::size_t i = n; i-- > 0;) suffix[i] = seg[i] * suffix[i + 1];
            Mat3 prefix = Mat3::identity();

            for (std::size_t i = 0; i < n; ++i) {
                for (int coord = 0; coord < 2; ++coord) {
                    const double h = (coord == 0) ? h_theta : h_len;
                    double best_v = (coord == 0) ? path.theta[i] : path.len[i];
                    double best_obj = cur_obj;
                    double best_mis = cur_mismatch, best_tot = total_len;
                    bool moved = false;
                    for (const double dir : {+1.0, -1.0}) {
                        double th = path.theta[i], ln = path.len[i];
                        if (coord == 0)
                            th += dir * h;
                        else
                            ln = std::max(0.0, ln + dir * h);
                        const double tot = total_len - path.len[i] + ln;
                        const Mat3 trial = prefix * horizontal_arc(th, ln) * suffix[i + 1];
                        const double mis = endpoint_gap(trial, target);
                        const double obj = objective(mis, tot, mu);
                        if (obj < best_obj - 1e-15) {
                            best_obj = obj;
                            best_v = (coord == 0) ? th : ln;
                            best_mis = mis;
                            best_tot = tot;
                            moved = true;
                        }
                    }
                    if (moved) {
                        if (coord == 0)
                            path.theta[i] = best_v;
                        else
                            path.len[i] = best_v;
                        seg[i] = horizontal_arc(path.theta[i], path.len[i]);
                        cur_obj = best_obj;
                        cur_mismatch = best_mis;
                        total_len = best_tot;
                        improved = true;
                    }
                }
                prefix = prefix * seg[i];
            }
            if (!improved) {
                h_theta *= 0.5;
                h_len *= 0.5;
                if (h_theta < 3e-9 && h_len < 3e-9) break;
            }
        }
    }

    return {total_len, cur_mismatch};
}

} // namespace

BruteForceResult brute_force_distance_detailed(const Rotation& g, int segments,
                                               int budget, std::uint64_t seed,
                                               int jobs) {
    if (segments < 4 || segments > 32)
        throw std::invalid_argument("brute_force_distance: segments must be in [4, 32]");
    if (budget < 1) throw std::invalid_argument("brute_force_distance: budget >= 1");

    std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(budget));
    run_partitioned(static_cast<std::size_t>(budget), jobs,
                    [&](std::size_t b, std::size_t e) {
                        for (std::size_t r = b; r < e; ++r) {
                            std::uint64_t s = seed ^ (0xD1342543DE82EF95ULL * (r + 1));
                            outcomes[r] = run_restart(g, segments, s);
                        }
                    });

    BruteForceResult best;
    best.length = 1e300;
    best.mismatch = 1e300;
    for (const auto& oc : outcomes) {
        const bool ok = oc.mismatch <= 1e-6;
        if (ok && (!best.feasible || oc.length < best.length)) {
            best.length = oc.length;
            best.mismatch = oc.mismatch;
            best.feasible = true;
        } else if (!best.feasible && oc.mismatch < best.mismatch) {
            best.length = oc.length;
            best.mismatch = oc.mismatch;
        }
    }
    return best;
}

double brute_force_distance(const Rotation& g, int segments, int budget,
                            std::uint64_t seed) {
    return brute_force_distance_detailed(g, segments, budget, seed).length;
}

} // namespace srso3
