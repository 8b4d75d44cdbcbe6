#include "volap/exterior.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "volap/quadrature.hpp"

namespace volap::exterior {

using geometry::Domain;
using geometry::Point;
using geometry::Region;
using rbf::Family;
using rbf::RbfKernel;

namespace {

// kernel evaluation specialized for the hot loops
struct FastKernel {
    Family fam;
    double beta, eps;
    int m;
    explicit FastKernel(const RbfKernel& k)
        : fam(k.family), beta(k.beta), eps(k.epsilon), m(k.m) {}
    double operator()(double r) const {
        const double rho = eps * r;
        switch (fam) {
            case Family::gaussian: return std::exp(-rho * rho);
            case Family::gimq: {
                const double w = 1.0 + rho * rho;
                if (beta == 1.0) return 1.0 / w;
                if (beta == 1.5) return 1.0 / (w * std::sqrt(w));
                if (beta == 2.0) return 1.0 / (w * w);
                return std::pow(w, -beta);
            }
            case Family::bessel:
                return rbf::kernel_value(RbfKernel{fam, beta, m, eps}, r);
        }
        return 0.0;
    }
    // decreasing bound |phi(r')| <= env(r) for r' >= r
    double envelope(double r) const {
        switch (fam) {
            case Family::gaussian: return std::exp(-eps * eps * r * r);
            case Family::gimq: return std::pow(1.0 + eps * eps * r * r, -beta);
            case Family::bessel: {
                const double s = 0.5 * m;
                const double rho = std::max(eps * r, 1e-10);
                return std::sqrt(2.0 / M_PI) * std::pow(rho, 0.5 - s);
            }
        }
        return 1.0;
    }
};

quad::QuadOptions make_opts(const QuadratureControl& ctl, double scale_hint) {
    quad::QuadOptions o;
    o.rel_tol = ctl.rel_tol;
    o.abs_tol = std::max(ctl.abs_tol, ctl.rel_tol * scale_hint * 0.5);
    o.max_panels = ctl.max_subdivisions;
    return o;
}

void require_interior(const Domain& dom, const Point& x, const char* who) {
    if (dom.classify(x) != Region::interior)
        throw std::invalid_argument(std::string(who) +
                                    ": x must be strictly interior");
}

// ----------------------------------------------------------------- d = 1

template <class F>
void integrate_complement_1d(const Domain& dom, bool oscillatory, int m,
                             const QuadratureControl& ctl, double scale_hint,
                             F&& f, double* out) {
    const quad::QuadOptions o = make_opts(ctl, scale_hint);
    const double a = dom.lo[0], b = dom.hi[0];
    if (oscillatory) {
        const double block0 = std::max(1.0, 0.25 * (b - a));
        quad::integrate_blocks_down_batch(f, m, a, o, out, block0);
        quad::integrate_blocks_up_batch(f, m, b, o, out, block0);
    } else {
        quad::integrate_half_line_down_batch(f, m, a, o, out);
        quad::integrate_half_line_up_batch(f, m, b, o, out);
    }
}

// ----------------------------------------------------------------- d = 2

struct Rect {
    double x0, x1, y0, y1;
    bool empty() const { return x0 >= x1 || y0 >= y1; }
};

// L-shell tiles at geometric level j around the bounding box
std::vector<Rect> level_tiles(const Domain& dom, double base, int j) {
    const double X1 = dom.lo[0], X2 = dom.hi[0];
    const double Y1 = dom.lo[1], Y2 = dom.hi[1];
    const double o0 = base * (std::pow(2.0, j) - 1.0);
    const double o1 = base * (std::pow(2.0, j + 1) - 1.0);
    std::vector<Rect> t;
    t.push_back({X1, X2, Y2 + o0, Y2 + o1});            // N
    t.push_back({X1, X2, Y1 - o1, Y1 - o0});            // S
    t.push_back({X1 - o1, X1 - o0, Y1, Y2});            // W
    t.push_back({X2 + o0, X2 + o1, Y1, Y2});            // E
    t.push_back({X2 + o0, X2 + o1, Y2, Y2 + o1});       // NE outer
    t.push_back({X2, X2 + o0, Y2 + o0, Y2 + o1});       // NE inner
    t.push_back({X1 - o1, X1 - o0, Y2, Y2 + o1});       // NW outer
    t.push_back({X1 - o0, X1, Y2 + o0, Y2 + o1});       // NW inner
    t.push_back({X2 + o0, X2 + o1, Y1 - o1, Y1});       // SE outer
    t.push_back({X2, X2 + o0, Y1 - o1, Y1 - o0});       // SE inner
    t.push_back({X1 - o1, X1 - o0, Y1 - o1, Y1});       // SW outer
    t.push_back({X1 - o0, X1, Y1 - o1, Y1 - o0});       // SW inner
    std::erase_if(t, [](const Rect& r) { return r.empty(); });
    return t;
}

// finite complement parts inside the bounding box (the channel notches)
std::vector<Rect> finite_extras(const Domain& dom) {
    if (dom.kind != Domain::Kind::notched_channel) return {};
    return {{-1.0, 1.0, 0.5, 1.0}, {-1.0, 1.0, -1.0, -0.5}};
}

// F: void(double xx, double yy, double* out)
template <class F, class EnvF>
void integrate_complement_2d(const Domain& dom, int m,
                             const QuadratureControl& ctl, double scale_hint,
                             F&& f, EnvF&& tail_envelope, double* out) {
    quad::QuadOptions o = make_opts(ctl, scale_hint);
    o.max_panels = std::max(64, ctl.max_subdivisions / 8);
    std::vector<double> total(m, 0.0), ring(m);

    for (const Rect& r : finite_extras(dom)) {
        std::fill(ring.begin(), ring.end(), 0.0);
        quad::integrate_box_batch(f, m, r.x0, r.x1, r.y0, r.y1, o, ring.data());
        for (int i = 0; i < m; ++i) total[i] += ring[i];
    }

    const double base = 0.25 * dom.diameter();
    int quiet = 0;
    for (int j = 0; j < 60; ++j) {
        const double offset = base * (std::pow(2.0, j) - 1.0);
        if (ctl.truncation_radius > 0.0 && offset >= ctl.truncation_radius) {
            // decay-envelope remainder beyond the truncation radius
            bool ok = true;
            for (int i = 0; i < m; ++i) {
                const double tail = tail_envelope(offset, i);
                if (tail > std::max(o.abs_tol,
                                    ctl.rel_tol * std::fabs(total[i])) * 8.0)
                    ok = false;
            }
            if (!ok)
                throw ConvergenceError(
                    "exterior: tail bound exceeds tolerance at the "
                    "truncation radius");
            for (int i = 0; i < m; ++i)
                if (double tail = tail_envelope(offset, i); tail > o.abs_tol)
                    total[i] += tail;
            for (int i = 0; i < m; ++i) out[i] += total[i];
            return;
        }
        std::fill(ring.begin(), ring.end(), 0.0);
        for (const Rect& r : level_tiles(dom, base, j))
            quad::integrate_box_batch(f, m, r.x0, r.x1, r.y0, r.y1, o,
                                      ring.data());
        bool small = true;
        for (int i = 0; i < m; ++i) {
            total[i] += ring[i];
            if (std::fabs(ring[i]) >
                std::max(o.abs_tol, ctl.rel_tol * std::fabs(total[i])))
                small = false;
        }
        if (small) {
            if (++quiet >= 2) {
                for (int i = 0; i < m; ++i) out[i] += total[i];
                return;
            }
        } else {
            quiet = 0;
        }
    }
    throw ConvergenceError("exterior: ring tiling did not converge");
}

double scale_hint_kernel(const Domain& dom, const Point& x, double alpha) {
    // crude magnitude of the integral: weight ~ dist^{-alpha} at the
    // nearest boundary times an O(1) kernel
    double dist = 1.0;
    if (dom.d == 1)
        dist = std::min(x[0] - dom.lo[0], dom.hi[0] - x[0]);
    else {
        dist = std::min({x[0] - dom.lo[0], dom.hi[0] - x[0],
                         x[1] - dom.lo[1], dom.hi[1] - x[1]});
        if (dom.kind == Domain::Kind::notched_channel) dist = std::min(dist, 0.5);
    }
    dist = std::max(dist, 1e-3);
    return std::pow(dist, -alpha) / alpha;
}

}  // namespace

void exterior_kernel_integral_batch(const Domain& dom, const RbfKernel& k,
                                    std::span<const Point> centers,
                                    const Point& x, double alpha,
                                    const QuadratureControl& ctl,
                                    std::span<double> out) {
    require_interior(dom, x, "exterior_kernel_integral");
    const int m = static_cast<int>(centers.size());
    if (static_cast<int>(out.size()) != m)
        throw std::invalid_argument("exterior batch: out size mismatch");
    std::fill(out.begin(), out.end(), 0.0);
    const FastKernel phi(k);
    const double hint = scale_hint_kernel(dom, x, alpha);

    if (dom.d == 1) {
        const double x0 = x[0];
        std::vector<double> cx(m);
        for (int i = 0; i < m; ++i) cx[i] = centers[i][0];
        auto f = [&](double y, double* v) {
            const double w = std::pow(std::fabs(x0 - y), -1.0 - alpha);
            for (int i = 0; i < m; ++i) v[i] = phi(std::fabs(y - cx[i])) * w;
        };
        integrate_complement_1d(dom, k.family == Family::bessel, m, ctl, hint,
                                f, out.data());
        return;
    }

    std::vector<double> cx(m), cy(m);
    for (int i = 0; i < m; ++i) {
        cx[i] = centers[i][0];
        cy[i] = centers[i][1];
    }
    auto f = [&](double xx, double yy, double* v) {
        const double dx = xx - x[0], dy = yy - x[1];
        const double dist2 = dx * dx + dy * dy;
        const double w = std::pow(dist2, -0.5 * (2.0 + alpha));
        for (int i = 0; i < m; ++i) {
            const double ex = xx - cx[i], ey = yy - cy[i];
            v[i] = phi(std::sqrt(ex * ex + ey * ey)) * w;
        }
    };
    auto tail = [&](double offset, int) {
        return phi.envelope(offset) * 2.0 * M_PI * std::pow(offset, -alpha) /
               alpha;
    };
    integrate_complement_2d(dom, m, ctl, hint, f, tail, out.data());
}

double exterior_kernel_integral(const Domain& dom, const RbfKernel& k,
                                const Point& center, const Point& x,
                                double alpha, const QuadratureControl& ctl) {
    double out = 0.0;
    exterior_kernel_integral_batch(dom, k, std::span<const Point>(&center, 1),
                                   x, alpha, ctl, std::span<double>(&out, 1));
    return out;
}

double exterior_data_integral(
    const Domain& dom, const std::function<double(const Point&)>& g,
    const Point& x, double alpha, const QuadratureControl& ctl) {
    if (!g) return 0.0;  // literal zero exterior data
    require_interior(dom, x, "exterior_data_integral");
    double out = 0.0;
    const double hint = scale_hint_kernel(dom, x, alpha);

    if (dom.d == 1) {
        const double x0 = x[0];
        auto f = [&](double y, double* v) {
            v[0] = g(Point{y, 0.0}) *
                   std::pow(std::fabs(x0 - y), -1.0 - alpha);
        };
        // generic data may oscillate: always sum in blocks
        integrate_complement_1d(dom, /*oscillatory=*/true, 1, ctl, hint, f,
                                &out);
        return out;
    }

    auto f = [&](double xx, double yy, double* v) {
        const double dx = xx - x[0], dy = yy - x[1];
        const double w = std::pow(dx * dx + dy * dy, -0.5 * (2.0 + alpha));
        v[0] = g(Point{xx, yy}) * w;
    };
    auto tail = [&](double offset, int) {
        // sample |g| on the ring to bound the remainder
        double genv = 0.0;
        for (int s = 0; s < 16; ++s) {
            const double th = 2.0 * M_PI * s / 16.0;
            const Point p{x[0] + offset * std::cos(th),
                          x[1] + offset * std::sin(th)};
            genv = std::max(genv, std::fabs(g(p)));
        }
        return 2.0 * genv * 2.0 * M_PI * std::pow(offset, -alpha) / alpha;
    };
    integrate_complement_2d(dom, 1, ctl, hint, f, tail, &out);
    return out;
}

}  // namespace volap::exterior
