#pragma once

#include <cmath>
#include <cstddef>
#include <deque>
#include <queue>
#include <string>
#include <vector>

#include "volap/common.hpp"

// Adaptive Gauss-Kronrod (G7,K15) quadrature.  Scalar and batched variants
// share the same panel machinery; the batched form evaluates a family of
// integrands at common nodes and refines on the worst component, which is
// what the exterior-integral assembly loops need.

namespace volap::quad {

struct QuadOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    int max_panels = 20000;
};

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    int panels = 0;
};

namespace detail {

// Kronrod-15 abscissae (outer to center) and weights; Gauss-7 weights sit
// on the odd-index nodes.
constexpr double kXgk[8] = {
    0.991455371120812639207, 0.949107912342758524526,
    0.864864423359769072789, 0.741531185599394439864,
    0.586087235467691130295, 0.405845151377397166907,
    0.207784955007898467601, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529224964, 0.063092092629978553291,
    0.104790010322250183839, 0.140653259715525918745,
    0.169004726639267902827, 0.190350578064785409913,
    0.204432940075298892414, 0.209482141084727828013};
constexpr double kWg[4] = {
    0.129484966168869693271, 0.279705391489276667901,
    0.381830050505118944950, 0.417959183673469387755};

}  // namespace detail

// One K15/G7 panel on [a, b].
template <class F>
inline void gk15(F&& f, double a, double b, double& k15, double& err) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double k = detail::kWgk[7] * fc;
    double g = detail::kWg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = h * detail::kXgk[i];
        const double fv = f(c - dx) + f(c + dx);
        k += detail::kWgk[i] * fv;
        if (i % 2 == 1) g += detail::kWg[i / 2] * fv;
    }
    k15 = k * h;
    err = std::fabs((k - g) * h);
}

template <class F>
QuadResult integrate_adaptive(F&& f, double a, double b, const QuadOptions& o) {
    if (a == b) return {0.0, 0.0, 0};
    struct Panel {
        double a, b, val, err;
        bool operator<(const Panel& other) const { return err < other.err; }
    };
    std::priority_queue<Panel> heap;
    double total = 0.0, toterr = 0.0;
    auto push = [&](double lo, double hi) {
        Panel p{lo, hi, 0.0, 0.0};
        gk15(f, lo, hi, p.val, p.err);
        total += p.val;
        toterr += p.err;
        heap.push(p);
    };
    push(a, b);
    int panels = 1;
    while (toterr > std::max(o.abs_tol, o.rel_tol * std::fabs(total))) {
        if (panels >= o.max_panels)
            throw ConvergenceError("quad: panel budget exhausted (" +
                                   std::to_string(o.max_panels) + ")");
        Panel worst = heap.top();
        heap.pop();
        total -= worst.val;
        toterr -= worst.err;
        const double mid = 0.5 * (worst.a + worst.b);
        push(worst.a, mid);
        push(mid, worst.b);
        ++panels;
    }
    return {total, toterr, panels};
}

// Integral over [a, +inf) via y = a + t/(1-t).  Only sensible when the
// integrand decays monotonically enough that the mapped function is smooth
// near t = 1 (Gaussian / algebraic kernels; not oscillatory ones).
template <class F>
QuadResult integrate_half_line_up(F&& f, double a, const QuadOptions& o) {
    auto mapped = [&f, a](double t) {
        const double om = 1.0 - t;
        const double y = a + t / om;
        return f(y) / (om * om);
    };
    return integrate_adaptive(mapped, 0.0, 1.0, o);
}

// Integral over (-inf, a].
template <class F>
QuadResult integrate_half_line_down(F&& f, double a, const QuadOptions& o) {
    auto flipped = [&f, a](double y) { return f(2.0 * a - y); };
    return integrate_half_line_up(flipped, a, o);
}

// Integral over [a, +inf) by geometrically growing blocks.  Works for
// oscillatory decaying integrands: each block is resolved adaptively and
// summation stops once two consecutive blocks fall below tolerance.
template <class F>
QuadResult integrate_blocks_up(F&& f, double a, const QuadOptions& o,
                               double block0 = 1.0, double growth = 2.0,
                               int max_blocks = 64) {
    double total = 0.0, toterr = 0.0;
    double lo = a, len = block0;
    int quiet = 0, panels = 0;
    for (int j = 0; j < max_blocks; ++j) {
        QuadOptions local = o;
        local.abs_tol = std::max(o.abs_tol,
                                 o.rel_tol * std::fabs(total)) / 8.0;
        const QuadResult r = integrate_adaptive(f, lo, lo + len, local);
        total += r.value;
        toterr += r.error;
        panels += r.panels;
        const double cutoff = std::max(o.abs_tol, o.rel_tol * std::fabs(total));
        if (std::fabs(r.value) <= cutoff) {
            if (++quiet >= 2) return {total, toterr, panels};
        } else {
            quiet = 0;
        }
        lo += len;
        len *= growth;
    }
    throw ConvergenceError("quad: tail blocks did not converge");
}

template <class F>
QuadResult integrate_blocks_down(F&& f, double a, const QuadOptions& o,
                                 double block0 = 1.0, double growth = 2.0,
                                 int max_blocks = 64) {
    auto flipped = [&f, a](double y) { return f(2.0 * a - y); };
    return integrate_blocks_up(flipped, a, o, block0, growth, max_blocks);
}

// ---------------------------------------------------------------------------
// Batched variants.  F has signature void(double y, double* out) and fills
// m component values; refinement is driven by the worst component.

template <class F>
void gk15_batch(F&& f, int m, double a, double b, std::vector<double>& val,
                std::vector<double>& err, std::vector<double>& work) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    val.assign(m, 0.0);
    std::vector<double>& g = err;  // reuse as Gauss accumulator first
    g.assign(m, 0.0);
    work.resize(m);
    f(c, work.data());
    for (int i = 0; i < m; ++i) {
        val[i] = detail::kWgk[7] * work[i];
        g[i] = detail::kWg[3] * work[i];
    }
    std::vector<double> work2(m);
    for (int i = 0; i < 7; ++i) {
        const double dx = h * detail::kXgk[i];
        f(c - dx, work.data());
        f(c + dx, work2.data());
        for (int j = 0; j < m; ++j) {
            const double fv = work[j] + work2[j];
            val[j] += detail::kWgk[i] * fv;
            if (i % 2 == 1) g[j] += detail::kWg[i / 2] * fv;
        }
    }
    for (int j = 0; j < m; ++j) {
        err[j] = std::fabs((val[j] - g[j]) * h);
        val[j] *= h;
    }
}

// Adds the integrals over [a, b] of the m components into accum[0..m).
template <class F>
void integrate_adaptive_batch(F&& f, int m, double a, double b,
                              const QuadOptions& o, double* accum) {
    if (a == b) return;
    struct Panel {
        double a, b, badness;
        std::vector<double> val, err;
    };
    auto cmp = [](const Panel& x, const Panel& y) {
        return x.badness < y.badness;
    };
    std::priority_queue<Panel, std::vector<Panel>, decltype(cmp)> heap(cmp);
    std::vector<double> total(m, 0.0), toterr(m, 0.0), work;
    auto push = [&](double lo, double hi) {
        Panel p;
        p.a = lo;
        p.b = hi;
        gk15_batch(f, m, lo, hi, p.val, p.err, work);
        p.badness = 0.0;
        for (int j = 0; j < m; ++j) {
            total[j] += p.val[j];
            toterr[j] += p.err[j];
            p.badness = std::max(p.badness, p.err[j]);
        }
        heap.push(std::move(p));
    };
    auto done = [&]() {
        for (int j = 0; j < m; ++j)
            if (toterr[j] > std::max(o.abs_tol, o.rel_tol * std::fabs(total[j])))
                return false;
        return true;
    };
    push(a, b);
    int panels = 1;
    while (!done()) {
        if (panels >= o.max_panels)
            throw ConvergenceError("quad batch: panel budget exhausted");
        Panel worst = heap.top();
        heap.pop();
        for (int j = 0; j < m; ++j) {
            total[j] -= worst.val[j];
            toterr[j] -= worst.err[j];
        }
        const double mid = 0.5 * (worst.a + worst.b);
        push(worst.a, mid);
        push(mid, worst.b);
        ++panels;
    }
    for (int j = 0; j < m; ++j) accum[j] += total[j];
}

template <class F>
void integrate_half_line_up_batch(F&& f, int m, double a,
                                  const QuadOptions& o, double* accum) {
    auto mapped = [&f, a, m](double t, double* out) {
        const double om = 1.0 - t;
        const double y = a + t / om;
        f(y, out);
        const double jac = 1.0 / (om * om);
        for (int j = 0; j < m; ++j) out[j] *= jac;
    };
    integrate_adaptive_batch(mapped, m, 0.0, 1.0, o, accum);
}

template <class F>
void integrate_half_line_down_batch(F&& f, int m, double a,
                                    const QuadOptions& o, double* accum) {
    auto flipped = [&f, a](double y, double* out) { f(2.0 * a - y, out); };
    integrate_half_line_up_batch(flipped, m, a, o, accum);
}

template <class F>
void integrate_blocks_up_batch(F&& f, int m, double a, const QuadOptions& o,
                               double* accum, double block0 = 1.0,
                               double growth = 2.0, int max_blocks = 64) {
    std::vector<double> total(m, 0.0), block(m);
    double lo = a, len = block0;
    int quiet = 0;
    for (int j = 0; j < max_blocks; ++j) {
        std::fill(block.begin(), block.end(), 0.0);
        integrate_adaptive_batch(f, m, lo, lo + len, o, block.data());
        bool small = true;
        for (int i = 0; i < m; ++i) {
            total[i] += block[i];
            if (std::fabs(block[i]) >
                std::max(o.abs_tol, o.rel_tol * std::fabs(total[i])))
                small = false;
        }
        if (small) {
            if (++quiet >= 2) {
                for (int i = 0; i < m; ++i) accum[i] += total[i];
                return;
            }
        } else {
            quiet = 0;
        }
        lo += len;
        len *= growth;
    }
    throw ConvergenceError("quad batch: tail blocks did not converge");
}

template <class F>
void integrate_blocks_down_batch(F&& f, int m, double a, const QuadOptions& o,
                                 double* accum, double block0 = 1.0,
                                 double growth = 2.0, int max_blocks = 64) {
    auto flipped = [&f, a](double y, double* out) { f(2.0 * a - y, out); };
    integrate_blocks_up_batch(flipped, m, a, o, accum, block0, growth,
                              max_blocks);
}

// ---------------------------------------------------------------------------
// 2-D tensor-product panels on rectangles, batched.  F has signature
// void(double x, double y, double* out).

template <class F>
void gk15_box_batch(F&& f, int m, double ax, double bx, double ay, double by,
                    std::vector<double>& val, std::vector<double>& err) {
    const double cx = 0.5 * (ax + bx), hx = 0.5 * (bx - ax);
    const double cy = 0.5 * (ay + by), hy = 0.5 * (by - ay);
    // nodes: center + 14 offsets per axis
    double nx[15], wxk[15], wxg[15];
    double ny[15], wyk[15], wyg[15];
    auto fill = [](double c, double h, double* n, double* wk, double* wg) {
        n[0] = c;
        wk[0] = detail::kWgk[7];
        wg[0] = detail::kWg[3];
        for (int i = 0; i < 7; ++i) {
            const double dx = h * detail::kXgk[i];
            n[1 + 2 * i] = c - dx;
            n[2 + 2 * i] = c + dx;
            wk[1 + 2 * i] = wk[2 + 2 * i] = detail::kWgk[i];
            wg[1 + 2 * i] = wg[2 + 2 * i] =
                (i % 2 == 1) ? detail::kWg[i / 2] : 0.0;
        }
    };
    fill(cx, hx, nx, wxk, wxg);
    fill(cy, hy, ny, wyk, wyg);
    val.assign(m, 0.0);
    err.assign(m, 0.0);  // Gauss accumulator first
    std::vector<double> work(m);
    for (int i = 0; i < 15; ++i) {
        for (int j = 0; j < 15; ++j) {
            f(nx[i], ny[j], work.data());
            const double wk = wxk[i] * wyk[j];
            const double wg = wxg[i] * wyg[j];
            for (int q = 0; q < m; ++q) {
                val[q] += wk * work[q];
                err[q] += wg * work[q];
            }
        }
    }
    const double area = hx * hy;
    for (int q = 0; q < m; ++q) {
        err[q] = std::fabs((val[q] - err[q]) * area);
        val[q] *= area;
    }
}

template <class F>
void integrate_box_batch(F&& f, int m, double ax, double bx, double ay,
                         double by, const QuadOptions& o, double* accum) {
    struct Panel {
        double ax, bx, ay, by, badness;
        std::vector<double> val, err;
    };
    auto cmp = [](const Panel& x, const Panel& y) {
        return x.badness < y.badness;
    };
    std::priority_queue<Panel, std::vector<Panel>, decltype(cmp)> heap(cmp);
    std::vector<double> total(m, 0.0), toterr(m, 0.0);
    auto push = [&](double x0, double x1, double y0, double y1) {
        Panel p;
        p.ax = x0;
        p.bx = x1;
        p.ay = y0;
        p.by = y1;
        gk15_box_batch(f, m, x0, x1, y0, y1, p.val, p.err);
        p.badness = 0.0;
        for (int j = 0; j < m; ++j) {
            total[j] += p.val[j];
            toterr[j] += p.err[j];
            p.badness = std::max(p.badness, p.err[j]);
        }
        heap.push(std::move(p));
    };
    auto done = [&]() {
        for (int j = 0; j < m; ++j)
            if (toterr[j] > std::max(o.abs_tol, o.rel_tol * std::fabs(total[j])))
                return false;
        return true;
    };
    push(ax, bx, ay, by);
    int panels = 1;
    while (!done()) {
        if (panels >= o.max_panels)
            throw ConvergenceError("quad box: panel budget exhausted");
        Panel w = heap.top();
        heap.pop();
        for (int j = 0; j < m; ++j) {
            total[j] -= w.val[j];
            toterr[j] -= w.err[j];
        }
        if (w.bx - w.ax >= w.by - w.ay) {
            const double mid = 0.5 * (w.ax + w.bx);
            push(w.ax, mid, w.ay, w.by);
            push(mid, w.bx, w.ay, w.by);
        } else {
            const double mid = 0.5 * (w.ay + w.by);
            push(w.ax, w.bx, w.ay, mid);
            push(w.ax, w.bx, mid, w.by);
        }
        ++panels;
    }
    for (int j = 0; j < m; ++j) accum[j] += total[j];
}

}  // namespace volap::quad
