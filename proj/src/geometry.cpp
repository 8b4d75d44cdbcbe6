#include "volap/geometry.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "volap/common.hpp"

namespace volap::geometry {

Domain Domain::interval(double a, double b) {
    if (!(a < b)) throw std::invalid_argument("Domain::interval: empty");
    Domain dom;
    dom.kind = Kind::interval;
    dom.d = 1;
    dom.lo = {a, 0.0};
    dom.hi = {b, 0.0};
    return dom;
}

Domain Domain::box(const Point& lo, const Point& hi) {
    if (!(lo[0] < hi[0] && lo[1] < hi[1]))
        throw std::invalid_argument("Domain::box: empty");
    Domain dom;
    dom.kind = Kind::box;
    dom.d = 2;
    dom.lo = lo;
    dom.hi = hi;
    return dom;
}

Domain Domain::notched_channel() {
    Domain dom;
    dom.kind = Kind::notched_channel;
    dom.d = 2;
    dom.lo = {-3.0, -1.0};
    dom.hi = {3.0, 1.0};
    return dom;
}

double Domain::diameter() const {
    if (d == 1) return hi[0] - lo[0];
    return std::hypot(hi[0] - lo[0], hi[1] - lo[1]);
}

Region Domain::classify(const Point& p, double tol) const {
    switch (kind) {
        case Kind::interval: {
            const double x = p[0];
            if (x < lo[0] - tol || x > hi[0] + tol) return Region::exterior;
            if (std::fabs(x - lo[0]) <= tol || std::fabs(x - hi[0]) <= tol)
                return Region::boundary;
            return Region::interior;
        }
        case Kind::box: {
            for (int k = 0; k < 2; ++k)
                if (p[k] < lo[k] - tol || p[k] > hi[k] + tol)
                    return Region::exterior;
            for (int k = 0; k < 2; ++k)
                if (std::fabs(p[k] - lo[k]) <= tol ||
                    std::fabs(p[k] - hi[k]) <= tol)
                    return Region::boundary;
            return Region::interior;
        }
        case Kind::notched_channel: {
            const double ax = std::fabs(p[0]);
            const double ay = std::fabs(p[1]);
            if (ax > 3.0 + tol || ay > 1.0 + tol) return Region::exterior;
            // strictly inside the notch strip (goes all the way to |y| = 1)
            if (ax < 1.0 - tol && ay > 0.5 + tol) return Region::exterior;
            if (std::fabs(ax - 3.0) <= tol) return Region::boundary;
            if (std::fabs(ay - 1.0) <= tol && ax >= 1.0 - tol)
                return Region::boundary;
            if (std::fabs(ax - 1.0) <= tol && ay >= 0.5 - tol)
                return Region::boundary;
            if (std::fabs(ay - 0.5) <= tol && ax <= 1.0 + tol)
                return Region::boundary;
            if (ax <= 1.0 + tol && ay > 0.5 + tol) return Region::exterior;
            return Region::interior;
        }
    }
    return Region::exterior;
}

Region classify(const Domain& dom, const Point& p, double tol) {
    return dom.classify(p, tol);
}

int NodeSet::n_interior() const {
    int n = 0;
    for (bool b : boundary_mask)
        if (!b) ++n;
    return n;
}

NodeSet uniform_nodes(const Domain& dom, std::span<const int> resolution) {
    if (resolution.empty() || static_cast<int>(resolution.size()) < dom.d)
        throw std::invalid_argument("uniform_nodes: need one count per axis");
    for (int k = 0; k < dom.d; ++k)
        if (resolution[k] < 2)
            throw std::invalid_argument("uniform_nodes: resolution >= 2");

    NodeSet ns;
    ns.d = dom.d;
    if (dom.d == 1) {
        const int n = resolution[0];
        for (int i = 0; i < n; ++i) {
            const double x =
                dom.lo[0] + (dom.hi[0] - dom.lo[0]) * i / (n - 1.0);
            ns.points.push_back({x, 0.0});
            ns.boundary_mask.push_back(i == 0 || i == n - 1);
        }
        return ns;
    }
    const int nx = resolution[0], ny = resolution[1];
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const Point p{
                dom.lo[0] + (dom.hi[0] - dom.lo[0]) * i / (nx - 1.0),
                dom.lo[1] + (dom.hi[1] - dom.lo[1]) * j / (ny - 1.0)};
            switch (dom.classify(p)) {
                case Region::interior:
                    ns.points.push_back(p);
                    ns.boundary_mask.push_back(false);
                    break;
                case Region::boundary:
                    ns.points.push_back(p);
                    ns.boundary_mask.push_back(true);
                    break;
                case Region::exterior:
                    break;
            }
        }
    }
    return ns;
}

NodeSet uniform_nodes(const Domain& dom, int resolution) {
    const int res[2] = {resolution, resolution};
    return uniform_nodes(dom, std::span<const int>(res, dom.d));
}

double ExponentField::operator()(const Point& p) const {
    const double x = p[0];
    switch (kind) {
        case Kind::constant: return c[0];
        case Kind::affine: return c[0] + c[1] * x;
        case Kind::abs_profile: return c[0] + c[1] * std::fabs(x);
        case Kind::exp_profile: return c[0] * std::exp(c[1] * x);
        case Kind::tanh_profile: return c[0] + c[1] * std::tanh(c[2] * x + c[3]);
        case Kind::cos_profile: return c[0] * std::cos(c[1] * x);
        case Kind::piecewise_blend:
            if (x <= -0.5) return 2.0;
            if (x >= 0.5) return 1.4;
            return 1.7 - 0.6 * x;
        case Kind::custom: return fn(p);
    }
    return c[0];
}

namespace {
ExponentField make(ExponentField::Kind k, std::array<double, 4> c,
                   std::string label) {
    ExponentField f;
    f.kind = k;
    f.c = c;
    f.label = std::move(label);
    return f;
}
std::string num(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}
}  // namespace

ExponentField ExponentField::constant(double a) {
    return make(Kind::constant, {a, 0, 0, 0}, "const:" + num(a));
}
ExponentField ExponentField::affine(double c0, double c1) {
    return make(Kind::affine, {c0, c1, 0, 0},
                "affine:" + num(c0) + "," + num(c1));
}
ExponentField ExponentField::abs_profile(double c0, double c1) {
    return make(Kind::abs_profile, {c0, c1, 0, 0},
                "abs:" + num(c0) + "," + num(c1));
}
ExponentField ExponentField::exp_profile(double c0, double c1) {
    return make(Kind::exp_profile, {c0, c1, 0, 0},
                "exp:" + num(c0) + "," + num(c1));
}
ExponentField ExponentField::tanh_profile(double c0, double c1, double c2,
                                          double c3) {
    return make(Kind::tanh_profile, {c0, c1, c2, c3},
                "tanh:" + num(c0) + "," + num(c1) + "," + num(c2) + "," +
                    num(c3));
}
ExponentField ExponentField::cos_profile(double c0, double c1) {
    return make(Kind::cos_profile, {c0, c1, 0, 0},
                "cos:" + num(c0) + "," + num(c1));
}
ExponentField ExponentField::piecewise_blend() {
    return make(Kind::piecewise_blend, {0, 0, 0, 0}, "blend");
}
ExponentField ExponentField::custom(std::function<double(const Point&)> f,
                                    std::string label) {
    ExponentField e;
    e.kind = Kind::custom;
    e.fn = std::move(f);
    e.label = std::move(label);
    return e;
}

ExponentField ExponentField::alpha1() {
    auto f = affine(1.0, 1.0);
    f.label = "a1";
    return f;
}
ExponentField ExponentField::alpha2() {
    auto f = abs_profile(1.0, -1.0);
    f.label = "a2";
    return f;
}
ExponentField ExponentField::alpha3() {
    auto f = exp_profile(0.7, -1.0);
    f.label = "a3";
    return f;
}
ExponentField ExponentField::alpha4() {
    auto f = tanh_profile(1.0, 1.0, 4.0, 2.0);
    f.label = "a4";
    return f;
}
ExponentField ExponentField::alpha5() {
    auto f = cos_profile(1.0, 1.0);
    f.label = "a5";
    return f;
}

double eval_alpha(const ExponentField& f, const Point& p) {
    const double a = f(p);
    if (!(a > 0.0) || a > 2.0) {
        std::ostringstream os;
        os << "alpha(" << p[0];
        os << ", " << p[1];
        os << ") = " << a << " outside (0, 2] for field " << f.label;
        throw RangeError(os.str());
    }
    return a;
}

// Cell midpoints rather than grid corners: exponent fields may touch 0 or 2
// exactly on the boundary itself (alpha_2 = 1-|x| does), which is harmless
// because boundary collocation rows never evaluate alpha.
void validate(const ExponentField& f, const Domain& dom,
              int samples_per_axis) {
    const int n = samples_per_axis;
    if (dom.d == 1) {
        for (int i = 0; i < n; ++i) {
            const Point p{dom.lo[0] + (dom.hi[0] - dom.lo[0]) * (i + 0.5) / n,
                          0.0};
            eval_alpha(f, p);
        }
        return;
    }
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const Point p{dom.lo[0] + (dom.hi[0] - dom.lo[0]) * (i + 0.5) / n,
                          dom.lo[1] + (dom.hi[1] - dom.lo[1]) * (j + 0.5) / n};
            if (dom.classify(p) != Region::exterior) eval_alpha(f, p);
        }
    }
}

}  // namespace volap::geometry
