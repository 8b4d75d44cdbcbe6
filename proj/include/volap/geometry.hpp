#pragma once

#include <array>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace volap::geometry {

using Point = std::array<double, 2>;  // coordinates beyond d are zero

enum class Region { interior, boundary, exterior };

// Omega: an interval, an axis-aligned box, or the notched channel
// Xi \ (Xi_+ u Xi_-) with Xi = (-3,3)x(-1,1) and Xi_+- = [-1,1]x(+-1,+-0.5].
struct Domain {
    enum class Kind { interval, box, notched_channel };
    Kind kind = Kind::interval;
    int d = 1;
    Point lo{{-1.0, 0.0}};
    Point hi{{1.0, 0.0}};

    static Domain interval(double a, double b);
    static Domain box(const Point& lo, const Point& hi);
    static Domain notched_channel();

    double diameter() const;
    Region classify(const Point& p, double tol = 1e-12) const;
};

Region classify(const Domain& dom, const Point& p, double tol = 1e-12);

struct NodeSet {
    int d = 1;
    std::vector<Point> points;
    std::vector<bool> boundary_mask;

    int n_total() const { return static_cast<int>(points.size()); }
    int n_interior() const;
    int n_boundary() const { return n_total() - n_interior(); }
};

// Tensor grid on the closure, classified interior/boundary; grid points in
// the channel notches are dropped and the notch walls become boundary.
NodeSet uniform_nodes(const Domain& dom, std::span<const int> resolution);
NodeSet uniform_nodes(const Domain& dom, int resolution);

// Spatially varying exponent alpha(x); all parametric kinds read the first
// coordinate, matching the catalog of 1-d profiles.
struct ExponentField {
    enum class Kind {
        constant,
        affine,        // c0 + c1*x
        abs_profile,   // c0 + c1*|x|
        exp_profile,   // c0 * exp(c1*x)
        tanh_profile,  // c0 + c1*tanh(c2*x + c3)
        cos_profile,   // c0 * cos(c1*x)
        piecewise_blend,
        custom
    };
    Kind kind = Kind::constant;
    std::array<double, 4> c{{2.0, 0.0, 0.0, 0.0}};
    std::function<double(const Point&)> fn;
    std::string label = "const:2";

    // raw evaluation, no range check
    double operator()(const Point& p) const;

    static ExponentField constant(double a);
    static ExponentField affine(double c0, double c1);
    static ExponentField abs_profile(double c0, double c1);
    static ExponentField exp_profile(double c0, double c1);
    static ExponentField tanh_profile(double c0, double c1, double c2,
                                      double c3);
    static ExponentField cos_profile(double c0, double c1);
    // 2*chi(x<=-0.5) + 1.4*chi(x>=0.5) + (1.7-0.6x)*chi(|x|<0.5)
    static ExponentField piecewise_blend();
    static ExponentField custom(std::function<double(const Point&)> f,
                                std::string label);

    // the heterogeneous exponent catalog
    static ExponentField alpha1();  // 1 + x
    static ExponentField alpha2();  // 1 - |x|
    static ExponentField alpha3();  // 0.7 e^{-x}
    static ExponentField alpha4();  // 1 + tanh(4x + 2)
    static ExponentField alpha5();  // cos(x)
};

// Checked evaluation: throws RangeError with the offending point when the
// value leaves (0, 2].
double eval_alpha(const ExponentField& f, const Point& p);

// Samples the domain closure and rejects fields that leave (0, 2] there.
void validate(const ExponentField& f, const Domain& dom,
              int samples_per_axis = 201);

}  // namespace volap::geometry
