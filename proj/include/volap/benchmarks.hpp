#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace volap::benchmarks {

// Solid harmonic factor V(x): degree 0 is V = 1, degree 1 is V = x^(axis).
struct HarmonicFactor {
    int degree = 0;
    int axis = 0;
    double operator()(std::span<const double> x) const;
};

// An (u, (-Delta)^{alpha/2} u) ground-truth pair.
struct BenchmarkPair {
    int d = 1;
    std::function<double(std::span<const double>)> u;
    std::function<double(std::span<const double>, double)> vo_lap;
    enum class Support { global, unit_ball } support = Support::global;
    std::string smoothness_note;
};

// u = V(x) pFq(a; b, theta; -|x|^2) with theta = d/2 + degree appended as
// the final lower parameter; its variable-order Laplacian shifts a and b by
// alpha/2 and multiplies by 2^alpha prod Gamma(a_k+alpha/2)/Gamma(a_k) *
// prod Gamma(b_k)/Gamma(b_k+alpha/2).
BenchmarkPair hypergeom_pair(std::vector<double> a, std::vector<double> b,
                             HarmonicFactor V, int d);

// u = V(x) [(1-|x|^2)^p]_+ on the unit ball; vo_lap valid for |x| < 1.
BenchmarkPair compact_pair(double p, HarmonicFactor V, int d);

// u(x) = sqrt(2) sin|x| / (sqrt(pi) |x|) on the line, u(0) = sqrt(2/pi).
BenchmarkPair example1_pair();

// (-Delta)^{alpha/2} cos(|x|) at radius r; collapses to cos(r) when d = 1.
double cos_identity(int d, double alpha, double r);

// (-Delta)^{alpha/2} sinc(|x|) at radius r, sinc(x) = sin(pi x)/(pi x).
double sinc_identity(int d, double alpha, double r);

}  // namespace volap::benchmarks
