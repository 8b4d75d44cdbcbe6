#pragma once

#include <span>
#include <vector>

namespace volap::specfun {

// Tolerances for ascending hypergeometric series.
struct SeriesControl {
    double rel_tol = 1e-13;
    int max_terms = 1000;
    double cancellation_guard = 1e8;  // flag when max |term| > guard * |sum|
};

struct SeriesResult {
    double value = 0.0;
    int terms = 0;
    bool converged = false;
    bool cancellation = false;  // significant digits lost to alternating terms
    double max_term = 0.0;
};

// log |Gamma(x)| together with the sign of Gamma(x).
struct LogGamma {
    double log_abs;
    int sign;  // +1 or -1
};

// Poles at nonpositive integers throw std::domain_error.
LogGamma ln_gamma(double x);

// Gamma(x) itself; overflows to +-inf for large |log Gamma|.
double gamma_fn(double x);

// Entire reciprocal 1/Gamma(x); exactly 0 at nonpositive integers.
double recip_gamma(double x);

// Gamma(x) / Gamma(y) evaluated in log space.
double gamma_ratio(double x, double y);

// Rising factorial (c)_n, with (c)_0 = 1.
double pochhammer(double c, int n);

// Digamma psi(x); poles at nonpositive integers throw.
double digamma(double x);

// sin(pi x), cos(pi x) with exact integer/half-integer reduction.
double sin_pi(double x);
double cos_pi(double x);

// Generalized hypergeometric series pFq(a; b; z) by direct ascending
// summation with compensated accumulation.  Requires p <= q+1, no b_k a
// nonpositive integer, and |z| < 1 when p == q+1 unless some a_k is a
// nonpositive integer (terminating series are summed for any z).
SeriesResult hyp_pfq_full(std::span<const double> a, std::span<const double> b,
                          double z, const SeriesControl& ctl = {});
double hyp_pfq(std::span<const double> a, std::span<const double> b, double z,
               const SeriesControl& ctl = {});

// Confluent 1F1(a; b; z).  Negative arguments go through the Kummer
// transformation 1F1(a;b;z) = e^z 1F1(b-a;b;-z).
SeriesResult hyp1f1_full(double a, double b, double z,
                         const SeriesControl& ctl = {});
double hyp1f1(double a, double b, double z, const SeriesControl& ctl = {});

// Gauss 2F1(a, b; c; z) for z < 1.  Dispatches between the direct series,
// the Pfaff map z/(z-1), the 1/(1-z) connection for large negative z, and
// the 1-z connection near z = 1 (logarithmic variant when c-a-b is within
// 1e-8 of an integer).
double hyp2f1(double a, double b, double c, double z,
              const SeriesControl& ctl = {});

// 1F2(a; b1, b2; z) by direct series.  Results for z < -2000 carry the
// cancellation flag: the alternating sum sheds digits out there.
SeriesResult hyp1f2_full(double a, double b1, double b2, double z,
                         const SeriesControl& ctl = {});
double hyp1f2(double a, double b1, double b2, double z,
              const SeriesControl& ctl = {});

// Bessel J_nu(x) for nu > -1, x >= 0, via the 0F1 representation
// J_nu(x) = (x/2)^nu / Gamma(nu+1) 0F1(; nu+1; -x^2/4); Hankel's expansion
// takes over for large x where the series sheds too many digits.
double bessel_j(double nu, double x, const SeriesControl& ctl = {});

}  // namespace volap::specfun
