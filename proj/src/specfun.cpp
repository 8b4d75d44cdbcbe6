#include "volap/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "volap/common.hpp"

namespace volap::specfun {

namespace {

bool is_nonpositive_integer(double x) {
    return x <= 0.0 && x == std::floor(x);
}

// Lanczos approximation, g = 7, 9 coefficients.
constexpr double kLanczos[9] = {
    0.99999999999980993,    676.5203681218851,     -1259.1392167224028,
    771.32342877765313,     -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,   9.9843695780195716e-6, 1.5056327351493116e-7};

constexpr double kHalfLog2Pi = 0.91893853320467274178;  // ln(2 pi)/2

// ln Gamma(x) for x >= 0.5.  The dominant (x-1/2) ln t - t part is done
// with a two-product split so the absolute error stays near 1 ulp even
// when the result is ~700.
double ln_gamma_positive(double x) {
    double s = kLanczos[0];
    for (int k = 1; k < 9; ++k) s += kLanczos[k] / (x - 1.0 + k);
    const double t = x + 6.5;
    const double u = std::log(t);
    const double m = x - 0.5;
    const double p = m * u;
    const double p_lo = std::fma(m, u, -p);
    return kHalfLog2Pi + std::log(s) + ((p - t) + p_lo);
}

}  // namespace

double sin_pi(double x) {
    double n = std::round(x);
    double r = x - n;  // |r| <= 0.5
    double s = std::sin(M_PI * r);
    // parity of n flips the sign; n beyond 2^53 is even by representation
    if (std::fabs(n) < 9.007199254740992e15 && std::fmod(n, 2.0) != 0.0) s = -s;
    return s;
}

double cos_pi(double x) { return sin_pi(x + 0.5); }

LogGamma ln_gamma(double x) {
    if (is_nonpositive_integer(x))
        throw std::domain_error("ln_gamma: pole at nonpositive integer " +
                                std::to_string(x));
    if (x >= 0.5) return {ln_gamma_positive(x), +1};
    // reflection: Gamma(x) = pi / (sin(pi x) Gamma(1-x))
    const double s = sin_pi(x);
    const double log_abs =
        std::log(M_PI) - std::log(std::fabs(s)) - ln_gamma_positive(1.0 - x);
    return {log_abs, s > 0.0 ? +1 : -1};
}

double gamma_fn(double x) {
    const LogGamma lg = ln_gamma(x);
    return lg.sign * std::exp(lg.log_abs);
}

double recip_gamma(double x) {
    if (is_nonpositive_integer(x)) return 0.0;
    if (x >= 0.5) return std::exp(-ln_gamma_positive(x));
    // 1/Gamma(x) = sin(pi x)/pi * Gamma(1-x), entire in x
    const double s = sin_pi(x);
    if (s == 0.0) return 0.0;
    const double log_mag =
        std::log(std::fabs(s)) - std::log(M_PI) + ln_gamma_positive(1.0 - x);
    return (s > 0.0 ? 1.0 : -1.0) * std::exp(log_mag);
}

double gamma_ratio(double x, double y) {
    const LogGamma lx = ln_gamma(x);
    const LogGamma ly = ln_gamma(y);
    return lx.sign * ly.sign * std::exp(lx.log_abs - ly.log_abs);
}

double pochhammer(double c, int n) {
    double p = 1.0;
    for (int k = 0; k < n; ++k) p *= c + k;
    return p;
}

double digamma(double x) {
    if (is_nonpositive_integer(x))
        throw std::domain_error("digamma: pole at nonpositive integer");
    if (x < 0.5) {
        // psi(x) = psi(1-x) - pi cot(pi x)
        return digamma(1.0 - x) - M_PI * cos_pi(x) / sin_pi(x);
    }
    double acc = 0.0;
    while (x < 8.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    // asymptotic series, Bernoulli coefficients B_2k/(2k)
    const double w = 1.0 / (x * x);
    double series = -1.0 / 12 +
                    w * (1.0 / 120 +
                         w * (-1.0 / 252 +
                              w * (1.0 / 240 +
                                   w * (-1.0 / 132 +
                                        w * (691.0 / 32760 - w / 12)))));
    return acc + std::log(x) - 0.5 / x + w * series;
}

SeriesResult hyp_pfq_full(std::span<const double> a, std::span<const double> b,
                          double z, const SeriesControl& ctl) {
    const int p = static_cast<int>(a.size());
    const int q = static_cast<int>(b.size());
    if (p > q + 1) throw std::domain_error("hyp_pfq: requires p <= q+1");
    for (double bk : b)
        if (is_nonpositive_integer(bk))
            throw std::domain_error("hyp_pfq: lower parameter at pole");
    bool terminating = false;
    for (double ak : a)
        if (is_nonpositive_integer(ak)) terminating = true;
    if (p == q + 1 && std::fabs(z) >= 1.0 && !terminating)
        throw std::domain_error("hyp_pfq: p = q+1 requires |z| < 1");

    SeriesResult res;
    double sum = 1.0, comp = 0.0;  // Kahan accumulator
    double term = 1.0;
    res.max_term = 1.0;
    int quiet = 0;  // consecutive negligible terms
    for (int n = 0; n < ctl.max_terms; ++n) {
        double ratio = z / (n + 1.0);
        for (double ak : a) ratio *= ak + n;
        for (double bk : b) ratio /= bk + n;
        term *= ratio;
        if (term == 0.0) {  // terminating series finished
            res.converged = true;
            res.terms = n + 1;
            break;
        }
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        res.max_term = std::max(res.max_term, std::fabs(term));
        if (std::fabs(term) <= ctl.rel_tol * std::fabs(sum) + 1e-320) {
            if (++quiet >= 2) {
                res.converged = true;
                res.terms = n + 1;
                break;
            }
        } else {
            quiet = 0;
        }
    }
    res.value = sum;
    if (!res.converged)
        throw ConvergenceError("hyp_pfq: no convergence within " +
                               std::to_string(ctl.max_terms) + " terms");
    res.cancellation =
        res.max_term > ctl.cancellation_guard * std::fabs(res.value);
    return res;
}

double hyp_pfq(std::span<const double> a, std::span<const double> b, double z,
               const SeriesControl& ctl) {
    return hyp_pfq_full(a, b, z, ctl).value;
}

namespace {

// 1F1(a; b; w) for w >= 0 with periodic renormalization, returning the
// log-scaled value: result = sign * exp(log_scale) * mantissa_sum.
struct ScaledSum {
    double mantissa;
    double log_scale;
};

ScaledSum hyp1f1_series_scaled(double a, double b, double w,
                               const SeriesControl& ctl, SeriesResult& meta) {
    double sum = 1.0, comp = 0.0, term = 1.0, log_scale = 0.0;
    meta.max_term = 1.0;
    int quiet = 0;
    for (int n = 0; n < ctl.max_terms; ++n) {
        term *= (a + n) / (b + n) * w / (n + 1.0);
        if (term == 0.0) {
            meta.converged = true;
            meta.terms = n + 1;
            break;
        }
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        meta.max_term = std::max(meta.max_term, std::fabs(term));
        if (std::fabs(sum) > 1e250) {
            sum *= 1e-250;
            comp *= 1e-250;
            term *= 1e-250;
            meta.max_term *= 1e-250;
            log_scale += 250.0 * std::log(10.0);
        }
        if (std::fabs(term) <= ctl.rel_tol * std::fabs(sum) + 1e-320) {
            if (++quiet >= 2) {
                meta.converged = true;
                meta.terms = n + 1;
                break;
            }
        } else {
            quiet = 0;
        }
    }
    if (!meta.converged)
        throw ConvergenceError("hyp1f1: no convergence (Kummer branch)");
    return {sum, log_scale};
}

}  // namespace

SeriesResult hyp1f1_full(double a, double b, double z,
                         const SeriesControl& ctl) {
    if (is_nonpositive_integer(b))
        throw std::domain_error("hyp1f1: lower parameter at pole");
    if (z >= 0.0 || is_nonpositive_integer(a)) {
        const double aa[1] = {a}, bb[1] = {b};
        return hyp_pfq_full(aa, bb, z, ctl);
    }
    // Kummer: 1F1(a;b;z) = e^z 1F1(b-a; b; -z), summed with positive-leaning
    // terms; renormalized so e^z underflow cannot poison the product.
    SeriesResult res;
    const ScaledSum s = hyp1f1_series_scaled(b - a, b, -z, ctl, res);
    const double log_mag = z + s.log_scale + std::log(std::fabs(s.mantissa));
    res.value = (s.mantissa >= 0 ? 1.0 : -1.0) * std::exp(log_mag);
    res.cancellation = false;  // transformed series has a single sign change
    return res;
}

double hyp1f1(double a, double b, double z, const SeriesControl& ctl) {
    return hyp1f1_full(a, b, z, ctl).value;
}

namespace {

double hyp2f1_series(double a, double b, double c, double z,
                     const SeriesControl& ctl) {
    const double aa[2] = {a, b}, bb[1] = {c};
    return hyp_pfq_full(aa, bb, z, ctl).value;
}

// Pfaff: 2F1(a,b;c;z) = (1-z)^{-a} 2F1(a, c-b; c; z/(z-1)) for z <= 0.
double hyp2f1_pfaff(double a, double b, double c, double z,
                    const SeriesControl& ctl) {
    const double w = z / (z - 1.0);
    return std::pow(1.0 - z, -a) * hyp2f1_series(a, c - b, c, w, ctl);
}

// A&S 15.3.8, w = 1/(1-z); requires a-b not an integer.
double hyp2f1_recip(double a, double b, double c, double z,
                    const SeriesControl& ctl) {
    const double w = 1.0 / (1.0 - z);
    const LogGamma lc = ln_gamma(c);
    const LogGamma lba = ln_gamma(b - a);
    const LogGamma lab = ln_gamma(a - b);
    const double coef1 = lc.sign * lba.sign * recip_gamma(b) *
                         recip_gamma(c - a) *
                         std::exp(lc.log_abs + lba.log_abs - a * std::log(1.0 - z));
    const double coef2 = lc.sign * lab.sign * recip_gamma(a) *
                         recip_gamma(c - b) *
                         std::exp(lc.log_abs + lab.log_abs - b * std::log(1.0 - z));
    double f1 = 0.0, f2 = 0.0;
    if (coef1 != 0.0) f1 = hyp2f1_series(a, c - b, a - b + 1.0, w, ctl);
    if (coef2 != 0.0) f2 = hyp2f1_series(b, c - a, b - a + 1.0, w, ctl);
    return coef1 * f1 + coef2 * f2;
}

// A&S 15.3.6, s = c-a-b away from integers; w = 1-z.
double hyp2f1_one_minus_z(double a, double b, double c, double z,
                          const SeriesControl& ctl) {
    const double w = 1.0 - z;
    const double s = c - a - b;
    const LogGamma lc = ln_gamma(c);
    const LogGamma ls = ln_gamma(s);
    const LogGamma lms = ln_gamma(-s);
    const double coef1 = lc.sign * ls.sign * recip_gamma(c - a) *
                         recip_gamma(c - b) * std::exp(lc.log_abs + ls.log_abs);
    const double coef2 = lc.sign * lms.sign * recip_gamma(a) * recip_gamma(b) *
                         std::exp(lc.log_abs + lms.log_abs + s * std::log(w));
    double f1 = 0.0, f2 = 0.0;
    if (coef1 != 0.0) f1 = hyp2f1_series(a, b, 1.0 - s, w, ctl);
    if (coef2 != 0.0) f2 = hyp2f1_series(c - a, c - b, 1.0 + s, w, ctl);
    return coef1 * f1 + coef2 * f2;
}

// Logarithmic cases c = a+b+m at z near 1 (A&S 15.3.10/11/12); the caller
// rounds s = c-a-b to the nearest integer m.
double hyp2f1_log_case(double a, double b, double c, double z, int m,
                       const SeriesControl& ctl) {
    const double w = 1.0 - z;
    const double lw = std::log(w);
    const LogGamma lc = ln_gamma(c);
    const double gc = lc.sign * std::exp(lc.log_abs);

    if (m == 0) {
        // A&S 15.3.10
        const double pref = gc * recip_gamma(a) * recip_gamma(b);
        double sum = 0.0, term = 1.0;
        for (int n = 0; n < ctl.max_terms; ++n) {
            const double bracket = 2.0 * digamma(n + 1.0) - digamma(a + n) -
                                   digamma(b + n) - lw;
            const double contrib = term * bracket;
            sum += contrib;
            if (n > 2 && std::fabs(contrib) <= ctl.rel_tol * std::fabs(sum))
                return pref * sum;
            term *= (a + n) * (b + n) / ((n + 1.0) * (n + 1.0)) * w;
        }
        throw ConvergenceError("hyp2f1: log case m=0 did not converge");
    }

    if (m > 0) {
        // A&S 15.3.11
        double finite = 0.0, fterm = 1.0;
        for (int n = 0; n < m; ++n) {
            finite += fterm;
            if (n + 1 < m)
                fterm *= (a + n) * (b + n) / ((n + 1.0) * (1.0 - m + n)) * w;
        }
        const double coef_fin =
            gamma_fn(m) * gc * recip_gamma(a + m) * recip_gamma(b + m);

        const double coef_inf = -gc * recip_gamma(a) * recip_gamma(b) *
                                (m % 2 == 0 ? 1.0 : -1.0) * std::pow(w, m);
        double sum = 0.0, term = 1.0 / gamma_fn(m + 1.0);
        for (int n = 0; n < ctl.max_terms; ++n) {
            const double bracket = lw - digamma(n + 1.0) - digamma(n + m + 1.0) +
                                   digamma(a + m + n) + digamma(b + m + n);
            const double contrib = term * bracket;
            sum += contrib;
            if (n > 2 && std::fabs(contrib) <=
                             ctl.rel_tol * (std::fabs(sum) + 1e-300)) {
                return coef_fin * finite + coef_inf * sum;
            }
            term *= (a + m + n) * (b + m + n) / ((n + 1.0) * (n + m + 1.0)) * w;
        }
        throw ConvergenceError("hyp2f1: log case m>0 did not converge");
    }

    // m < 0: A&S 15.3.12 with mm = -m
    const int mm = -m;
    double finite = 0.0, fterm = 1.0;
    for (int n = 0; n < mm; ++n) {
        finite += fterm;
        if (n + 1 < mm)
            fterm *=
                (a - mm + n) * (b - mm + n) / ((n + 1.0) * (1.0 - mm + n)) * w;
    }
    const double coef_fin = gamma_fn(mm) * gc * recip_gamma(a) *
                            recip_gamma(b) * std::pow(w, -mm);
    const double coef_inf = -gc * recip_gamma(a - mm) * recip_gamma(b - mm) *
                            (mm % 2 == 0 ? 1.0 : -1.0);
    double sum = 0.0, term = 1.0 / gamma_fn(mm + 1.0);
    for (int n = 0; n < ctl.max_terms; ++n) {
        const double bracket = lw - digamma(n + 1.0) - digamma(n + mm + 1.0) +
                               digamma(a + n) + digamma(b + n);
        const double contrib = term * bracket;
        sum += contrib;
        if (n > 2 &&
            std::fabs(contrib) <= ctl.rel_tol * (std::fabs(sum) + 1e-300)) {
            return coef_fin * finite + coef_inf * sum;
        }
        term *= (a + n) * (b + n) / ((n + 1.0) * (n + mm + 1.0)) * w;
    }
    throw ConvergenceError("hyp2f1: log case m<0 did not converge");
}

}  // namespace

double hyp2f1(double a, double b, double c, double z,
              const SeriesControl& ctl) {
    if (is_nonpositive_integer(c))
        throw std::domain_error("hyp2f1: c at nonpositive integer");
    if (z >= 1.0) throw std::domain_error("hyp2f1: requires z < 1");

    if (is_nonpositive_integer(a) || is_nonpositive_integer(b))
        return hyp2f1_series(a, b, c, z, ctl);  // terminating polynomial

    if (z < -2.0) {
        const double ab = a - b;
        if (std::fabs(ab - std::round(ab)) > 1e-8)
            return hyp2f1_recip(a, b, c, z, ctl);
        // degenerate a-b: fall back to the (slow but safe) Pfaff series
        SeriesControl wide = ctl;
        wide.max_terms = std::max(ctl.max_terms, 200000);
        return hyp2f1_pfaff(a, b, c, z, wide);
    }
    if (z <= 0.0) return hyp2f1_pfaff(a, b, c, z, ctl);
    if (z <= 0.9) {
        SeriesControl wide = ctl;
        wide.max_terms = std::max(ctl.max_terms, 2000);
        return hyp2f1_series(a, b, c, z, wide);
    }
    const double s = c - a - b;
    const double m = std::round(s);
    if (std::fabs(s - m) <= 1e-8)
        return hyp2f1_log_case(a, b, c, z, static_cast<int>(m), ctl);
    return hyp2f1_one_minus_z(a, b, c, z, ctl);
}

SeriesResult hyp1f2_full(double a, double b1, double b2, double z,
                         const SeriesControl& ctl) {
    const double aa[1] = {a}, bb[2] = {b1, b2};
    SeriesControl local = ctl;
    // terms peak near n ~ sqrt(|z|); leave room beyond the hump
    local.max_terms = std::max(
        ctl.max_terms, static_cast<int>(4.0 * std::sqrt(std::fabs(z))) + 200);
    SeriesResult res = hyp_pfq_full(aa, bb, z, local);
    if (z < -2000.0) res.cancellation = true;
    return res;
}

double hyp1f2(double a, double b1, double b2, double z,
              const SeriesControl& ctl) {
    return hyp1f2_full(a, b1, b2, z, ctl).value;
}

namespace {

// Hankel's asymptotic expansion, truncated at the smallest term.
double bessel_j_asymptotic(double nu, double x) {
    const double mu = 4.0 * nu * nu;
    const double chi = x - (0.5 * nu + 0.25) * M_PI;
    double p = 1.0, q = 0.0;
    double ak = 1.0;
    for (int k = 1; k <= 20; ++k) {
        const double prev = ak;
        ak *= (mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (k * 8.0 * x);
        if (std::fabs(ak) >= std::fabs(prev) && k > 2) break;
        const int r = k % 4;
        if (r == 1) q += ak;
        else if (r == 2) p -= ak;
        else if (r == 3) q -= ak;
        else p += ak;
        if (std::fabs(ak) < 1e-17) break;
    }
    return std::sqrt(2.0 / (M_PI * x)) *
           (p * std::cos(chi) - q * std::sin(chi));
}

}  // namespace

double bessel_j(double nu, double x, const SeriesControl& ctl) {
    if (nu <= -1.0) throw std::domain_error("bessel_j: requires nu > -1");
    if (x < 0.0) throw std::domain_error("bessel_j: requires x >= 0");
    if (x > 30.0) return bessel_j_asymptotic(nu, x);
    if (x == 0.0) {
        if (nu == 0.0) return 1.0;
        if (nu > 0.0) return 0.0;
        return std::numeric_limits<double>::infinity();
    }
    const double bb[1] = {nu + 1.0};
    SeriesControl local = ctl;
    local.max_terms = std::max(ctl.max_terms, 400);
    const double f = hyp_pfq_full({}, bb, -0.25 * x * x, local).value;
    return std::exp(nu * std::log(0.5 * x)) * recip_gamma(nu + 1.0) * f;
}

}  // namespace volap::specfun
