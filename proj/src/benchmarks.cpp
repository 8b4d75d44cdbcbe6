#include "volap/benchmarks.hpp"

#include <cmath>
#include <stdexcept>

#include "volap/specfun.hpp"

namespace volap::benchmarks {

namespace sf = volap::specfun;

double HarmonicFactor::operator()(std::span<const double> x) const {
    if (degree == 0) return 1.0;
    return x[static_cast<size_t>(axis)];
}

namespace {

double norm2_sq(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return s;
}

}  // namespace

BenchmarkPair hypergeom_pair(std::vector<double> a, std::vector<double> b,
                             HarmonicFactor V, int d) {
    if (V.degree != 0 && V.degree != 1)
        throw std::invalid_argument("hypergeom_pair: degree in {0, 1}");
    const int p = static_cast<int>(a.size());
    const int q = static_cast<int>(b.size()) + 1;  // theta appended
    if (p > q + 1 || q - 1 > p)
        throw std::invalid_argument("hypergeom_pair: need q-1 <= p <= q+1");
    const double theta = 0.5 * d + V.degree;

    BenchmarkPair pair;
    pair.d = d;
    pair.support = BenchmarkPair::Support::global;
    pair.smoothness_note = "entire";

    pair.u = [a, b, theta, V](std::span<const double> x) {
        std::vector<double> lower = b;
        lower.push_back(theta);
        return V(x) * sf::hyp_pfq(a, lower, -norm2_sq(x));
    };
    pair.vo_lap = [a, b, theta, V](std::span<const double> x, double alpha) {
        std::vector<double> up = a, lower = b;
        double log_c1 = alpha * std::log(2.0);
        int sign = 1;
        for (double& ak : up) {
            const auto l1 = sf::ln_gamma(ak + 0.5 * alpha);
            const auto l0 = sf::ln_gamma(ak);
            log_c1 += l1.log_abs - l0.log_abs;
            sign *= l1.sign * l0.sign;
            ak += 0.5 * alpha;
        }
        for (double& bk : lower) {
            const auto l0 = sf::ln_gamma(bk);
            const auto l1 = sf::ln_gamma(bk + 0.5 * alpha);
            log_c1 += l0.log_abs - l1.log_abs;
            sign *= l1.sign * l0.sign;
            bk += 0.5 * alpha;
        }
        lower.push_back(theta);
        return sign * std::exp(log_c1) * V(x) *
               sf::hyp_pfq(up, lower, -norm2_sq(x));
    };
    return pair;
}

BenchmarkPair compact_pair(double p, HarmonicFactor V, int d) {
    if (!(p > -1.0)) throw std::invalid_argument("compact_pair: p > -1");
    if (V.degree != 0 && V.degree != 1)
        throw std::invalid_argument("compact_pair: degree in {0, 1}");
    const double theta = 0.5 * d + V.degree;

    BenchmarkPair pair;
    pair.d = d;
    pair.support = BenchmarkPair::Support::unit_ball;
    pair.smoothness_note = "C^floor(p) at the unit sphere";

    pair.u = [p, V](std::span<const double> x) {
        const double r2 = norm2_sq(x);
        if (r2 >= 1.0) return 0.0;
        return V(x) * std::pow(1.0 - r2, p);
    };
    pair.vo_lap = [p, theta, V](std::span<const double> x, double alpha) {
        const double r2 = norm2_sq(x);
        if (r2 >= 1.0)
            throw std::domain_error("compact_pair: vo_lap needs |x| < 1");
        const double coef =
            std::exp(alpha * std::log(2.0) + sf::ln_gamma(p + 1.0).log_abs +
                     sf::ln_gamma(theta + 0.5 * alpha).log_abs -
                     sf::ln_gamma(theta).log_abs) *
            sf::recip_gamma(p + 1.0 - 0.5 * alpha);
        return coef * V(x) *
               sf::hyp2f1(theta + 0.5 * alpha, -p + 0.5 * alpha, theta, r2);
    };
    return pair;
}

BenchmarkPair example1_pair() {
    BenchmarkPair pair;
    pair.d = 1;
    pair.support = BenchmarkPair::Support::global;
    pair.smoothness_note = "entire (even in x)";
    pair.u = [](std::span<const double> x) {
        const double r = std::fabs(x[0]);
        if (r < 1e-8) {
            // sin(r)/r = 1 - r^2/6 near zero
            return std::sqrt(2.0 / M_PI) * (1.0 - r * r / 6.0);
        }
        return std::sqrt(2.0) * std::sin(r) / (std::sqrt(M_PI) * r);
    };
    pair.vo_lap = [](std::span<const double> x, double alpha) {
        const double coef = std::sqrt(2.0) / ((alpha + 1.0) * std::sqrt(M_PI));
        return coef * sf::hyp1f2(0.5 * (1.0 + alpha), 0.5 * (3.0 + alpha), 0.5,
                                 -0.25 * x[0] * x[0]);
    };
    return pair;
}

double cos_identity(int d, double alpha, double r) {
    if (d < 1) throw std::invalid_argument("cos_identity: d >= 1");
    const auto lg_num = sf::ln_gamma(0.5 * (d + alpha));
    const auto lg_d = sf::ln_gamma(0.5 * d);
    const auto lg_a = sf::ln_gamma(0.5 * (1.0 + alpha));
    const double coef = lg_num.sign * lg_d.sign * lg_a.sign *
                        std::exp(0.5 * std::log(M_PI) + lg_num.log_abs -
                                 lg_d.log_abs - lg_a.log_abs);
    return coef * sf::hyp1f2(0.5 * (d + alpha), 0.5 * (1.0 + alpha), 0.5 * d,
                             -0.25 * r * r);
}

double sinc_identity(int d, double alpha, double r) {
    if (d < 1) throw std::invalid_argument("sinc_identity: d >= 1");
    const auto lg_num = sf::ln_gamma(0.5 * (d + alpha));
    const auto lg_d = sf::ln_gamma(0.5 * d);
    const auto lg_a = sf::ln_gamma(0.5 * (3.0 + alpha));
    const double coef = lg_num.sign * lg_d.sign * lg_a.sign *
                        std::exp((alpha + 0.5) * std::log(M_PI) +
                                 lg_num.log_abs - lg_d.log_abs - lg_a.log_abs) /
                        2.0;
    return coef * sf::hyp1f2(0.5 * (d + alpha), 0.5 * (3.0 + alpha), 0.5 * d,
                             -0.25 * M_PI * M_PI * r * r);
}

}  // namespace volap::benchmarks
