#include "volap/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "volap/benchmarks.hpp"
#include "volap/collocation.hpp"
#include "volap/common.hpp"
#include "volap/oracle.hpp"
#include "volap/parallel.hpp"
#include "volap/rbf.hpp"
#include "volap/specfun.hpp"
#include "volap/timestep.hpp"

namespace volap::experiments {

using geometry::Domain;
using geometry::ExponentField;
using geometry::NodeSet;
using geometry::Point;
using nlohmann::json;
using rbf::RbfKernel;

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12e", v);
    return buf;
}

double now_s() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch())
        .count();
}

std::vector<double> parse_params(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    return out;
}

}  // namespace

geometry::ExponentField parse_alpha_spec(const std::string& spec) {
    if (spec == "a1" || spec == "alpha1") return ExponentField::alpha1();
    if (spec == "a2" || spec == "alpha2") return ExponentField::alpha2();
    if (spec == "a3" || spec == "alpha3") return ExponentField::alpha3();
    if (spec == "a4" || spec == "alpha4") return ExponentField::alpha4();
    if (spec == "a5" || spec == "alpha5") return ExponentField::alpha5();
    if (spec == "blend") return ExponentField::piecewise_blend();
    const auto colon = spec.find(':');
    try {
        if (colon == std::string::npos)
            return ExponentField::constant(std::stod(spec));
        const std::string kind = spec.substr(0, colon);
        const auto p = parse_params(spec.substr(colon + 1));
        if (kind == "const" && p.size() == 1)
            return ExponentField::constant(p[0]);
        if (kind == "affine" && p.size() == 2)
            return ExponentField::affine(p[0], p[1]);
        if (kind == "abs" && p.size() == 2)
            return ExponentField::abs_profile(p[0], p[1]);
        if (kind == "exp" && p.size() == 2)
            return ExponentField::exp_profile(p[0], p[1]);
        if (kind == "tanh" && p.size() == 4)
            return ExponentField::tanh_profile(p[0], p[1], p[2], p[3]);
        if (kind == "cos" && p.size() == 2)
            return ExponentField::cos_profile(p[0], p[1]);
    } catch (const std::exception&) {
        // fall through to the ConfigError below
    }
    throw ConfigError("unrecognized alpha spec '" + spec + "'");
}

double rms_error(const std::function<double(const Point&)>& ref,
                 std::span<const Point> pts, const Eigen::VectorXd& numeric) {
    if (pts.empty() || numeric.size() != static_cast<long>(pts.size()))
        throw std::invalid_argument("rms_error: size mismatch");
    double acc = 0.0;
    for (size_t i = 0; i < pts.size(); ++i) {
        const double e = ref(pts[i]) - numeric(static_cast<long>(i));
        acc += e * e;
    }
    return std::sqrt(acc / static_cast<double>(pts.size()));
}

std::vector<Point> interior_sample_points(const Domain& dom, int K) {
    if (dom.d != 1)
        throw std::invalid_argument("interior_sample_points: 1-d domains");
    std::vector<Point> pts;
    pts.reserve(K);
    for (int l = 1; l <= K; ++l)
        pts.push_back({dom.lo[0] + (dom.hi[0] - dom.lo[0]) * l / (K + 1.0), 0.0});
    return pts;
}

// ------------------------------------------------------------------ config

RunConfig RunConfig::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

RunConfig RunConfig::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    RunConfig c;
    try {
        c.experiment = j.at("experiment").get<std::string>();
        c.kernel = j.value("kernel", c.kernel);
        c.beta = j.value("beta", c.beta);
        c.bessel_m = j.value("bessel_m", c.bessel_m);
        c.epsilon = j.value("epsilon", c.epsilon);
        c.nbars = j.value("nbars", c.nbars);
        c.alpha_specs = j.value("alpha_specs", c.alpha_specs);
        if (j.contains("alpha")) c.alpha_specs = {j.at("alpha").get<std::string>()};
        c.K = j.value("K", c.K);
        c.series_rel_tol = j.value("series_rel_tol", c.series_rel_tol);
        c.quad_rel_tol = j.value("quad_rel_tol", c.quad_rel_tol);
        c.quad_abs_tol = j.value("quad_abs_tol", c.quad_abs_tol);
        c.truncation_radius = j.value("truncation_radius", c.truncation_radius);
        c.tau = j.value("tau", c.tau);
        c.t_end = j.value("t_end", c.t_end);
        c.wave_c = j.value("wave_c", c.wave_c);
        c.wave_a = j.value("wave_a", c.wave_a);
        c.wave_b = j.value("wave_b", c.wave_b);
        c.kappa = j.value("kappa", c.kappa);
        c.delta = j.value("delta", c.delta);
        c.snapshot_times = j.value("snapshot_times", c.snapshot_times);
        c.out_dir = j.value("out_dir", c.out_dir);
        c.seed = j.value("seed", c.seed);
        c.oracle_samples = j.value("oracle_samples", c.oracle_samples);
        c.function = j.value("function", c.function);
        c.args = j.value("args", c.args);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (!(c.epsilon > 0)) throw ConfigError("config: epsilon must be > 0");
    if (c.K < 1) throw ConfigError("config: K >= 1");
    return c;
}

std::string RunConfig::to_json() const {
    json j;
    j["experiment"] = experiment;
    j["kernel"] = kernel;
    j["beta"] = beta;
    j["bessel_m"] = bessel_m;
    j["epsilon"] = epsilon;
    j["nbars"] = nbars;
    j["alpha_specs"] = alpha_specs;
    j["K"] = K;
    j["series_rel_tol"] = series_rel_tol;
    j["quad_rel_tol"] = quad_rel_tol;
    j["quad_abs_tol"] = quad_abs_tol;
    j["truncation_radius"] = truncation_radius;
    j["tau"] = tau;
    j["t_end"] = t_end;
    j["wave_c"] = wave_c;
    j["wave_a"] = wave_a;
    j["wave_b"] = wave_b;
    j["kappa"] = kappa;
    j["delta"] = delta;
    j["snapshot_times"] = snapshot_times;
    j["out_dir"] = out_dir;
    j["seed"] = seed;
    j["oracle_samples"] = oracle_samples;
    j["function"] = function;
    j["args"] = args;
    j["version"] = kVersion;
    j["format_version"] = kFormatVersion;
    return j.dump(2);
}

std::string ResultTable::to_csv() const {
    std::string s = "experiment,alpha_spec,N_bar,epsilon,rms,seconds\n";
    for (const auto& r : rows) {
        s += r.experiment + "," + r.alpha_spec + "," + std::to_string(r.nbar) +
             "," + fmt(r.epsilon) + "," + fmt(r.rms) + "," + fmt(r.seconds) +
             "\n";
    }
    return s;
}

std::string ResultTable::to_csv_stable() const {
    std::string s = "experiment,alpha_spec,N_bar,epsilon,rms\n";
    for (const auto& r : rows) {
        s += r.experiment + "," + r.alpha_spec + "," + std::to_string(r.nbar) +
             "," + fmt(r.epsilon) + "," + fmt(r.rms) + "\n";
    }
    return s;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path p(path);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    const fs::path tmp = p.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
    }
    fs::rename(tmp, p);
}

// ------------------------------------------------------------------ shared

namespace {

RbfKernel kernel_for(const RunConfig& cfg, int d) {
    if (cfg.kernel == "gaussian") return RbfKernel::gaussian(cfg.epsilon);
    if (cfg.kernel == "gimq") {
        const double beta = cfg.beta > 0 ? cfg.beta : 0.5 * (d + 1);
        return RbfKernel::gimq(beta, cfg.epsilon);
    }
    if (cfg.kernel == "bessel") {
        const int m = cfg.bessel_m > 0 ? cfg.bessel_m : d + 1;
        return RbfKernel::bessel(m, cfg.epsilon);
    }
    throw ConfigError("unknown kernel '" + cfg.kernel + "'");
}

exterior::QuadratureControl quad_ctl(const RunConfig& cfg) {
    exterior::QuadratureControl q;
    q.rel_tol = cfg.quad_rel_tol;
    q.abs_tol = cfg.quad_abs_tol;
    q.truncation_radius = cfg.truncation_radius;
    return q;
}

std::vector<int> snapshot_steps_for(const RunConfig& cfg, int steps) {
    std::vector<int> ss;
    for (double t : cfg.snapshot_times) {
        const int s = static_cast<int>(std::lround(t / cfg.tau));
        if (s >= 0 && s <= steps) ss.push_back(s);
    }
    if (ss.empty()) ss = {0, steps};
    std::sort(ss.begin(), ss.end());
    ss.erase(std::unique(ss.begin(), ss.end()), ss.end());
    return ss;
}

std::string snapshots_csv(const NodeSet& nodes,
                          const std::vector<int>& interior_index,
                          const std::vector<timestep::Snapshot>& snaps) {
    std::string s = "time,x,y,value\n";
    for (const auto& snap : snaps) {
        for (size_t j = 0; j < interior_index.size(); ++j) {
            const Point& p = nodes.points[interior_index[j]];
            s += fmt(snap.t) + "," + fmt(p[0]) + "," + fmt(p[1]) + "," +
                 fmt(snap.u(static_cast<long>(j))) + "\n";
        }
    }
    return s;
}

// interpolate the benchmark's u on nbar nodes, apply the discrete operator
// at the sample points, return the RMS against the analytic image
double approx_rms_cell(const Domain& dom, const RbfKernel& k,
                       const ExponentField& af,
                       const benchmarks::BenchmarkPair& pair, int nbar,
                       std::span<const Point> pts,
                       std::span<const double> data_integrals,
                       const exterior::QuadratureControl& qctl) {
    const NodeSet nodes = geometry::uniform_nodes(dom, nbar);
    collocation::OperatorSystem sys;
    sys.A = collocation::assemble_interp(nodes, k);
    sys.B = sys.A;
    sys.boundary_mask = nodes.boundary_mask;
    sys.rhs.resize(nodes.n_total());
    for (int i = 0; i < nodes.n_total(); ++i) {
        const Point& p = nodes.points[i];
        sys.rhs(i) = pair.u(std::span<const double>(p.data(), 1));
    }
    const collocation::SolutionField sol =
        collocation::solve_dense(sys, k, nodes);

    const int np = static_cast<int>(pts.size());
    Eigen::VectorXd numeric(np);
    parallel_for(np, [&](int l) {
        const Point& x = pts[static_cast<size_t>(l)];
        const double alpha = geometry::eval_alpha(af, x);
        const rbf::OperatorParams op{1, alpha};
        double acc = 0.0;
        for (int i = 0; i < nodes.n_total(); ++i)
            acc += sol.lambda(i) *
                   rbf::psi_value(k, op, std::fabs(x[0] - nodes.points[i][0]));
        const double cn = rbf::c_norm(1, alpha);
        if (cn != 0.0) {
            std::vector<double> ext(nodes.n_total());
            exterior::exterior_kernel_integral_batch(dom, k, nodes.points, x,
                                                     alpha, qctl, ext);
            double corr = 0.0;
            for (int i = 0; i < nodes.n_total(); ++i)
                corr += sol.lambda(i) * ext[i];
            corr -= data_integrals.empty() ? 0.0 : data_integrals[l];
            acc += cn * corr;
        }
        numeric(l) = acc;
    });

    auto ref = [&](const Point& p) {
        return pair.vo_lap(std::span<const double>(p.data(), 1),
                           geometry::eval_alpha(af, p));
    };
    return rms_error(ref, pts, numeric);
}

void run_approx(const RunConfig& cfg, const benchmarks::BenchmarkPair& pair,
                bool nonhomogeneous, ResultTable& table) {
    const Domain dom = Domain::interval(-1.0, 1.0);
    const RbfKernel k = kernel_for(cfg, 1);
    const auto qctl = quad_ctl(cfg);
    const auto pts = interior_sample_points(dom, cfg.K);

    for (const std::string& spec : cfg.alpha_specs) {
        const ExponentField af = parse_alpha_spec(spec);
        geometry::validate(af, dom);

        // data integrals depend on alpha and the sample points only; cache
        // them across the N_bar sweep
        std::vector<double> data(pts.size(), 0.0);
        if (nonhomogeneous) {
            parallel_for(static_cast<int>(pts.size()), [&](int l) {
                const Point& x = pts[static_cast<size_t>(l)];
                const double alpha = geometry::eval_alpha(af, x);
                if (rbf::c_norm(1, alpha) == 0.0) return;
                auto g = [&pair](const Point& p) {
                    return pair.u(std::span<const double>(p.data(), 1));
                };
                data[static_cast<size_t>(l)] =
                    exterior::exterior_data_integral(dom, g, x, alpha, qctl);
            });
        }
        for (int nbar : cfg.nbars) {
            const double t0 = now_s();
            const double rms = approx_rms_cell(
                dom, k, af, pair, nbar, pts,
                nonhomogeneous ? std::span<const double>(data)
                               : std::span<const double>(),
                qctl);
            table.rows.push_back({cfg.experiment, spec, nbar, cfg.epsilon, rms,
                                  now_s() - t0});
        }
    }
}

void run_poisson(const RunConfig& cfg, ResultTable& table) {
    const Domain dom = Domain::interval(-1.0, 1.0);
    const RbfKernel k = kernel_for(cfg, 1);
    const auto qctl = quad_ctl(cfg);
    const auto pair = benchmarks::compact_pair(3.0, {}, 1);
    const auto pts = interior_sample_points(dom, cfg.K);

    for (const std::string& spec : cfg.alpha_specs) {
        const ExponentField af = parse_alpha_spec(spec);
        geometry::validate(af, dom);
        auto f = [&](const Point& p) {
            return pair.vo_lap(std::span<const double>(p.data(), 1),
                               geometry::eval_alpha(af, p));
        };
        for (int nbar : cfg.nbars) {
            const double t0 = now_s();
            const NodeSet nodes = geometry::uniform_nodes(dom, nbar);
            const auto sys = collocation::assemble_poisson(
                nodes, k, af, dom, f, /*g=*/nullptr, qctl);
            const auto sol = collocation::solve_dense(sys, k, nodes);
            const Eigen::VectorXd numeric = collocation::evaluate(sol, pts);
            auto uref = [&](const Point& p) {
                return pair.u(std::span<const double>(p.data(), 1));
            };
            table.rows.push_back({cfg.experiment, spec, nbar, cfg.epsilon,
                                  rms_error(uref, pts, numeric), now_s() - t0});
        }
    }
}

void run_wave(const RunConfig& cfg, ResultTable& table) {
    const Domain dom = Domain::interval(-20.0, 20.0);
    const RbfKernel k = kernel_for(cfg, 1);
    const auto qctl = quad_ctl(cfg);
    const int nbar = cfg.nbars.empty() ? 641 : cfg.nbars[0];
    const NodeSet nodes = geometry::uniform_nodes(dom, nbar);
    const double a = cfg.wave_a, b = cfg.wave_b, c = cfg.wave_c;

    for (const std::string& spec : cfg.alpha_specs) {
        const double t0 = now_s();
        const ExponentField af = parse_alpha_spec(spec);
        geometry::validate(af, dom);
        const auto aff = collocation::differentiation_operator(
            nodes, k, af, dom, /*g=*/nullptr, qctl);
        const int ni = static_cast<int>(aff.interior_index.size());

        timestep::EvolutionRun run;
        run.op = &aff;
        run.tau = cfg.tau;
        run.steps = static_cast<int>(std::lround(cfg.t_end / cfg.tau));
        run.snapshot_steps = snapshot_steps_for(cfg, run.steps);
        if (run.snapshot_steps.back() != run.steps)
            run.snapshot_steps.push_back(run.steps);
        run.c = c;
        run.u0.resize(ni);
        run.v0.resize(ni);
        for (int j = 0; j < ni; ++j) {
            const double x = nodes.points[aff.interior_index[j]][0];
            const double w = a * (x + 2.0);
            run.u0(j) = 1.0 / std::cosh(w);
            run.v0(j) = b * std::tanh(w) / std::cosh(w);
        }
        const auto snaps = timestep::wave_central(run);

        // RMS against the classical closed-form solution when it applies
        double rms = std::numeric_limits<double>::quiet_NaN();
        if (af.kind == ExponentField::Kind::constant && af.c[0] == 2.0 &&
            std::fabs(c * c * a * a - b * b) < 1e-12) {
            const auto& last = snaps.back();
            double acc = 0.0;
            for (int j = 0; j < ni; ++j) {
                const double x = nodes.points[aff.interior_index[j]][0];
                const double e =
                    last.u(j) - 1.0 / std::cosh(a * (x + 2.0) - b * last.t);
                acc += e * e;
            }
            rms = std::sqrt(acc / ni);
        }
        if (!cfg.out_dir.empty())
            write_file_atomic(cfg.out_dir + "/snapshots_" + af.label + ".csv",
                              snapshots_csv(nodes, aff.interior_index, snaps));
        table.rows.push_back(
            {cfg.experiment, spec, nbar, cfg.epsilon, rms, now_s() - t0});
    }
}

void run_diffusion(const RunConfig& cfg, ResultTable& table) {
    const Domain dom = Domain::notched_channel();
    const RbfKernel k = kernel_for(cfg, 2);
    auto qctl = quad_ctl(cfg);
    if (cfg.quad_rel_tol <= 1e-10) {  // 2-d default is looser
        qctl.rel_tol = 1e-6;
        qctl.abs_tol = 1e-9;
    }
    const int res[2] = {49, 17};  // h = 1/8, N_bar = 713
    const NodeSet nodes = geometry::uniform_nodes(dom, res);

    for (const std::string& spec : cfg.alpha_specs) {
        const double t0 = now_s();
        const ExponentField af = parse_alpha_spec(spec);
        geometry::validate(af, dom);
        const auto aff = collocation::differentiation_operator(
            nodes, k, af, dom, /*g=*/nullptr, qctl);
        const int ni = static_cast<int>(aff.interior_index.size());

        timestep::EvolutionRun run;
        run.op = &aff;
        run.tau = cfg.tau;
        run.steps = static_cast<int>(std::lround(cfg.t_end / cfg.tau));
        run.kappa = cfg.kappa;
        run.snapshot_steps.resize(run.steps + 1);
        for (int s = 0; s <= run.steps; ++s) run.snapshot_steps[s] = s;
        run.u0.resize(ni);
        for (int j = 0; j < ni; ++j) {
            const Point& p = nodes.points[aff.interior_index[j]];
            run.u0(j) = (std::fabs(p[0]) <= 0.5 && std::fabs(p[1]) <= 0.5)
                            ? 1.0
                            : 0.0;
        }
        const auto snaps = timestep::crank_nicolson(run);

        // diagnostics: mass, max-norm, x-asymmetry per step
        std::string diag = "time,mass,max_norm,asymmetry\n";
        const double cell = 0.125 * 0.125;
        std::vector<int> mirror(ni, -1);
        for (int j = 0; j < ni; ++j) {
            const Point& p = nodes.points[aff.interior_index[j]];
            for (int l = 0; l < ni; ++l) {
                const Point& qp = nodes.points[aff.interior_index[l]];
                if (std::fabs(qp[0] + p[0]) < 1e-9 &&
                    std::fabs(qp[1] - p[1]) < 1e-9) {
                    mirror[j] = l;
                    break;
                }
            }
        }
        for (const auto& s : snaps) {
            double mass = 0.0, asym = 0.0;
            for (int j = 0; j < ni; ++j) {
                mass += s.u(j) * cell;
                if (mirror[j] >= 0)
                    asym += std::fabs(s.u(j) - s.u(mirror[j]));
            }
            diag += fmt(s.t) + "," + fmt(mass) + "," +
                    fmt(s.u.cwiseAbs().maxCoeff()) + "," + fmt(0.5 * asym) +
                    "\n";
        }
        if (!cfg.out_dir.empty()) {
            write_file_atomic(cfg.out_dir + "/diagnostics_" + af.label + ".csv",
                              diag);
            std::vector<timestep::Snapshot> thin;
            for (const auto& s : snaps)
                for (double t : cfg.snapshot_times)
                    if (std::fabs(s.t - t) < 0.5 * cfg.tau) thin.push_back(s);
            write_file_atomic(cfg.out_dir + "/snapshots_" + af.label + ".csv",
                              snapshots_csv(nodes, aff.interior_index, thin));
        }
        table.rows.push_back({cfg.experiment, spec, nodes.n_total(),
                              cfg.epsilon, snaps.back().u.cwiseAbs().maxCoeff(),
                              now_s() - t0});
    }
}

void run_allen_cahn(const RunConfig& cfg, ResultTable& table) {
    const Domain dom = Domain::box({0.0, 0.0}, {1.0, 1.0});
    const RbfKernel k = kernel_for(cfg, 2);
    auto qctl = quad_ctl(cfg);
    if (cfg.quad_rel_tol <= 1e-10) {
        qctl.rel_tol = 1e-6;
        qctl.abs_tol = 1e-9;
    }
    const int res[2] = {16, 16};  // N_bar = 256
    const NodeSet nodes = geometry::uniform_nodes(dom, res);
    const Point c1{0.38, 0.38}, c2{0.62, 0.62};
    auto minus_one = [](const Point&) { return -1.0; };

    for (const std::string& spec : cfg.alpha_specs) {
        const double t0 = now_s();
        const ExponentField af = parse_alpha_spec(spec);
        geometry::validate(af, dom);
        const auto aff = collocation::differentiation_operator(
            nodes, k, af, dom, minus_one, qctl);
        const int ni = static_cast<int>(aff.interior_index.size());

        timestep::EvolutionRun run;
        run.op = &aff;
        run.tau = cfg.tau;
        run.steps = static_cast<int>(std::lround(cfg.t_end / cfg.tau));
        run.delta = cfg.delta;
        run.snapshot_steps.resize(run.steps + 1);
        for (int s = 0; s <= run.steps; ++s) run.snapshot_steps[s] = s;
        run.u0.resize(ni);
        for (int j = 0; j < ni; ++j) {
            const Point& p = nodes.points[aff.interior_index[j]];
            const double r1 = std::hypot(p[0] - c1[0], p[1] - c1[1]);
            const double r2 = std::hypot(p[0] - c2[0], p[1] - c2[1]);
            run.u0(j) = 1.0 - std::tanh((r1 - 0.12) / cfg.delta) -
                        std::tanh((r2 - 0.12) / cfg.delta);
        }
        const auto snaps = timestep::rk4_allen_cahn(run);

        std::string diag = "time,left_max,right_max,min_u,max_u\n";
        for (const auto& s : snaps) {
            double lm = -2.0, rm = -2.0;
            for (int j = 0; j < ni; ++j) {
                const Point& p = nodes.points[aff.interior_index[j]];
                if (std::hypot(p[0] - c1[0], p[1] - c1[1]) <= 0.18)
                    lm = std::max(lm, s.u(j));
                if (std::hypot(p[0] - c2[0], p[1] - c2[1]) <= 0.18)
                    rm = std::max(rm, s.u(j));
            }
            diag += fmt(s.t) + "," + fmt(lm) + "," + fmt(rm) + "," +
                    fmt(s.u.minCoeff()) + "," + fmt(s.u.maxCoeff()) + "\n";
        }
        if (!cfg.out_dir.empty()) {
            write_file_atomic(cfg.out_dir + "/diagnostics_" + af.label + ".csv",
                              diag);
            std::vector<timestep::Snapshot> thin;
            for (const auto& s : snaps)
                for (double t : cfg.snapshot_times)
                    if (std::fabs(s.t - t) < 0.5 * cfg.tau) thin.push_back(s);
            write_file_atomic(cfg.out_dir + "/snapshots_" + af.label + ".csv",
                              snapshots_csv(nodes, aff.interior_index, thin));
        }
        table.rows.push_back({cfg.experiment, spec, nodes.n_total(),
                              cfg.epsilon, snaps.back().u.maxCoeff(),
                              now_s() - t0});
    }
}

void run_specfun_eval(const RunConfig& cfg, ResultTable& table) {
    const auto& a = cfg.args;
    auto need = [&](size_t n) {
        if (a.size() != n)
            throw ConfigError("specfun_eval: " + cfg.function + " needs " +
                              std::to_string(n) + " args");
    };
    double v = 0.0;
    const double t0 = now_s();
    if (cfg.function == "ln_gamma") {
        need(1);
        v = specfun::ln_gamma(a[0]).log_abs;
    } else if (cfg.function == "gamma") {
        need(1);
        v = specfun::gamma_fn(a[0]);
    } else if (cfg.function == "recip_gamma") {
        need(1);
        v = specfun::recip_gamma(a[0]);
    } else if (cfg.function == "pochhammer") {
        need(2);
        v = specfun::pochhammer(a[0], static_cast<int>(a[1]));
    } else if (cfg.function == "hyp1f1") {
        need(3);
        v = specfun::hyp1f1(a[0], a[1], a[2]);
    } else if (cfg.function == "hyp2f1") {
        need(4);
        v = specfun::hyp2f1(a[0], a[1], a[2], a[3]);
    } else if (cfg.function == "hyp1f2") {
        need(4);
        v = specfun::hyp1f2(a[0], a[1], a[2], a[3]);
    } else if (cfg.function == "bessel_j") {
        need(2);
        v = specfun::bessel_j(a[0], a[1]);
    } else if (cfg.function == "c_norm") {
        need(2);
        v = rbf::c_norm(static_cast<int>(a[0]), a[1]);
    } else if (cfg.function == "cos_identity") {
        need(3);
        v = benchmarks::cos_identity(static_cast<int>(a[0]), a[1], a[2]);
    } else if (cfg.function == "sinc_identity") {
        need(3);
        v = benchmarks::sinc_identity(static_cast<int>(a[0]), a[1], a[2]);
    } else {
        throw ConfigError("specfun_eval: unknown function '" + cfg.function +
                          "'");
    }
    std::cout << cfg.function << " = " << fmt(v) << "\n";
    table.rows.push_back(
        {cfg.experiment, cfg.function, 0, cfg.epsilon, v, now_s() - t0});
}

void run_verify_oracle(const RunConfig& cfg, ResultTable& table) {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> eps_d(0.5, 3.0), r_d(0.0, 3.0);
    const double alphas[3] = {0.4, 1.0, 1.5};
    for (int s = 0; s < cfg.oracle_samples; ++s) {
        const double t0 = now_s();
        const int fam = s % 3;
        const double alpha = alphas[rng() % 3];
        const double eps = eps_d(rng);
        const double r = r_d(rng);
        RbfKernel k = fam == 0   ? RbfKernel::gaussian(eps)
                      : fam == 1 ? RbfKernel::gimq(1.0, eps)
                                 : RbfKernel::bessel(2, eps);
        const double psi = rbf::psi_value(k, {1, alpha}, r);
        auto u = [&k](double y) { return rbf::kernel_value(k, std::fabs(y)); };
        const double pv = oracle::pv_vo_laplacian_1d(u, r, alpha, 1e-8);
        const double rel =
            std::fabs(psi - pv) / std::max(std::fabs(pv), 1e-12);
        std::cout << "psi vs PV oracle: " << k.name() << " alpha=" << alpha
                  << " eps=" << eps << " r=" << r << " rel=" << rel << "\n";
        table.rows.push_back({cfg.experiment,
                              std::string(k.name()) + ":" + fmt(alpha), s, eps,
                              rel, now_s() - t0});
    }
}

}  // namespace

ResultTable run(const RunConfig& cfg) {
    ResultTable table;
    if (cfg.experiment == "approx_example1") {
        run_approx(cfg, benchmarks::example1_pair(), /*nonhomogeneous=*/true,
                   table);
    } else if (cfg.experiment == "approx_example2") {
        run_approx(cfg, benchmarks::compact_pair(1.0, {}, 1),
                   /*nonhomogeneous=*/false, table);
    } else if (cfg.experiment == "poisson") {
        run_poisson(cfg, table);
    } else if (cfg.experiment == "wave") {
        run_wave(cfg, table);
    } else if (cfg.experiment == "diffusion") {
        run_diffusion(cfg, table);
    } else if (cfg.experiment == "allen_cahn") {
        run_allen_cahn(cfg, table);
    } else if (cfg.experiment == "specfun_eval") {
        run_specfun_eval(cfg, table);
    } else if (cfg.experiment == "verify_oracle") {
        run_verify_oracle(cfg, table);
    } else {
        throw ConfigError("unknown experiment '" + cfg.experiment + "'");
    }
    if (!cfg.out_dir.empty()) {
        write_file_atomic(cfg.out_dir + "/results.csv", table.to_csv());
        write_file_atomic(cfg.out_dir + "/run_meta.json", cfg.to_json());
    }
    return table;
}

}  // namespace volap::experiments
