#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "volap/geometry.hpp"

namespace volap::experiments {

inline constexpr const char* kVersion = "volap 0.1.0";
inline constexpr const char* kFormatVersion = "1";

struct RunConfig {
    std::string experiment;  // approx_example1 | approx_example2 | poisson |
                             // wave | diffusion | allen_cahn | specfun_eval |
                             // verify_oracle
    std::string kernel = "gimq";
    double beta = 0.0;    // 0 = default (d+1)/2
    int bessel_m = 0;     // 0 = default d+1
    double epsilon = 1.0;
    std::vector<int> nbars;
    std::vector<std::string> alpha_specs;
    int K = 1000;  // interpolation points for the RMS metric
    double series_rel_tol = 1e-13;
    double quad_rel_tol = 1e-10;
    double quad_abs_tol = 1e-13;
    double truncation_radius = 0.0;
    double tau = 1e-3;
    double t_end = 1.0;
    double wave_c = 0.2, wave_a = 3.0, wave_b = 0.6;
    double kappa = 0.5;
    double delta = 0.1;
    std::vector<double> snapshot_times;
    std::string out_dir;  // empty = no artifact files
    std::uint64_t seed = 12345;
    int oracle_samples = 30;
    std::string function;      // specfun_eval
    std::vector<double> args;  // specfun_eval

    static RunConfig from_json_file(const std::string& path);
    static RunConfig from_json_text(const std::string& text);
    std::string to_json() const;  // full config echo
};

struct ResultRow {
    std::string experiment;
    std::string alpha_spec;
    int nbar = 0;
    double epsilon = 0.0;
    double rms = 0.0;  // RMS error or experiment diagnostic
    double seconds = 0.0;
};

struct ResultTable {
    std::vector<ResultRow> rows;
    std::string to_csv() const;
    // the volatile wall-time column stripped, for determinism comparisons
    std::string to_csv_stable() const;
};

// Root-mean-square error over K sample points.
double rms_error(const std::function<double(const geometry::Point&)>& ref,
                 std::span<const geometry::Point> pts,
                 const Eigen::VectorXd& numeric);

// K uniform interior points of a 1-d interval, endpoints excluded.
std::vector<geometry::Point> interior_sample_points(const geometry::Domain& dom,
                                                    int K);

geometry::ExponentField parse_alpha_spec(const std::string& spec);

// Runs one experiment; writes results.csv / run_meta.json / snapshot CSVs
// under cfg.out_dir when set (atomically), and returns the table.
ResultTable run(const RunConfig& cfg);

void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace volap::experiments
