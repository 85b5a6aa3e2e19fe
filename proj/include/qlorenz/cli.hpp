// Copyright 2026 The qlorenz Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Command-line driver: simulate, compare, richardson, cond-sweep, decompose.
 *
 * Value precedence is flag > config file > preset > built-in default. Exit
 * codes are 0 on success, 1 for usage/config/IO errors and 2 when the
 * integration diverges. CSV floats use 17 significant digits so output is
 * lossless and byte-reproducible.
 */
#pragma once

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "analysis.hpp"
#include "lorenz.hpp"
#include "numkernel.hpp"
#include "parallel.hpp"
#include "pauli.hpp"
#include "vqls.hpp"

namespace qlorenz::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitDiverged = 2;

/// Usage, configuration or IO problem; maps to exit code 1.
class UsageError : public Error {
  public:
    explicit UsageError(const std::string &what) : Error(what) {}
};

inline std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

/// Parses "a,b,c,..." into doubles; every field must be a complete number.
inline std::vector<double> parse_real_list(const std::string &text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string field;
    while (std::getline(ss, field, ',')) {
        const auto first = field.find_first_not_of(" \t");
        const auto last = field.find_last_not_of(" \t");
        if (first == std::string::npos) {
            throw UsageError("empty entry in list '" + text + "'");
        }
        field = field.substr(first, last - first + 1);
        char *end = nullptr;
        const double v = std::strtod(field.c_str(), &end);
        if (end != field.c_str() + field.size() || !std::isfinite(v)) {
            throw UsageError("malformed number '" + field + "' in '" + text +
                             "'");
        }
        out.push_back(v);
    }
    if (out.empty() || (!text.empty() && text.back() == ',')) {
        throw UsageError("malformed list '" + text + "'");
    }
    return out;
}

/// Parses `re`, `re+imj`, `re-imj` or `imj` (an `i` suffix is also accepted).
inline num::Complex parse_complex(const std::string &token) {
    auto to_double = [&](const std::string &s) {
        if (s.empty() || s == "+" || s == "-") {
            return s == "-" ? -1.0 : 1.0;
        }
        char *end = nullptr;
        const double v = std::strtod(s.c_str(), &end);
        if (end != s.c_str() + s.size() || !std::isfinite(v)) {
            throw UsageError("malformed matrix entry '" + token + "'");
        }
        return v;
    };
    if (token.empty()) {
        throw UsageError("empty matrix entry");
    }
    const char tail = token.back();
    if (tail != 'j' && tail != 'i') {
        char *end = nullptr;
        const double v = std::strtod(token.c_str(), &end);
        if (end != token.c_str() + token.size() || !std::isfinite(v)) {
            throw UsageError("malformed matrix entry '" + token + "'");
        }
        return {v, 0.0};
    }
    const std::string body = token.substr(0, token.size() - 1);
    std::size_t split = std::string::npos;
    for (std::size_t i = body.size(); i-- > 1;) {
        if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' &&
            body[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    if (split == std::string::npos) {
        return {0.0, to_double(body)};
    }
    const std::string re = body.substr(0, split);
    char *end = nullptr;
    const double re_v = std::strtod(re.c_str(), &end);
    if (re.empty() || end != re.c_str() + re.size()) {
        throw UsageError("malformed matrix entry '" + token + "'");
    }
    return {re_v, to_double(body.substr(split))};
}

/// Whitespace-separated dense rows, one row per line; '#' starts a comment.
inline num::ComplexMatrix read_matrix(std::istream &is) {
    std::vector<std::vector<num::Complex>> rows;
    std::string line;
    while (std::getline(is, line)) {
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream ls(line);
        std::vector<num::Complex> row;
        std::string tok;
        while (ls >> tok) {
            row.push_back(parse_complex(tok));
        }
        if (!row.empty()) {
            rows.push_back(std::move(row));
        }
    }
    if (rows.empty()) {
        throw UsageError("matrix file has no rows");
    }
    num::ComplexMatrix m(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != m.cols()) {
            throw UsageError("matrix row " + std::to_string(r + 1) +
                             " has " + std::to_string(rows[r].size()) +
                             " entries, expected " +
                             std::to_string(m.cols()));
        }
        for (std::size_t c = 0; c < m.cols(); ++c) {
            m(r, c) = rows[r][c];
        }
    }
    return m;
}

/// Fully resolved settings of one invocation.
struct RunConfig {
    lorenz::LorenzParams params;
    lorenz::State3 start{1.0, -2.0, 4.0};
    double h = 5e-3;
    std::size_t steps = 2000;
    lorenz::SolverKind solver = lorenz::SolverKind::direct;
    vqls::VqlsConfig vqls;
    bool warm_start = true;
    std::optional<std::uint64_t> seed;
    std::string output_path;
    std::size_t threads = default_thread_count();
    bool pad = false;

    // command specific
    bool self_compare = false;
    std::vector<double> h_list;
    double h_min = 0.0;
    double h_max = 0.1;
    std::size_t count = 100;
    std::string source = "lorenz-HG";
    std::string matrix_path;

    [[nodiscard]] lorenz::Solver make_solver(lorenz::SolverKind kind) const {
        lorenz::Solver s;
        s.kind = kind;
        s.vqls = vqls;
        s.vqls.seed = seed.value_or(0);
        s.vqls.threads = threads;
        s.warm_start = warm_start;
        return s;
    }
};

/// Values a preset supplies for options the user left unset.
struct Preset {
    std::optional<double> sigma, rho, beta, h;
    std::optional<lorenz::State3> start;
    std::optional<std::size_t> steps;
    std::optional<std::string> solver;
};

/**
 * `attractor`: start (1,-2,4), h = 5e-3, classic parameters, 2000 steps.
 * `attractor-alt`: same with the alternative start (1,2,-4).
 * `bifurcation`: start (1e-16,-1e-16,1e-16), h = 1e-3, rho = 13.92655742,
 * 10000 steps. The value 13.92655741 is also quoted for this experiment;
 * the preset keeps 13.92655742.
 */
inline const std::map<std::string, Preset> &presets() {
    static const std::map<std::string, Preset> table = {
        {"attractor",
         {10.0, 28.0, 8.0 / 3.0, 5e-3, lorenz::State3{1.0, -2.0, 4.0}, 2000,
          "direct"}},
        {"attractor-alt",
         {10.0, 28.0, 8.0 / 3.0, 5e-3, lorenz::State3{1.0, 2.0, -4.0}, 2000,
          "direct"}},
        {"bifurcation",
         {10.0, 13.92655742, 8.0 / 3.0, 1e-3,
          lorenz::State3{1e-16, -1e-16, 1e-16}, 10000, "direct"}},
    };
    return table;
}

namespace detail {

/// Raw option storage bound to CLI11; strings are parsed after the fact.
struct RawOptions {
    double sigma = 10.0, rho = 28.0, beta = 8.0 / 3.0, h = 5e-3;
    std::size_t steps = 2000;
    // Lists arrive as one "a,b,c" token from the command line but are split
    // into separate values by the config reader, hence vectors.
    std::vector<std::string> start{"1,-2,4"};
    std::string solver = "direct";
    std::size_t layers = 5;
    std::size_t max_iter = 200;
    double tol = 1e-8;
    double stepsize = 0.1;
    std::size_t restarts = 10;
    std::uint64_t seed = 0;
    bool warm_start = true;
    std::string preset;
    std::string out;
    std::size_t threads = default_thread_count();
    bool pad = false;
    bool self_compare = false;
    std::vector<std::string> h_list;
    double h_min = 0.0, h_max = 0.1;
    std::size_t count = 100;
    std::string source = "lorenz-HG";
    std::string matrix;
};

inline std::string join(const std::vector<std::string> &parts) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        out += (i ? "," : "") + parts[i];
    }
    return out;
}

inline lorenz::State3 parse_state(const std::string &text) {
    const auto v = parse_real_list(text);
    if (v.size() != 3) {
        throw UsageError("--start needs x,y,z, got '" + text + "'");
    }
    return {v[0], v[1], v[2]};
}

class CsvFile {
  public:
    explicit CsvFile(const std::string &path) {
        if (path.empty()) {
            throw UsageError("--out is required");
        }
        os_.open(path, std::ios::out | std::ios::trunc | std::ios::binary);
        if (!os_) {
            throw UsageError("cannot open '" + path + "' for writing");
        }
    }
    std::ofstream &stream() { return os_; }
    void close() {
        os_.flush();
        if (!os_) {
            throw UsageError("write failed");
        }
        os_.close();
    }

  private:
    std::ofstream os_;
};

inline void write_summary(std::ostream &out, const nlohmann::json &j) {
    out << j.dump() << '\n';
}

inline void write_trajectory_rows(std::ostream &os,
                                  const lorenz::Trajectory &traj) {
    const bool with_diag = traj.solver == lorenz::SolverKind::vqls;
    for (std::size_t n = 0; n < traj.points.size(); ++n) {
        const auto &s = traj.points[n];
        os << n << ',' << fmt17(static_cast<double>(n) * traj.h) << ','
           << fmt17(s.x) << ',' << fmt17(s.y) << ',' << fmt17(s.z);
        if (with_diag) {
            if (n == 0 || n - 1 >= traj.diagnostics.size()) {
                os << ",,,";
            } else {
                const auto &d = traj.diagnostics[n - 1];
                os << ',' << fmt17(d.cost) << ',' << d.iterations << ','
                   << fmt17(d.residual);
            }
        }
        os << '\n';
    }
}

} // namespace detail

inline int cmd_simulate(const RunConfig &cfg, std::ostream &out) {
    detail::CsvFile file(cfg.output_path);
    auto &os = file.stream();
    const bool quantum = cfg.solver == lorenz::SolverKind::vqls;
    os << "step,t,x,y,z" << (quantum ? ",cost,iterations,residual" : "")
       << '\n';
    const lorenz::StepSize h(cfg.h);
    int code = kExitOk;
    lorenz::Trajectory traj;
    std::optional<std::size_t> diverged;
    try {
        traj = lorenz::trajectory(cfg.start, cfg.params, h, cfg.steps,
                                  cfg.make_solver(cfg.solver));
    } catch (const lorenz::DivergedAt &e) {
        traj = e.partial();
        diverged = e.step();
        code = kExitDiverged;
    }
    detail::write_trajectory_rows(os, traj);
    if (diverged) {
        os << "# diverged at step " << *diverged << '\n';
    }
    file.close();
    nlohmann::json summary = {{"command", "simulate"},
                              {"solver", lorenz::to_string(cfg.solver)},
                              {"rows", traj.points.size()},
                              {"diverged", diverged.has_value()}};
    if (diverged) {
        summary["diverged_at"] = *diverged;
    }
    detail::write_summary(out, summary);
    return code;
}

inline int cmd_compare(const RunConfig &cfg, std::ostream &out) {
    detail::CsvFile file(cfg.output_path);
    auto &os = file.stream();
    os << "step,t,x_c,y_c,z_c,x_q,y_q,z_q,rel_err,cost,residual\n";
    const lorenz::StepSize h(cfg.h);
    const auto quantum_kind = cfg.self_compare ? lorenz::SolverKind::direct
                                               : lorenz::SolverKind::vqls;

    std::optional<std::size_t> diverged;
    auto run = [&](lorenz::SolverKind kind) {
        try {
            return lorenz::trajectory(cfg.start, cfg.params, h, cfg.steps,
                                      cfg.make_solver(kind));
        } catch (const lorenz::DivergedAt &e) {
            diverged = diverged ? std::min(*diverged, e.step()) : e.step();
            return e.partial();
        }
    };
    const lorenz::Trajectory classical = run(lorenz::SolverKind::direct);
    const lorenz::Trajectory quantum = run(quantum_kind);

    const std::size_t rows =
        std::min(classical.points.size(), quantum.points.size());
    double sum = 0.0;
    double worst = 0.0;
    for (std::size_t n = 0; n < rows; ++n) {
        const auto &c = classical.points[n];
        const auto &q = quantum.points[n];
        const double err = analysis::relative_error(c, q);
        if (n > 0) {
            sum += err;
            worst = std::max(worst, err);
        }
        os << n << ',' << fmt17(static_cast<double>(n) * cfg.h) << ','
           << fmt17(c.x) << ',' << fmt17(c.y) << ',' << fmt17(c.z) << ','
           << fmt17(q.x) << ',' << fmt17(q.y) << ',' << fmt17(q.z) << ','
           << fmt17(err) << ',';
        if (n > 0 && n - 1 < quantum.diagnostics.size()) {
            const auto &d = quantum.diagnostics[n - 1];
            os << fmt17(d.cost) << ',' << fmt17(d.residual);
        } else {
            os << ',';
        }
        os << '\n';
    }
    if (diverged) {
        os << "# diverged at step " << *diverged << '\n';
    }
    file.close();
    const double compared = rows > 1 ? static_cast<double>(rows - 1) : 1.0;
    nlohmann::json summary = {
        {"command", "compare"},
        {"steps", rows > 0 ? rows - 1 : 0},
        {"quantum_solver", lorenz::to_string(quantum_kind)},
        {"mean_rel_err", sum / compared},
        {"max_rel_err", worst},
        {"diverged", diverged.has_value()}};
    detail::write_summary(out, summary);
    return diverged ? kExitDiverged : kExitOk;
}

inline int cmd_richardson(const RunConfig &cfg, std::ostream &out) {
    std::vector<double> hs = cfg.h_list.empty() ? std::vector<double>{cfg.h}
                                                : cfg.h_list;
    std::vector<lorenz::StepSize> steps;
    for (double h : hs) {
        if (!(h > 0.0) || !(2.0 * h <= lorenz::kMaxStep)) {
            throw UsageError("Richardson step " + fmt17(h) +
                             " needs 0 < 2h <= 0.5");
        }
        steps.emplace_back(h);
    }
    detail::CsvFile file(cfg.output_path);
    auto &os = file.stream();
    os << "step,h,e_x,e_y,e_z,total\n";
    const lorenz::Solver solver = cfg.make_solver(cfg.solver);
    nlohmann::json per_h = nlohmann::json::array();
    int code = kExitOk;
    for (const auto &h : steps) {
        std::vector<analysis::RichardsonEstimate> series;
        try {
            series = analysis::richardson_series(
                cfg.start, cfg.params, h, cfg.steps, solver, cfg.threads);
        } catch (const lorenz::DivergedAt &e) {
            os << "# diverged at step " << e.step()
               << " for h=" << fmt17(h.value()) << '\n';
            code = kExitDiverged;
            break;
        }
        for (std::size_t n = 0; n < series.size(); ++n) {
            const auto &e = series[n];
            os << n << ',' << fmt17(e.h) << ',' << fmt17(e.e_x) << ','
               << fmt17(e.e_y) << ',' << fmt17(e.e_z) << ','
               << fmt17(e.total) << '\n';
        }
        per_h.push_back(
            {{"h", h.value()}, {"mean_total", analysis::mean_total(series)}});
    }
    file.close();
    detail::write_summary(out, {{"command", "richardson"},
                                {"solver", lorenz::to_string(cfg.solver)},
                                {"steps", cfg.steps},
                                {"mean_totals", per_h}});
    return code;
}

inline int cmd_cond_sweep(const RunConfig &cfg, std::ostream &out) {
    if (!(cfg.h_max > cfg.h_min)) {
        throw UsageError("--h-min must be below --h-max");
    }
    if (cfg.count == 0) {
        throw UsageError("--count must be >= 1");
    }
    const auto grid = analysis::uniform_grid(cfg.h_min, cfg.h_max, cfg.count);
    detail::CsvFile file(cfg.output_path);
    const auto samples =
        analysis::condition_sweep(cfg.params, grid, cfg.threads);
    auto &os = file.stream();
    os << "h,kappa_A,kappa_dilation\n";
    double max_a = 0.0;
    double max_d = 0.0;
    for (const auto &s : samples) {
        os << fmt17(s.h) << ',' << fmt17(s.kappa_a) << ','
           << fmt17(s.kappa_dilation) << '\n';
        max_a = std::max(max_a, s.kappa_a);
        max_d = std::max(max_d, s.kappa_dilation);
    }
    file.close();
    detail::write_summary(out, {{"command", "cond-sweep"},
                                {"count", samples.size()},
                                {"max_kappa_A", max_a},
                                {"max_kappa_dilation", max_d}});
    return kExitOk;
}

inline int cmd_decompose(const RunConfig &cfg, std::ostream &out) {
    num::ComplexMatrix m;
    std::optional<num::ComplexMatrix> reference;
    if (cfg.source == "lorenz-A") {
        m = lorenz::build_nonlinear_system(cfg.params, cfg.h);
    } else if (cfg.source == "lorenz-HG") {
        const auto a = lorenz::build_nonlinear_system(cfg.params, cfg.h);
        const auto b = lorenz::build_rhs(cfg.start);
        m = vqls::build_problem(a, b).hamiltonian_dense;
    } else if (cfg.source == "file") {
        if (cfg.matrix_path.empty()) {
            throw UsageError("--matrix is required for --source file");
        }
        std::ifstream in(cfg.matrix_path);
        if (!in) {
            throw UsageError("cannot read '" + cfg.matrix_path + "'");
        }
        m = read_matrix(in);
    } else {
        throw UsageError("unknown --source '" + cfg.source + "'");
    }
    if (!m.is_square()) {
        throw UsageError("matrix is " + m.shape_string() + ", not square");
    }
    if (!num::is_power_of_two(m.rows())) {
        if (!cfg.pad) {
            throw UsageError("dimension " + std::to_string(m.rows()) +
                             " is not a power of two (use --pad)");
        }
        m = num::pad_to_power_of_two(m, num::ComplexVector(m.rows())).matrix;
    }
    if (m.rows() < 2) {
        // A 1x1 matrix is padded to 2x2 so it acts on one qubit.
        num::ComplexMatrix padded = num::ComplexMatrix::identity(2);
        padded(0, 0) = m(0, 0);
        m = padded;
    }
    const pauli::PauliSum sum = pauli::decompose(m);
    const double roundtrip = (pauli::reconstruct(sum) - m).max_abs();

    detail::CsvFile file(cfg.output_path);
    pauli::write_text(file.stream(), sum);
    file.close();
    detail::write_summary(out, {{"command", "decompose"},
                                {"source", cfg.source},
                                {"qubits", sum.qubit_count()},
                                {"terms", sum.size()},
                                {"roundtrip_error", roundtrip}});
    return kExitOk;
}

/**
 * Entry point shared by the binary and the tests. Diagnostics go to `err`,
 * JSON summaries to `out`.
 */
inline int run(int argc, const char *const *argv, std::ostream &out,
               std::ostream &err) {
    CLI::App app{"Lorenz integration through linear-system solves (direct "
                 "LU or a simulated variational quantum linear solver)",
                 "qlorenz"};
    app.set_config("--config", "", "Flat key = value file mirroring flag names");
    // `--h` is the step size, so help is only reachable as --help.
    app.set_help_flag("--help", "Print this help message and exit");
    app.require_subcommand(1, 1);
    app.fallthrough();

    detail::RawOptions raw;
    auto *o_sigma = app.add_option("--sigma", raw.sigma, "Prandtl number");
    auto *o_rho = app.add_option("--rho", raw.rho, "Rayleigh number");
    auto *o_beta = app.add_option("--beta", raw.beta, "Geometric factor");
    auto *o_h = app.add_option("--h", raw.h, "Time step");
    auto *o_steps = app.add_option("--steps", raw.steps, "Number of steps T");
    auto *o_start = app.add_option("--start", raw.start, "Start state x,y,z")
                        ->expected(1, 3);
    auto *o_solver = app.add_option("--solver", raw.solver,
                                    "explicit | direct | vqls");
    app.add_option("--layers", raw.layers, "Ansatz layers");
    app.add_option("--max-iter", raw.max_iter, "Max descent iterations");
    app.add_option("--tol", raw.tol, "Cost-change convergence tolerance");
    app.add_option("--stepsize", raw.stepsize, "Gradient-descent step size");
    app.add_option("--restarts", raw.restarts, "Random restarts per solve");
    auto *o_seed = app.add_option("--seed", raw.seed, "RNG seed");
    app.add_option("--warm-start", raw.warm_start,
                   "Warm start VQLS steps from the previous angles");
    auto *o_preset = app.add_option("--preset", raw.preset,
                                    "attractor | attractor-alt | bifurcation");
    app.add_option("--out", raw.out, "Output file");
    app.add_option("--threads", raw.threads, "Worker threads");
    app.add_flag("--pad", raw.pad, "Pad non power-of-two matrices");
    app.add_flag("--self-compare", raw.self_compare,
                 "compare: direct against direct");
    app.add_option("--h-list", raw.h_list, "richardson: comma-separated h")
        ->expected(1, 64);
    app.add_option("--h-min", raw.h_min, "cond-sweep: lower end (excluded)");
    app.add_option("--h-max", raw.h_max, "cond-sweep: upper end");
    app.add_option("--count", raw.count, "cond-sweep: number of points");
    app.add_option("--source", raw.source,
                   "decompose: lorenz-A | lorenz-HG | file");
    app.add_option("--matrix", raw.matrix, "decompose: matrix file");

    auto *simulate = app.add_subcommand("simulate", "Integrate a trajectory");
    auto *compare =
        app.add_subcommand("compare", "Direct vs VQLS trajectories");
    auto *richardson =
        app.add_subcommand("richardson", "Richardson step-size error");
    auto *cond = app.add_subcommand("cond-sweep", "Condition number vs h");
    auto *decompose = app.add_subcommand("decompose", "Pauli decomposition");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        RunConfig cfg;
        Preset preset;
        if (!raw.preset.empty()) {
            const auto it = presets().find(raw.preset);
            if (it == presets().end()) {
                throw UsageError("unknown preset '" + raw.preset + "'");
            }
            preset = it->second;
        } else if (o_preset->count() > 0) {
            throw UsageError("empty --preset");
        }
        auto pick = [](const CLI::Option *opt, const auto &given,
                       const auto &from_preset) {
            using T = std::decay_t<decltype(given)>;
            if (opt->count() > 0 || !from_preset) {
                return given;
            }
            return T(*from_preset);
        };
        cfg.params = {pick(o_sigma, raw.sigma, preset.sigma),
                      pick(o_rho, raw.rho, preset.rho),
                      pick(o_beta, raw.beta, preset.beta)};
        cfg.params.validate();
        cfg.h = pick(o_h, raw.h, preset.h);
        cfg.steps = pick(o_steps, raw.steps, preset.steps);
        cfg.start = (o_start->count() > 0 || !preset.start)
                        ? detail::parse_state(detail::join(raw.start))
                        : *preset.start;
        cfg.solver = lorenz::solver_kind_from_string(
            pick(o_solver, raw.solver, preset.solver));
        cfg.vqls.layer_count = raw.layers;
        cfg.vqls.max_iterations = raw.max_iter;
        cfg.vqls.conv_tol = raw.tol;
        cfg.vqls.stepsize = raw.stepsize;
        cfg.vqls.restarts = raw.restarts;
        cfg.vqls.validate();
        cfg.warm_start = raw.warm_start;
        if (o_seed->count() > 0) {
            cfg.seed = raw.seed;
        }
        cfg.output_path = raw.out;
        cfg.threads = std::max<std::size_t>(1, raw.threads);
        cfg.pad = raw.pad;
        cfg.self_compare = raw.self_compare;
        if (!raw.h_list.empty()) {
            cfg.h_list = parse_real_list(detail::join(raw.h_list));
        }
        cfg.h_min = raw.h_min;
        cfg.h_max = raw.h_max;
        cfg.count = raw.count;
        cfg.source = raw.source;
        cfg.matrix_path = raw.matrix;

        if (cfg.steps == 0) {
            throw UsageError("--steps must be >= 1");
        }
        if (!(cfg.h > 0.0) || !(cfg.h <= lorenz::kMaxStep)) {
            throw UsageError("--h must lie in (0, 0.5]");
        }
        const bool uses_vqls =
            (compare->parsed() && !cfg.self_compare) ||
            ((simulate->parsed() || richardson->parsed()) &&
             cfg.solver == lorenz::SolverKind::vqls);
        if (uses_vqls && !cfg.seed) {
            throw UsageError("--seed is required for VQLS runs");
        }

        if (simulate->parsed()) {
            return cmd_simulate(cfg, out);
        }
        if (compare->parsed()) {
            return cmd_compare(cfg, out);
        }
        if (richardson->parsed()) {
            return cmd_richardson(cfg, out);
        }
        if (cond->parsed()) {
            return cmd_cond_sweep(cfg, out);
        }
        if (decompose->parsed()) {
            return cmd_decompose(cfg, out);
        }
        throw UsageError("no subcommand");
    } catch (const lorenz::DivergedAt &e) {
        err << "error: " << e.what() << '\n';
        return kExitDiverged;
    } catch (const Overflow &e) {
        err << "error: " << e.what() << '\n';
        return kExitDiverged;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

} // namespace qlorenz::cli
