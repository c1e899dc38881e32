#include "focklab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "focklab/asymlab.hpp"
#include "focklab/hankel.hpp"
#include "focklab/kernel.hpp"
#include "focklab/mlf.hpp"
#include "focklab/quadrature.hpp"
#include "focklab/symbol_io.hpp"

namespace focklab::cli {

namespace {

const std::vector<std::string> kKnownKeys = {
    "space.d",       "space.m",        "space.alpha",   "symbol.file",
    "symbol.family", "symbol.c",       "symbol.nu",     "symbol.seed",
    "symbol.decay",  "symbol.max_degree", "symbol.n",
    "truncation.N",  "truncation.N_list", "grid.r_min", "grid.r_max",
    "grid.count",    "grid.angles",    "ml.m_list",     "ml.k_list",
    "ml.radii",      "ml.theta_fracs", "hankel.c_list", "hankel.m_list",
    "kernel.p_list", "kernel.radii",   "fejer.N_list",  "dilate.r_list",
    "laplace.lambda", "project.max_degree", "compact.radii", "seed"};

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

/// flat dotted-key config; CLI flags override file values
class Config {
  public:
    void load_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open config file: " + path);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const std::string t = trim(line);
            if (t.empty() || t[0] == '#') continue;
            const auto eq = t.find('=');
            if (eq == std::string::npos)
                throw ConfigError("config line " + std::to_string(lineno) +
                                  " is not 'key = value': '" + t + "'");
            set(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
        }
    }

    void set(const std::string& key, const std::string& value) {
        if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) == kKnownKeys.end())
            throw ConfigError("unknown config key '" + key + "'");
        values_[key] = value;
    }

    bool has(const std::string& key) const { return values_.count(key) > 0; }

    std::string str(const std::string& key, const std::string& dflt) const {
        auto it = values_.find(key);
        return it == values_.end() ? dflt : it->second;
    }

    double num(const std::string& key, double dflt) const {
        auto it = values_.find(key);
        if (it == values_.end()) return dflt;
        try {
            std::size_t pos = 0;
            const double v = std::stod(it->second, &pos);
            if (pos != it->second.size()) throw std::invalid_argument("");
            return v;
        } catch (const std::exception&) {
            throw ConfigError("config key '" + key + "' is not a number: '" +
                              it->second + "'");
        }
    }

    int integer(const std::string& key, int dflt) const {
        const double v = num(key, double(dflt));
        if (v != std::floor(v))
            throw ConfigError("config key '" + key + "' is not an integer");
        return static_cast<int>(v);
    }

    std::vector<double> list(const std::string& key,
                             const std::vector<double>& dflt) const {
        auto it = values_.find(key);
        if (it == values_.end()) return dflt;
        std::vector<double> out;
        std::stringstream ss(it->second);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (item.empty()) continue;
            try {
                out.push_back(std::stod(item));
            } catch (const std::exception&) {
                throw ConfigError("config key '" + key + "' has a bad entry: '" +
                                  item + "'");
            }
        }
        if (out.empty())
            throw ConfigError("config key '" + key + "' parsed to an empty list");
        return out;
    }

  private:
    std::map<std::string, std::string> values_;
};

std::string fmt_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> r) { rows.push_back(std::move(r)); }

    void write_csv(std::ostream& os) const {
        os << "#schema=1\n";
        for (std::size_t i = 0; i < columns.size(); ++i)
            os << columns[i] << (i + 1 < columns.size() ? "," : "\n");
        for (const auto& r : rows)
            for (std::size_t i = 0; i < r.size(); ++i)
                os << r[i] << (i + 1 < r.size() ? "," : "\n");
    }

    nlohmann::json to_json() const {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : rows) {
            nlohmann::json row;
            for (std::size_t i = 0; i < columns.size(); ++i) row[columns[i]] = r[i];
            arr.push_back(row);
        }
        return arr;
    }
};

struct Invariant {
    std::string name;
    double threshold;
    double worst;
    bool pass;
};

struct CommandIO {
    std::string command;
    std::string out_path;
    std::string format = "csv";
    Table table;
    std::vector<Invariant> invariants;
    bool not_converged = false;

    void check(const std::string& name, double threshold, double worst) {
        invariants.push_back({name, threshold, worst, worst <= threshold});
    }
    void check_flag(const std::string& name, bool ok) {
        invariants.push_back({name, 0.5, ok ? 0.0 : 1.0, ok});
    }

    bool all_pass() const {
        return std::all_of(invariants.begin(), invariants.end(),
                           [](const Invariant& i) { return i.pass; });
    }

    int finish() {
        const std::string rows_path =
            out_path.empty() ? ("focklab_" + command + (format == "csv" ? ".csv" : ".json"))
                             : out_path;
        std::ofstream out(rows_path);
        if (!out) throw ConfigError("cannot open output file: " + rows_path);
        if (format == "csv")
            table.write_csv(out);
        else
            out << table.to_json().dump(2) << "\n";

        nlohmann::json summary;
        summary["schema"] = 1;
        summary["command"] = command;
        summary["pass"] = all_pass() && !not_converged;
        summary["not_converged"] = not_converged;
        auto& inv = summary["invariants"] = nlohmann::json::array();
        for (const auto& i : invariants)
            inv.push_back({{"name", i.name},
                           {"threshold", i.threshold},
                           {"worst", i.worst},
                           {"pass", i.pass}});
        std::ofstream sum(rows_path + ".summary.json");
        if (!sum) throw ConfigError("cannot open summary file");
        sum << summary.dump(2) << "\n";

        if (not_converged) return 3;
        return all_pass() ? 0 : 2;
    }
};

TaylorSymbol symbol_from_config(const Config& cfg, long seed_flag) {
    if (cfg.has("symbol.file")) return load_symbol(cfg.str("symbol.file", ""));
    const std::string fam = cfg.str("symbol.family", "exp_quadratic");
    nlohmann::json j;
    j["family"] = fam;
    if (fam == "exp_quadratic") {
        j["c"] = cfg.num("symbol.c", 0.1);
        j["max_degree"] = cfg.integer("symbol.max_degree", 48);
    } else if (fam == "monomial") {
        std::vector<int> nu;
        for (double v : cfg.list("symbol.nu", {1.0})) nu.push_back(int(v));
        j["nu"] = nu;
    } else if (fam == "random_decay") {
        j["seed"] = (seed_flag >= 0) ? std::uint64_t(seed_flag)
                                     : std::uint64_t(cfg.integer("symbol.seed", 1));
        j["decay"] = cfg.num("symbol.decay", 0.5);
        j["max_degree"] = cfg.integer("symbol.max_degree", 8);
        j["d"] = cfg.integer("space.d", 1);
        j["n"] = cfg.integer("symbol.n", 1);
    } else {
        throw ConfigError("unknown symbol.family '" + fam + "'");
    }
    return symbol_from_json(j);
}

SpaceParams space_from_config(const Config& cfg) {
    return SpaceParams(cfg.integer("space.d", 1), cfg.num("space.m", 1.0),
                       cfg.num("space.alpha", 1.0));
}

// run fn(i) for i in [0, n) on up to `jobs` threads; results land in order
template <typename Fn>
void parallel_for(int n, int jobs, Fn&& fn) {
    if (jobs <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    const int workers = std::min(jobs, n);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    for (auto& t : pool) t.join();
}

// ---------------------------------------------------------------- ml-validate

int cmd_ml_validate(const Config& cfg, CommandIO& io) {
    const auto m_list = cfg.list("ml.m_list", {1.0, 1.5, 2.0, 3.0});
    const auto k_list = cfg.list("ml.k_list", {0.0, 1.0, 2.0});
    const auto radii = cfg.list("ml.radii", {4.0, 6.0, 8.0, 12.0});
    const auto fracs = cfg.list("ml.theta_fracs", {0.0, 0.35, 0.7});

    io.table.columns = {"m", "k", "theta", "r", "rel_err"};
    double worst_overlap = 0.0, worst_m1 = 0.0, worst_monotone = 0.0;
    const double floor = 1e-12;
    for (double m : m_list) {
        worst_overlap = std::max(worst_overlap, mlf::overlap_self_check(m, 2));
        const double rmax = radii.back();
        // keep rays inside the double-precision cancellation budget
        const double coslim = std::max(-1.0, 1.0 - 25.0 / std::pow(rmax, m));
        const double theta_valid = std::acos(coslim) / m;
        const double theta_cap =
            std::min(0.9 * std::numbers::pi / (2.0 * m), theta_valid);
        for (double kd : k_list) {
            const int k = int(kd);
            for (double f : fracs) {
                const double theta = f * theta_cap;
                double prev = std::numeric_limits<double>::infinity();
                for (double r : radii) {
                    const double err = mlf::asymptotic_relative_error(
                        m, k, std::polar(r, theta));
                    io.table.add_row({fmt_num(m), fmt_num(kd), fmt_num(theta),
                                      fmt_num(r), fmt_num(err)});
                    if (m == 1.0) worst_m1 = std::max(worst_m1, err);
                    if (err > std::max(prev, floor))
                        worst_monotone = std::max(worst_monotone, err - prev);
                    prev = err;
                }
            }
        }
    }
    io.check("overlap_self_check", 1e-4, worst_overlap);
    io.check("m1_exact", 1e-12, worst_m1);
    io.check("monotone_decay_violation", 0.0, worst_monotone);
    return io.finish();
}

// --------------------------------------------------------------- hankel-ratio

int cmd_hankel_ratio(const Config& cfg, CommandIO& io, long seed, int jobs) {
    const auto m_list = cfg.list("hankel.m_list", {cfg.num("space.m", 1.0)});
    const int d = cfg.integer("space.d", 1);
    const double alpha = cfg.num("space.alpha", 1.0);
    const int N = cfg.integer("truncation.N", 40);
    const std::string fam = cfg.str("symbol.family", "exp_quadratic");
    std::vector<double> c_list = {0.0};
    if (fam == "exp_quadratic") c_list = cfg.list("hankel.c_list", {0.05, 0.1, 0.2});

    io.table.columns = {"m",     "c",        "N",     "norm_hb", "sup_b_half",
                        "ratio", "md_ratio", "upper_ok"};
    struct Row {
        double m, c, norm, sup, ratio, md;
        bool ok;
        bool not_converged = false;
    };
    std::vector<Row> rows(m_list.size() * c_list.size());
    parallel_for(static_cast<int>(rows.size()), jobs, [&](int idx) {
        const double m = m_list[idx / c_list.size()];
        const double c = c_list[idx % c_list.size()];
        const SpaceParams params(d, m, alpha);
        TaylorSymbol b = (fam == "exp_quadratic")
                             ? exp_quadratic_symbol(c, std::max(2 * N, 48))
                             : symbol_from_config(cfg, seed);
        Row row{m, c, 0, 0, 0, 0, false, false};
        try {
            const GrowthGrid grid = default_grid_for(b, params, alpha / 2.0);
            const auto rep = hankel::theorem_a_report(params, b, N, grid);
            row.norm = rep.norm_hb;
            row.sup = rep.sup_b_half;
            row.ratio = rep.ratio;
            row.md = std::pow(m, d) * rep.ratio;
            row.ok = rep.upper_ok;
        } catch (const NotConvergedError&) {
            row.not_converged = true;
        }
        rows[idx] = row;
    });

    bool all_ok = true;
    for (const auto& r : rows) {
        if (r.not_converged) {
            io.not_converged = true;
            continue;
        }
        io.table.add_row({fmt_num(r.m), fmt_num(r.c), fmt_num(N), fmt_num(r.norm),
                          fmt_num(r.sup), fmt_num(r.ratio), fmt_num(r.md),
                          r.ok ? "1" : "0"});
        all_ok = all_ok && r.ok;
    }
    io.check_flag("theorem_a_upper_bound", all_ok);
    if (!io.not_converged && rows.size() > 1) {
        double lo = 1e300, hi = 0.0;
        for (const auto& r : rows) {
            lo = std::min(lo, r.md);
            hi = std::max(hi, r.md);
        }
        io.check("md_ratio_band_factor", 20.0, hi / lo);
    }
    return io.finish();
}

// --------------------------------------------------------------- compactness

int cmd_compactness(const Config& cfg, CommandIO& io, long seed) {
    const SpaceParams params = space_from_config(cfg);
    const TaylorSymbol b = symbol_from_config(cfg, seed);
    std::vector<int> N_list;
    for (double v : cfg.list("truncation.N_list", {10, 20, 30, 40}))
        N_list.push_back(int(v));
    const auto radii = cfg.list("compact.radii", {1, 2, 3, 4, 5, 6, 7, 8});

    const auto rep = hankel::compactness_report(params, b, N_list, radii);
    io.table.columns = {"N", "sigma_tail", "littleoh_tail", "verdict"};
    for (const auto& rec : rep.records)
        io.table.add_row({fmt_num(rec.N), fmt_num(rec.sigma_tail),
                          fmt_num(rec.littleoh_tail), rep.verdict});
    io.check_flag("verdict_" + rep.verdict, true);
    return io.finish();
}

// -------------------------------------------------------------- laplace-check

int cmd_laplace_check(const Config& cfg, CommandIO& io) {
    const double lambda = cfg.num("laplace.lambda", 400.0);
    io.table.columns = {"case", "lambda", "approx", "truth", "rel_err", "ck_source"};

    // interior: f = 1, g = -(x - 1/2)^2 on [0, 1)
    asym::LaplaceProblem interior;
    interior.f = [](double) { return 1.0; };
    interior.g = [](double x) { return -(x - 0.5) * (x - 0.5); };
    interior.gp = [](double x) { return -2.0 * (x - 0.5); };
    interior.gpp = [](double) { return -2.0; };
    interior.a = 0.0;
    interior.b = 1.0;
    interior.interior_max = 0.5;
    const double approx = asym::laplace_interior(interior, lambda);
    // quadrature truth on [0,1]
    double truth = 0.0;
    {
        const int n = 20000;
        for (int i = 0; i < n; ++i) {
            const double x = (i + 0.5) / n;
            truth += std::exp(lambda * interior.g(x)) / n;
        }
    }
    const double rel_int = std::abs(approx / truth - 1.0);
    io.table.add_row({"interior_gauss", fmt_num(lambda), fmt_num(approx),
                      fmt_num(truth), fmt_num(rel_int), "analytic"});
    io.check("laplace_interior_1pct", 0.01, rel_int);

    // boundary: g = -x on [0, inf); f = 1 and f = 1 + x are exact
    double worst_boundary = 0.0;
    for (int casei = 0; casei < 2; ++casei) {
        asym::LaplaceProblem boundary;
        boundary.f = [casei](double x) { return casei == 0 ? 1.0 : 1.0 + x; };
        boundary.g = [](double x) { return -x; };
        boundary.gp = [](double) { return -1.0; };
        boundary.gpp = [](double) { return 0.0; };
        boundary.a = 0.0;
        boundary.b = std::numeric_limits<double>::infinity();
        boundary.boundary_ck = [casei](int k) {
            if (casei == 0) return k == 0 ? 1.0 : 0.0;
            return k <= 1 ? 1.0 : 0.0;
        };
        const double got = asym::laplace_boundary(boundary, lambda, 2);
        const double want =
            casei == 0 ? 1.0 / lambda : 1.0 / lambda + 1.0 / (lambda * lambda);
        const double rel = std::abs(got / want - 1.0);
        io.table.add_row({casei == 0 ? "boundary_f1" : "boundary_f1px",
                          fmt_num(lambda), fmt_num(got), fmt_num(want), fmt_num(rel),
                          "analytic"});
        worst_boundary = std::max(worst_boundary, rel);
    }
    io.check("laplace_boundary_exact", 1e-12, worst_boundary);
    return io.finish();
}

// --------------------------------------------------------------- kernel-norms

int cmd_kernel_norms(const Config& cfg, CommandIO& io, int jobs) {
    const SpaceParams params = space_from_config(cfg);
    const auto p_list = cfg.list("kernel.p_list", {1.0, 2.0, 4.0});
    const std::vector<double> dflt_radii =
        params.m > 1.5 ? std::vector<double>{1.5, 1.8, 2.1, 2.4, 2.7, 3.0}
                       : std::vector<double>{3, 4, 5, 6, 7, 8};
    const auto radii = cfg.list("kernel.radii", dflt_radii);

    io.table.columns = {"p",   "fitted_exponent", "target_exponent", "exp_diff",
                        "rms", "p2_identity_err"};
    std::vector<asym::KernelNormFit> fits(p_list.size());
    parallel_for(static_cast<int>(p_list.size()), jobs, [&](int i) {
        fits[i] = asym::verify_kernel_norms(params, p_list[i], radii);
    });
    double worst_diff = 0.0, worst_rms = 0.0, worst_p2 = 0.0;
    for (std::size_t i = 0; i < p_list.size(); ++i) {
        const auto& f = fits[i];
        const double diff = std::abs(f.fit.fitted_exponent - f.fit.target_exponent);
        io.table.add_row({fmt_num(p_list[i]), fmt_num(f.fit.fitted_exponent),
                          fmt_num(f.fit.target_exponent), fmt_num(diff),
                          fmt_num(f.fit.residual), fmt_num(f.p2_identity_error)});
        worst_diff = std::max(worst_diff, diff);
        worst_rms = std::max(worst_rms, f.fit.residual);
        worst_p2 = std::max(worst_p2, f.p2_identity_error);
    }
    io.check("exponent_within_025", 0.25, worst_diff);
    io.check("fit_rms", 0.1, worst_rms);
    io.check("p2_identity", 1e-8, worst_p2);
    return io.finish();
}

// ---------------------------------------------------------------------- fejer

int cmd_fejer(const Config& cfg, CommandIO& io, long seed) {
    const SpaceParams params = space_from_config(cfg);
    Config cfg2 = cfg;
    const TaylorSymbol b = symbol_from_config(cfg2, seed);
    const double beta = params.alpha / 2.0;
    const GrowthGrid grid = default_grid_for(b, params, beta);
    std::vector<int> N_list;
    for (double v : cfg.list("fejer.N_list", {4, 8, 16, 32})) N_list.push_back(int(v));
    const auto r_list = cfg.list("dilate.r_list", {0.9, 0.99, 0.999});

    io.table.columns = {"kind", "parameter", "gap"};
    bool fejer_decreasing = true, dilate_decreasing = true;
    double prev = std::numeric_limits<double>::infinity();
    for (int N : N_list) {
        const double gap =
            sup_growth_norm(b - b.fejer_smooth(N), params, beta, grid).value;
        io.table.add_row({"fejer", fmt_num(N), fmt_num(gap)});
        fejer_decreasing = fejer_decreasing && gap < prev;
        prev = gap;
    }
    prev = std::numeric_limits<double>::infinity();
    for (double r : r_list) {
        const double gap = sup_growth_norm(b - b.dilate(r), params, beta, grid).value;
        io.table.add_row({"dilate", fmt_num(r), fmt_num(gap)});
        dilate_decreasing = dilate_decreasing && gap < prev;
        prev = gap;
    }
    io.check_flag("fejer_gap_strictly_decreasing", fejer_decreasing);
    io.check_flag("dilate_gap_decreasing", dilate_decreasing);
    return io.finish();
}

// -------------------------------------------------------------- project-check

int cmd_project_check(const Config& cfg, CommandIO& io) {
    const int max_degree = cfg.integer("project.max_degree", 6);
    io.table.columns = {"d", "m", "check", "max_rel_err"};

    double worst_repro = 0.0;
    const std::vector<std::pair<int, double>> spaces = {{1, 1.0}, {1, 2.0}, {2, 1.0}};
    for (const auto& [d, m] : spaces) {
        const SpaceParams params(d, m, 1.0);
        // deterministic degree <= max_degree polynomial with mixed coefficients
        TaylorSymbol f(d, 1);
        int t = 0;
        for (const auto& nu : multi_indices_up_to(d, max_degree)) {
            Mat c(1, 1);
            c(0, 0) = Complex(std::cos(1.0 + t), 0.3 * std::sin(2.0 + t)) /
                      (1.0 + nu.degree());
            f.set_coeff(nu, c);
            ++t;
        }
        std::vector<VecC> zs;
        for (int i = 0; i < (d == 1 ? 5 : 3); ++i) {
            VecC z = VecC::Zero(d);
            z(0) = std::polar(0.4 + 1.5 * i / 4.0, 0.7 * i);
            if (d == 2) z(1) = std::polar(0.5, 1.1 * i);
            zs.push_back(z);
        }
        const double err = verify_reproducing(f, params, zs);
        io.table.add_row({fmt_num(d), fmt_num(m), "reproducing", fmt_num(err)});
        worst_repro = std::max(worst_repro, err);
    }
    io.check("reproducing_formula", 1e-8, worst_repro);

    // growth-space projection at d = 1, m = 1
    const SpaceParams p11(1, 1.0, 1.0);
    std::vector<VecC> zs;
    for (int i = 0; i < 5; ++i) {
        VecC z(1);
        z(0) = std::polar(0.3 + 1.7 * i / 4.0, 0.9 * i);
        zs.push_back(z);
    }
    const double beta = 0.5;
    const double e1 = growth_space_projection_check(
        TaylorSymbol::constant(1, Mat::Identity(1, 1)), p11, beta, zs);
    io.table.add_row({"1", "1", "growth_projection_const", fmt_num(e1)});
    const double e2 = growth_space_projection_check(
        TaylorSymbol::scalar_monomial(MultiIndex({1})), p11, beta, zs);
    io.table.add_row({"1", "1", "growth_projection_z", fmt_num(e2)});
    const double e3 =
        growth_space_projection_check(exp_quadratic_symbol(0.1, 40), p11, beta, zs);
    io.table.add_row({"1", "1", "growth_projection_expq", fmt_num(e3)});
    io.check("growth_projection_const", 1e-8, e1);
    io.check("growth_projection_z", 1e-7, e2);
    io.check("growth_projection_expq", 1e-5, e3);
    return io.finish();
}

} // namespace

int run(const std::vector<std::string>& args) {
    std::vector<std::string> argv_s;
    argv_s.push_back("focklab");
    argv_s.insert(argv_s.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& s : argv_s) argv.push_back(s.c_str());
    return run(static_cast<int>(argv.size()), argv.data());
}

int run(int argc, const char* const* argv) {
    CLI::App app{"numerical laboratory for generalized Fock spaces and small "
                 "Hankel operators"};
    app.require_subcommand(1);

    std::string config_path, out_path, format = "csv";
    long seed = -1;
    int jobs = 1;
    std::vector<std::string> sets;

    const std::vector<std::string> names = {"ml-validate",  "hankel-ratio",
                                            "compactness",  "laplace-check",
                                            "kernel-norms", "fejer",
                                            "project-check"};
    std::map<std::string, CLI::App*> subs;
    for (const auto& name : names) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "flat dotted-key config file");
        sub->add_option("--out", out_path, "output table path");
        sub->add_option("--format", format)
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--seed", seed, "seed for random symbol families");
        sub->add_option("--jobs", jobs, "worker threads for parameter sweeps");
        sub->add_option("--set", sets, "override config entries (key=value)");
        subs[name] = sub;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        Config cfg;
        if (!config_path.empty()) cfg.load_file(config_path);
        for (const auto& s : sets) {
            const auto eq = s.find('=');
            if (eq == std::string::npos)
                throw ConfigError("--set expects key=value, got '" + s + "'");
            cfg.set(trim(s.substr(0, eq)), trim(s.substr(eq + 1)));
        }
        if (seed < 0 && cfg.has("seed")) seed = cfg.integer("seed", 1);

        CommandIO io;
        io.out_path = out_path;
        io.format = format;
        for (const auto& name : names)
            if (subs[name]->parsed()) io.command = name;

        if (io.command == "ml-validate") return cmd_ml_validate(cfg, io);
        if (io.command == "hankel-ratio") return cmd_hankel_ratio(cfg, io, seed, jobs);
        if (io.command == "compactness") return cmd_compactness(cfg, io, seed);
        if (io.command == "laplace-check") return cmd_laplace_check(cfg, io);
        if (io.command == "kernel-norms") return cmd_kernel_norms(cfg, io, jobs);
        if (io.command == "fejer") return cmd_fejer(cfg, io, seed);
        if (io.command == "project-check") return cmd_project_check(cfg, io);
        return 1;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    } catch (const NotConvergedError& e) {
        std::fprintf(stderr, "not converged: %s\n", e.what());
        return 3;
    } catch (const NonConvergence& e) {
        std::fprintf(stderr, "non-convergence: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}

} // namespace focklab::cli
