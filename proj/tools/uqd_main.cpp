// Command-line front end: config-driven validation, estimation and
// convergence scans over the shipped universal detectors.
//
//   uqd validate --config cfg.json
//   uqd estimate --config cfg.json --out results
//   uqd scan     --config cfg.json --out results
//
// The config is a single JSON document (path or '-' for stdin); flags
// override config fields. All randomness flows from the config seed, and
// machine outputs are byte-stable across reruns unless --timing is given.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "uqd/estimation.hpp"
#include "uqd/registry.hpp"
#include "uqd/serialize.hpp"
#include "uqd/spin.hpp"
#include "uqd/sud.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConfig = 2;

struct Options {
    std::string config_path;
    std::string out_dir;
    std::string detector;
    std::string format;
    std::int64_t n = -1;
    std::int64_t seed = -1;
    bool timing = false;
};

struct Experiment {
    std::string detector_id;
    uqd::UniversalDetector detector;
    uqd::State rho;
    uqd::Matrix observable;
    std::string observable_label;
    std::size_t n = 0;
    std::vector<std::size_t> schedule;
    std::uint64_t seed = 0;
    std::string out_dir;
    std::string format = "both";
    bool timing = false;
    bool has_state = false;
    bool has_observable = false;
};

json load_config(const Options& opts) {
    json cfg = json::object();
    if (!opts.config_path.empty()) {
        std::stringstream buffer;
        if (opts.config_path == "-") {
            buffer << std::cin.rdbuf();
        } else {
            std::ifstream in(opts.config_path);
            if (!in) throw uqd::ConfigError("cannot open config file '" + opts.config_path + "'");
            buffer << in.rdbuf();
        }
        try {
            cfg = json::parse(buffer.str());
        } catch (const json::exception& e) {
            throw uqd::ConfigError(std::string("config is not valid JSON: ") + e.what());
        }
    }
    if (!cfg.is_object()) throw uqd::ConfigError("config must be a JSON object");
    static const std::vector<std::string> allowed = {
        "detector", "ancilla", "state", "observable", "n",
        "schedule", "seed",    "out",   "format",     "timing"};
    for (const auto& [key, value] : cfg.items()) {
        (void)value;
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw uqd::ConfigError("unknown config key '" + key + "'");
    }
    // Flags override config fields.
    if (!opts.detector.empty()) cfg["detector"] = opts.detector;
    if (!opts.out_dir.empty()) cfg["out"] = opts.out_dir;
    if (!opts.format.empty()) cfg["format"] = opts.format;
    if (opts.n >= 0) cfg["n"] = opts.n;
    if (opts.seed >= 0) cfg["seed"] = opts.seed;
    if (opts.timing) cfg["timing"] = true;
    return cfg;
}

// Explicit ancilla specs only; "auto" is handled by the detector factories.
uqd::State resolve_ancilla(const json& cfg, const uqd::DetectorId& id) {
    const uqd::Index dim = uqd::detector_ancilla_dim(id);
    const auto& spec = cfg["ancilla"];
    if (spec.is_string()) {
        if (spec == "mixed")
            return uqd::State(uqd::Matrix::Identity(dim, dim) / static_cast<double>(dim));
        throw uqd::ConfigError("unknown ancilla spec '" + spec.get<std::string>() + "'");
    }
    return uqd::state_from_json(spec);
}

Experiment build_experiment(const json& cfg, bool need_state, bool need_n, bool need_schedule) {
    if (!cfg.contains("seed"))
        throw uqd::ConfigError("config needs an explicit seed; implicit seeding is not allowed");
    if (!cfg.contains("detector")) throw uqd::ConfigError("config needs a detector id");

    const std::string id = cfg["detector"].get<std::string>();
    const auto parsed = uqd::parse_detector_id(id);

    std::optional<uqd::State> ancilla;
    if (cfg.contains("ancilla") && cfg["ancilla"] != "auto")
        ancilla = resolve_ancilla(cfg, parsed);

    Experiment exp{.detector_id = id,
                   .detector = uqd::make_detector(id, std::move(ancilla)),
                   .rho = uqd::State(uqd::Matrix::Identity(1, 1)),
                   .observable = {},
                   .observable_label = "",
                   .n = 0,
                   .schedule = {},
                   .seed = cfg["seed"].get<std::uint64_t>(),
                   .out_dir = cfg.value("out", std::string(".")),
                   .format = cfg.value("format", std::string("both")),
                   .timing = cfg.value("timing", false),
                   .has_state = false,
                   .has_observable = false};
    if (exp.format != "json" && exp.format != "csv" && exp.format != "both")
        throw uqd::ConfigError("format must be json, csv or both");

    const uqd::Index dim = uqd::detector_dim(parsed);
    if (cfg.contains("state")) {
        const auto& spec = cfg["state"];
        exp.rho = spec.is_string() ? uqd::make_state(spec.get<std::string>(), dim)
                                   : uqd::state_from_json(spec);
        if (exp.rho.dim() != dim)
            throw uqd::ConfigError("state dim " + std::to_string(exp.rho.dim()) +
                                   " does not match detector dim " + std::to_string(dim));
        exp.has_state = true;
    }
    if (cfg.contains("observable") && !cfg["observable"].is_string()) {
        const auto& spec = cfg["observable"];
        if (spec.at("dims").at(0).get<uqd::Index>() != dim ||
            spec.at("dims").at(1).get<uqd::Index>() != dim)
            throw uqd::ConfigError("observable dims do not match detector dim " +
                                   std::to_string(dim));
    }
    if (cfg.contains("observable")) {
        const auto& spec = cfg["observable"];
        if (spec.is_string()) {
            exp.observable = uqd::make_observable(spec.get<std::string>(), dim);
            exp.observable_label = spec.get<std::string>();
        } else {
            exp.observable = uqd::operator_from_json(spec);
            exp.observable_label = "explicit";
        }
        exp.has_observable = true;
    }
    if (cfg.contains("n")) exp.n = cfg["n"].get<std::size_t>();
    if (cfg.contains("schedule"))
        exp.schedule = cfg["schedule"].get<std::vector<std::size_t>>();

    if (need_state && !exp.has_state) throw uqd::ConfigError("config needs a state spec");
    if ((need_n || need_schedule) && !exp.has_observable)
        throw uqd::ConfigError("config needs an observable spec");
    if (need_n && exp.n == 0) throw uqd::ConfigError("config needs a positive sample count n");
    if (need_schedule && exp.schedule.empty()) throw uqd::ConfigError("config needs a schedule");
    return exp;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw uqd::Error("cannot write '" + path.string() + "'");
    out << text;
}

// ---- validate ----------------------------------------------------------------

bool check_line(const std::string& name, bool pass, const std::string& detail) {
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << name;
    if (!detail.empty()) std::cout << ": " << detail;
    std::cout << "\n";
    return pass;
}

int run_validate(const json& cfg) {
    if (!cfg.contains("seed"))
        throw uqd::ConfigError("config needs an explicit seed; implicit seeding is not allowed");
    if (!cfg.contains("detector")) throw uqd::ConfigError("config needs a detector id");
    const std::string id = cfg["detector"].get<std::string>();
    const auto parsed = uqd::parse_detector_id(id);
    const auto seed = cfg["seed"].get<std::uint64_t>();

    std::optional<uqd::State> ancilla;
    if (cfg.contains("ancilla") && cfg["ancilla"] != "auto")
        ancilla = resolve_ancilla(cfg, parsed);

    uqd::UniversalDetector detector = [&] {
        try {
            return uqd::make_detector(id, ancilla);
        } catch (const uqd::Error& e) {
            check_line("detector construction", false, e.what());
            std::exit(kExitCheckFailed);
        }
    }();

    bool all_pass = true;
    const uqd::Index dim = uqd::detector_dim(parsed);

    if (detector.discrete()) {
        const auto& povm = detector.discrete_povm();
        const auto report = uqd::validate_povm(povm);
        all_pass &= check_line(
            "povm validity", report.pass(),
            "min eigenvalue " + std::to_string(report.max_negative_eigenvalue) +
                ", completeness defect " + std::to_string(report.completeness_defect));

        const auto universality = uqd::is_universal(povm, detector.ancilla);
        all_pass &= check_line("universality", universality.universal,
                               "induced-family rank " + std::to_string(universality.rank) +
                                   " of " + std::to_string(dim * dim) +
                                   ", least singular value " +
                                   std::to_string(universality.min_singular));

        double max_err = 0.0;
        bool identity_ok = true;
        std::string identity_detail;
        try {
            for (int trial = 0; trial < 20; ++trial) {
                const auto rho = uqd::random_density(dim, dim, uqd::splitmix64(seed) + trial);
                auto rng = uqd::seeded_rng(seed, 1000 + static_cast<std::uint64_t>(trial));
                const uqd::Matrix o = uqd::random_ginibre(dim, dim, rng);
                const uqd::Complex lhs = uqd::exact_expectation(detector, rho, o);
                const uqd::Complex rhs = (rho.rho() * o).trace();
                max_err = std::max(max_err, std::abs(lhs - rhs));
            }
            identity_ok = max_err < 1e-8;
            identity_detail = "max |sum_i f_i p_i - Tr[rho O]| = " + std::to_string(max_err) +
                              " over 20 random pairs";
        } catch (const uqd::Error& e) {
            identity_ok = false;
            identity_detail = e.what();
        }
        all_pass &= check_line("estimation identity", identity_ok, identity_detail);
    } else {
        // Continuous SU(d) detector: dual-state constraints and Monte Carlo checks.
        const auto eig = uqd::hermitian_eig(detector.ancilla.rho().transpose());
        const bool pure = eig.values[0] > 1.0 - 1e-9;
        all_pass &= check_line("ancilla purity", pure,
                               "largest eigenvalue " + std::to_string(eig.values[0]));
        const uqd::Vector phi = eig.vectors.col(0);
        uqd::Index min_idx = 0;
        double min_abs = std::abs(phi[0]);
        for (uqd::Index k = 1; k < dim; ++k)
            if (std::abs(phi[k]) < min_abs) {
                min_abs = std::abs(phi[k]);
                min_idx = k;
            }
        uqd::Vector psi = uqd::Vector::Zero(dim);
        psi[min_idx] = uqd::Complex(1.0, 0.0);
        const uqd::Matrix xi = uqd::sud_xi(phi, psi);
        const double tr_err = std::abs(xi.trace() - uqd::Complex(dim, 0));
        const double pair_err = std::abs((detector.ancilla.rho().transpose() * xi.adjoint())
                                             .trace() -
                                         uqd::Complex(dim * dim, 0));
        all_pass &= check_line("dual trace constraints", tr_err < 1e-10 && pair_err < 1e-10,
                               "|Tr[xi]-d| = " + std::to_string(tr_err) +
                                   ", |Tr[nu^T xi^dag]-d^2| = " + std::to_string(pair_err));

        // Haar Monte Carlo resolution of identity, entrywise.
        constexpr std::size_t n_mc = 20000;
        const uqd::Index joint = dim * dim;
        uqd::Matrix acc = uqd::Matrix::Zero(joint, joint);
        for (std::size_t k = 0; k < n_mc; ++k) {
            const uqd::Matrix u = uqd::random_haar_unitary(dim, uqd::splitmix64(seed + k));
            const uqd::Vector v = uqd::vectorize(u).amps;
            acc += static_cast<double>(dim) * (v * v.adjoint());
        }
        acc /= static_cast<double>(n_mc);
        const double res_dev =
            (acc - uqd::Matrix::Identity(joint, joint)).cwiseAbs().maxCoeff();
        const double res_bound = 6.0 * static_cast<double>(dim) / std::sqrt(double(n_mc));
        all_pass &= check_line("resolution of identity (MC)", res_dev < res_bound,
                               "max entry deviation " + std::to_string(res_dev) +
                                   " (bound " + std::to_string(res_bound) + ")");

        // Estimation identity within 5 standard errors on a few random pairs.
        bool mc_ok = true;
        std::string mc_detail;
        for (int trial = 0; trial < 3 && mc_ok; ++trial) {
            const auto rho = uqd::random_density(dim, dim, uqd::splitmix64(seed) + 77 + trial);
            auto rng = uqd::seeded_rng(seed, 2000 + static_cast<std::uint64_t>(trial));
            uqd::Matrix o = uqd::random_ginibre(dim, dim, rng);
            o = ((o + o.adjoint()) / 2.0).eval();
            const auto report = uqd::estimate(detector, rho, o, n_mc,
                                              seed + static_cast<std::uint64_t>(trial));
            const double dev = std::abs(report.estimate - *report.exact);
            const double bound = 5.0 * std::max(report.stderr_est, 1e-12);
            if (dev >= bound) {
                mc_ok = false;
                mc_detail = "deviation " + std::to_string(dev) + " exceeds 5 sigma = " +
                            std::to_string(bound);
            }
        }
        if (mc_ok) mc_detail = "3 random pairs within 5 standard errors, n=20000";
        all_pass &= check_line("estimation identity (MC)", mc_ok, mc_detail);
    }

    return all_pass ? kExitOk : kExitCheckFailed;
}

// ---- estimate / scan -----------------------------------------------------------

std::string complex_str(uqd::Complex z) {
    std::ostringstream os;
    os << z.real();
    if (z.imag() != 0.0) os << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
    return os.str();
}

void print_report(const uqd::EstimationReport& report) {
    std::cout << "estimate = " << complex_str(report.estimate) << "  +- " << report.stderr_est
              << "  (n = " << report.samples << ")\n";
    if (report.exact) std::cout << "exact    = " << complex_str(*report.exact) << "\n";
    if (report.acceptance_rate < 1.0)
        std::cout << "acceptance rate = " << report.acceptance_rate << "\n";
    std::cout << "wall time = " << report.wall_seconds << " s\n";
}

int run_estimate(const json& cfg) {
    auto exp = build_experiment(cfg, /*need_state=*/true, /*need_n=*/true,
                                /*need_schedule=*/false);
    const auto report = uqd::estimate(exp.detector, exp.rho, exp.observable, exp.n, exp.seed);
    print_report(report);

    const uqd::ReportContext ctx{exp.detector_id, exp.detector.dim_h(), exp.observable_label};
    std::filesystem::create_directories(exp.out_dir);
    const auto base = std::filesystem::path(exp.out_dir);
    if (exp.format != "csv")
        write_text(base / "estimate.json", report_to_json(report, exp.timing).dump(2) + "\n");
    if (exp.format != "json")
        write_text(base / "estimate.csv",
                   uqd::csv_header() + "\n" + uqd::csv_row(report, ctx, exp.timing) + "\n");
    return kExitOk;
}

int run_scan(const json& cfg) {
    auto exp = build_experiment(cfg, /*need_state=*/true, /*need_n=*/false,
                                /*need_schedule=*/true);
    const auto reports =
        uqd::convergence_scan(exp.detector, exp.rho, exp.observable, exp.schedule, exp.seed);

    const uqd::ReportContext ctx{exp.detector_id, exp.detector.dim_h(), exp.observable_label};
    std::string csv = uqd::csv_header() + "\n";
    json arr = json::array();
    std::cout << "      n        stderr\n";
    for (const auto& report : reports) {
        csv += uqd::csv_row(report, ctx, exp.timing) + "\n";
        arr.push_back(report_to_json(report, exp.timing));
        std::cout << std::setw(8) << report.samples << "  " << std::scientific
                  << report.stderr_est << std::defaultfloat << "\n";
    }
    std::filesystem::create_directories(exp.out_dir);
    const auto base = std::filesystem::path(exp.out_dir);
    if (exp.format != "csv") write_text(base / "scan.json", arr.dump(2) + "\n");
    if (exp.format != "json") write_text(base / "scan.csv", csv);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"universal quantum detector toolkit"};
    app.require_subcommand(1);

    Options opts;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", opts.config_path, "JSON config path, or '-' for stdin");
        cmd->add_option("--out", opts.out_dir, "output directory");
        cmd->add_option("--seed", opts.seed, "seed override");
        cmd->add_option("--n", opts.n, "sample count override");
        cmd->add_option("--detector", opts.detector, "detector id override");
        cmd->add_option("--format", opts.format, "json | csv | both");
        cmd->add_flag("--timing", opts.timing,
                      "record measured wall time in outputs (breaks byte determinism)");
    };
    auto* validate_cmd = app.add_subcommand("validate", "run detector validity checks");
    auto* estimate_cmd = app.add_subcommand("estimate", "Monte Carlo estimate of Tr[rho O]");
    auto* scan_cmd = app.add_subcommand("scan", "stderr vs n convergence scan");
    add_common(validate_cmd);
    add_common(estimate_cmd);
    add_common(scan_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        const json cfg = load_config(opts);
        if (validate_cmd->parsed()) return run_validate(cfg);
        if (estimate_cmd->parsed()) return run_estimate(cfg);
        if (scan_cmd->parsed()) return run_scan(cfg);
    } catch (const uqd::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCheckFailed;
    }
    return kExitOk;
}
