// cli.cpp — Subcommand dispatch, CSV emission and the sweep worker pool

#include "floquet_zeno/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <thread>

#include "floquet_zeno/bath.hpp"
#include "floquet_zeno/config.hpp"
#include "floquet_zeno/csv.hpp"
#include "floquet_zeno/error.hpp"
#include "floquet_zeno/floquet.hpp"
#include "floquet_zeno/oracle.hpp"
#include "floquet_zeno/specfun.hpp"

namespace floquet_zeno::cli {

namespace {

// Parameter flags shared by the physics subcommands.
struct ParamOptions {
    std::string config_path;
    std::map<std::string, std::optional<double>> overrides{
        {"omega", {}}, {"omega_c", {}}, {"xi", {}}, {"g", {}},
        {"n_cavities", {}}, {"drive_amp", {}}, {"drive_freq", {}}};
    std::optional<double> delta;
    std::optional<double> chi;
    std::optional<int> sideband;

    void attach(CLI::App* app) {
        app->add_option("--config", config_path, "key = value parameter file");
        std::map<std::string, CLI::Option*> opts;
        for (auto& [key, value] : overrides) {
            opts[key] = app->add_option("--" + key, value, "override `" + key + "`");
        }
        app->add_option("--delta", delta, "detuning; sets omega_c = omega + delta")->excludes(opts["omega_c"]);
        app->add_option("--chi", chi, "drive ratio A/nu; sets drive_amp = chi * drive_freq")
            ->excludes(opts["drive_amp"]);
        app->add_option("--sideband", sideband, "Floquet sideband n (default: nearest to resonance)");
    }

    SystemParams resolve() const {
        SystemParams p;
        if (!config_path.empty()) p = config::apply(p, config::load_file(config_path));
        config::Overrides flags;
        for (const auto& [key, value] : overrides) {
            if (value) flags[key] = *value;
        }
        if (auto it = flags.find("n_cavities"); it != flags.end() && it->second != std::floor(it->second)) {
            throw Error(ErrorCode::ConfigError, "n_cavities must be an integer");
        }
        p = config::apply(p, flags);
        if (delta) p.omega_c = p.omega + *delta;
        if (chi) p.drive_amp = *chi * p.drive_freq;
        return validate(p);
    }

    Sideband sideband_for(const SystemParams& p) const {
        return sideband ? Sideband{*sideband} : default_sideband(p);
    }
};

// Writes to --out when given, otherwise to the supplied stream.
class Output {
public:
    Output(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw Error(ErrorCode::ConfigError, "cannot write '" + path + "'");
            stream_ = &file_;
        }
    }
    std::ostream& stream() { return *stream_; }

private:
    std::ofstream file_;
    std::ostream* stream_;
};

std::vector<double> time_grid(double t_max, int steps, bool include_zero) {
    if (!(t_max > 0.0) || steps < 1) {
        throw Error(ErrorCode::ConfigError, "need --t-max > 0 and --t-steps >= 1");
    }
    std::vector<double> times;
    for (int i = include_zero ? 0 : 1; i <= steps; ++i) times.push_back(t_max * i / steps);
    return times;
}

void write_rate_curve(std::ostream& out, const DecayCurve& curve) {
    csv::Writer w(out, {"t", "R"});
    for (std::size_t i = 0; i < curve.times.size(); ++i) {
        w << curve.times[i] << curve.rates[i];
        w.end_row();
    }
}

SystemParams with_parameter(SystemParams p, const std::string& name, double value) {
    if (name == "chi") {
        p.drive_amp = value * p.drive_freq;
    } else if (name == "delta") {
        p.omega_c = p.omega + value;
    } else if (name == "n_cavities") {
        p.n_cavities = static_cast<int>(std::lround(value));
    } else {
        p = config::apply(p, {{name, value}});
    }
    return validate(p);
}

std::string quantity_column(SweepQuantity q) {
    switch (q) {
        case SweepQuantity::Rate: return "R";
        case SweepQuantity::GoldenRate: return "golden_rate";
        case SweepQuantity::Regime: return "regime";
    }
    return "value";
}

}  // namespace

void check_sweep(const SweepSpec& spec) {
    if (spec.count < 2) throw Error(ErrorCode::ConfigError, "sweep needs --count >= 2");
    if (!(spec.start != spec.stop) || !std::isfinite(spec.start) || !std::isfinite(spec.stop)) {
        throw Error(ErrorCode::ConfigError, "sweep range is empty");
    }
    if (spec.parameter != "chi" && spec.parameter != "delta" && !config::is_known_key(spec.parameter)) {
        throw Error(ErrorCode::ConfigError, "cannot sweep '" + spec.parameter + "'");
    }
    if (!(spec.t_fixed > 0.0)) throw Error(ErrorCode::ConfigError, "sweep needs --t > 0");
}

unsigned worker_count() {
    if (const char* env = std::getenv("FLOQUET_ZENO_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, SweepQuantity quantity, unsigned threads) {
    check_sweep(spec);
    std::vector<SweepRow> rows(static_cast<std::size_t>(spec.count));
    for (int i = 0; i < spec.count; ++i) {
        rows[i].value = spec.start + (spec.stop - spec.start) * i / (spec.count - 1);
    }

    auto evaluate = [&](SweepRow& row) {
        try {
            const SystemParams p = with_parameter(spec.base, spec.parameter, row.value);
            const Sideband n = spec.sideband ? *spec.sideband : default_sideband(p);
            const MomentumGrid grid = build_grid(p);
            if (quantity == SweepQuantity::Regime || spec.with_regime) {
                row.report = classify_regime(p, grid, n, spec.t_fixed, spec.thresholds);
            }
            if (quantity == SweepQuantity::Rate) {
                row.result = decay_rate_finite(p, grid, n, spec.t_fixed);
            } else if (quantity == SweepQuantity::GoldenRate) {
                row.result = decay_rate_longtime(p, n).rate;
            }
        } catch (const std::exception& e) {
            row.error = e.what();
        }
    };

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < rows.size(); i = next++) evaluate(rows[i]);
    };
    const unsigned n_workers = std::clamp<unsigned>(threads, 1u, static_cast<unsigned>(rows.size()));
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 1; w < n_workers; ++w) pool.emplace_back(worker);
        worker();
    }
    return rows;
}

void write_sweep(std::ostream& out, const SweepSpec& spec, SweepQuantity quantity,
                 const std::vector<SweepRow>& rows) {
    std::vector<std::string> header{spec.parameter};
    if (quantity == SweepQuantity::Regime) {
        header.insert(header.end(), {"regime", "delta_f", "omega_f", "delta_g", "omega_g"});
    } else {
        header.push_back(quantity_column(quantity));
        if (spec.with_regime) header.push_back("regime");
    }
    header.push_back("error");

    csv::Writer w(out, header);
    for (const auto& row : rows) {
        w << row.value;
        if (quantity == SweepQuantity::Regime) {
            if (row.report) {
                w << to_string(row.report->regime) << row.report->delta_f << row.report->omega_f
                  << row.report->delta_g << row.report->omega_g;
            } else {
                w << "" << "" << "" << "" << "";
            }
        } else {
            if (row.result) w << *row.result;
            else w << "";
            if (spec.with_regime) {
                if (row.report) w << to_string(row.report->regime);
                else w << "";
            }
        }
        w << std::string_view(row.error);
        w.end_row();
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    for (const auto& a : args) argv.push_back(a.c_str());
    argv.push_back(nullptr);
    return run(static_cast<int>(args.size()), argv.data(), out, err);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Driven two-level system in a coupled-cavity waveguide: Floquet spectra, "
                 "decay rates and Zeno / anti-Zeno regimes"};
    app.name("floquet_zeno");
    app.require_subcommand(1);

    std::string out_path;

    // decay-rate
    auto* decay_cmd = app.add_subcommand("decay-rate", "R(t) on a time grid (CSV: t,R)");
    ParamOptions decay_opts;
    decay_opts.attach(decay_cmd);
    double decay_t_max = 20.0;
    int decay_steps = 200;
    std::string decay_method = "finite";
    decay_cmd->add_option("--t-max", decay_t_max, "largest time");
    decay_cmd->add_option("--t-steps", decay_steps, "number of time points");
    decay_cmd->add_option("--method", decay_method, "finite | continuum")
        ->check(CLI::IsMember({"finite", "continuum"}));
    decay_cmd->add_option("--out", out_path, "output file (default stdout)");

    // survival
    auto* surv_cmd = app.add_subcommand("survival", "P_e(t) (CSV: t,P_e)");
    ParamOptions surv_opts;
    surv_opts.attach(surv_cmd);
    double surv_t_max = 10.0;
    int surv_steps = 100;
    std::string surv_method = "perturbative";
    surv_cmd->add_option("--t-max", surv_t_max, "largest time");
    surv_cmd->add_option("--t-steps", surv_steps, "number of intervals");
    surv_cmd->add_option("--method", surv_method, "perturbative | exponential | oracle")
        ->check(CLI::IsMember({"perturbative", "exponential", "oracle"}));
    surv_cmd->add_option("--out", out_path, "output file (default stdout)");

    // spectral-density
    auto* rho_cmd = app.add_subcommand("spectral-density", "reservoir density rho(omega) (CSV: omega,rho)");
    double rho_xi = 1.0;
    std::vector<double> rho_points;
    rho_cmd->add_option("--xi", rho_xi, "hopping");
    rho_cmd->add_option("--omega", rho_points, "evaluation point(s), relative to omega_c")->required();
    rho_cmd->add_option("--out", out_path, "output file (default stdout)");

    // floquet-spectrum
    auto* spec_cmd = app.add_subcommand("floquet-spectrum", "quasi-energies of the truncated Floquet matrix");
    ParamOptions spec_opts;
    spec_opts.attach(spec_cmd);
    std::optional<int> truncation;
    bool reduced = false;
    bool converge = false;
    spec_cmd->add_option("--truncation", truncation, "Fourier cutoff M");
    spec_cmd->add_flag("--reduced", reduced, "near-resonant (N+1)-dimensional block only");
    spec_cmd->add_flag("--converge", converge, "double M until the interior spectrum is stable");
    spec_cmd->add_option("--out", out_path, "output file (default stdout)");

    // classify
    auto* cls_cmd = app.add_subcommand("classify", "Zeno / anti-Zeno / decoupled classification at time t");
    ParamOptions cls_opts;
    cls_opts.attach(cls_cmd);
    std::vector<double> cls_times;
    ClassifierThresholds cls_th;
    cls_cmd->add_option("--t", cls_times, "time(s)")->required();
    cls_cmd->add_option("--separation", cls_th.separation, "factor standing in for >> / <<");
    cls_cmd->add_option("--decoupling-threshold", cls_th.decoupling_bessel, "|J_n| below which TLS is decoupled");
    cls_cmd->add_option("--out", out_path, "output file (default stdout)");

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "evaluate a quantity along a parameter grid");
    ParamOptions sweep_opts;
    sweep_opts.attach(sweep_cmd);
    SweepSpec sweep;
    std::string quantity_name = "rate";
    sweep_cmd->add_option("--param", sweep.parameter, "swept parameter (SystemParams key, chi, delta)")->required();
    sweep_cmd->add_option("--start", sweep.start)->required();
    sweep_cmd->add_option("--stop", sweep.stop)->required();
    sweep_cmd->add_option("--count", sweep.count)->required();
    sweep_cmd->add_option("--quantity", quantity_name, "rate | golden_rate | regime")
        ->check(CLI::IsMember({"rate", "golden_rate", "regime"}));
    sweep_cmd->add_option("--t", sweep.t_fixed, "time for rate and regime");
    sweep_cmd->add_flag("--with-regime", sweep.with_regime, "append a regime column");
    sweep_cmd->add_option("--separation", sweep.thresholds.separation);
    sweep_cmd->add_option("--decoupling-threshold", sweep.thresholds.decoupling_bessel);
    sweep_cmd->add_option("--out", out_path, "output file (default stdout)");

    // reproduce-fig3
    auto* fig_cmd = app.add_subcommand("reproduce-fig3",
                                       "R(t) for the three driven-TLS regimes (g=0.25, N=41, xi=1)");
    std::string fig_dir = ".";
    double fig_nu = 10.0;
    double fig_omega = 10.0;
    double fig_t_max = 20.0;
    int fig_steps = 200;
    bool literal_chi = false;
    fig_cmd->add_option("--out-dir", fig_dir, "directory for fig3_{blue,red,green}.csv");
    fig_cmd->add_option("--drive_freq", fig_nu, "drive frequency nu (must exceed 2 xi)");
    fig_cmd->add_option("--omega", fig_omega, "TLS splitting");
    fig_cmd->add_option("--t-max", fig_t_max);
    fig_cmd->add_option("--t-steps", fig_steps);
    fig_cmd->add_flag("--literal-chi", literal_chi, "use chi = 2.4 for the decoupled curve instead of the J_0 root");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (decay_cmd->parsed()) {
            const SystemParams p = decay_opts.resolve();
            const Sideband n = decay_opts.sideband_for(p);
            const auto times = time_grid(decay_t_max, decay_steps, false);
            const auto curve = decay_curve(p, build_grid(p), n, times,
                                           decay_method == "finite" ? RateMethod::Finite : RateMethod::Continuum);
            Output o(out_path, out);
            write_rate_curve(o.stream(), curve);
        } else if (surv_cmd->parsed()) {
            const SystemParams p = surv_opts.resolve();
            const Sideband n = surv_opts.sideband_for(p);
            const auto grid = build_grid(p);
            const auto times = time_grid(surv_t_max, surv_steps, true);
            const SurvivalCurve curve =
                surv_method == "oracle"
                    ? survival_curve_exact(p, grid, times)
                    : survival_curve(p, grid, n, times,
                                     surv_method == "perturbative" ? SurvivalMethod::Perturbative
                                                                   : SurvivalMethod::Exponential);
            Output o(out_path, out);
            csv::Writer w(o.stream(), {"t", "P_e"});
            for (std::size_t i = 0; i < curve.times.size(); ++i) {
                w << curve.times[i] << curve.probabilities[i];
                w.end_row();
            }
        } else if (rho_cmd->parsed()) {
            if (!(rho_xi > 0.0)) throw Error(ErrorCode::NonPositive, "xi");
            std::vector<double> values;
            for (const double w : rho_points) values.push_back(spectral_density({rho_xi}, w));
            Output o(out_path, out);
            csv::Writer w(o.stream(), {"omega", "rho"});
            for (std::size_t i = 0; i < values.size(); ++i) {
                w << rho_points[i] << values[i];
                w.end_row();
            }
        } else if (spec_cmd->parsed()) {
            const SystemParams p = spec_opts.resolve();
            const Sideband n = spec_opts.sideband_for(p);
            const auto grid = build_grid(p);
            FloquetMatrix fm;
            QuasiEnergySpectrum qe;
            if (reduced) {
                fm = reduced_hamiltonian(p, grid, n);
                qe = quasi_energies(fm);
            } else if (converge) {
                auto c = converge_spectrum(p, grid, n);
                fm = std::move(c.matrix);
                qe = std::move(c.spectrum);
            } else {
                fm = build_floquet_matrix(p, grid, truncation.value_or(default_truncation(p, n)));
                qe = quasi_energies(fm);
            }
            const Eigen::VectorXd mean_m = mean_fourier_index(fm, qe);
            Output o(out_path, out);
            csv::Writer w(o.stream(), {"index", "quasi_energy", "mean_m", "excited_weight"});
            for (Eigen::Index i = 0; i < qe.eigenvalues.size(); ++i) {
                double excited = 0.0;
                for (std::size_t r = 0; r < fm.basis.size(); ++r) {
                    if (fm.basis[r].alpha.is_excited()) {
                        excited += std::norm(qe.eigenvectors(static_cast<Eigen::Index>(r), i));
                    }
                }
                w << static_cast<int>(i) << qe.eigenvalues(i) << mean_m(i) << excited;
                w.end_row();
            }
        } else if (cls_cmd->parsed()) {
            const SystemParams p = cls_opts.resolve();
            const Sideband n = cls_opts.sideband_for(p);
            const auto grid = build_grid(p);
            std::vector<RegimeReport> reports;
            for (const double t : cls_times) reports.push_back(classify_regime(p, grid, n, t, cls_th));
            Output o(out_path, out);
            csv::Writer w(o.stream(), {"t", "regime", "delta_f", "omega_f", "delta_g", "omega_g", "rate_slope"});
            for (std::size_t i = 0; i < reports.size(); ++i) {
                const auto& r = reports[i];
                w << cls_times[i] << to_string(r.regime) << r.delta_f << r.omega_f << r.delta_g << r.omega_g
                  << r.rate_slope;
                w.end_row();
            }
        } else if (sweep_cmd->parsed()) {
            sweep.base = sweep_opts.resolve();
            if (sweep_opts.sideband) sweep.sideband = Sideband{*sweep_opts.sideband};
            const SweepQuantity q = quantity_name == "rate"          ? SweepQuantity::Rate
                                    : quantity_name == "golden_rate" ? SweepQuantity::GoldenRate
                                                                     : SweepQuantity::Regime;
            const auto rows = run_sweep(sweep, q, worker_count());
            Output o(out_path, out);
            write_sweep(o.stream(), sweep, q, rows);
        } else if (fig_cmd->parsed()) {
            struct Curve {
                const char* name;
                double delta;
                double chi;
            };
            const double green_chi = literal_chi ? 2.4 : bessel_j_zero(0, 1);
            const Curve curves[] = {{"blue", 1.0, 1.0}, {"red", 3.0, 1.0}, {"green", 3.0, green_chi}};
            const auto times = time_grid(fig_t_max, fig_steps, false);
            std::filesystem::create_directories(fig_dir);
            for (const auto& c : curves) {
                SystemParams p;
                p.omega = fig_omega;
                p.omega_c = fig_omega + c.delta;
                p.xi = 1.0;
                p.g = 0.25;
                p.n_cavities = 41;
                p.drive_freq = fig_nu;
                p.drive_amp = c.chi * fig_nu;
                p = validate(p);
                const auto curve = decay_curve(p, build_grid(p), default_sideband(p), times);
                const auto path = (std::filesystem::path(fig_dir) / (std::string("fig3_") + c.name + ".csv")).string();
                Output o(path, out);
                write_rate_curve(o.stream(), curve);
            }
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return is_config_error(e.code()) ? kExitConfig : kExitNumerical;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitOk;
}

}  // namespace floquet_zeno::cli
