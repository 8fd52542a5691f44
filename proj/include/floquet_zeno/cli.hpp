// cli.hpp — Command-line front end and parameter sweeps

#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "floquet_zeno/decay.hpp"
#include "floquet_zeno/params.hpp"

namespace floquet_zeno::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

enum class SweepQuantity { Rate, GoldenRate, Regime };

// `parameter` is a SystemParams key, `chi` (sets drive_amp = chi * drive_freq)
// or `delta` (sets omega_c = omega + delta).
struct SweepSpec {
    std::string parameter;
    double start{0.0};
    double stop{1.0};
    int count{2};
    SystemParams base;
    std::optional<Sideband> sideband;  // default_sideband per point when empty
    double t_fixed{10.0};
    bool with_regime{false};
    ClassifierThresholds thresholds;
};

struct SweepRow {
    double value{0.0};
    std::optional<double> result;
    std::optional<RegimeReport> report;
    std::string error;
};

// Throws Error{ConfigError} for count < 2, start == stop or an unknown parameter.
void check_sweep(const SweepSpec& spec);

// One row per grid point in grid order; per-point failures land in
// SweepRow::error. Evaluated on up to `threads` workers.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, SweepQuantity quantity, unsigned threads);

void write_sweep(std::ostream& out, const SweepSpec& spec, SweepQuantity quantity,
                 const std::vector<SweepRow>& rows);

// FLOQUET_ZENO_THREADS if set and positive, else hardware concurrency.
unsigned worker_count();

// Entry point shared by the executable and the tests. Returns 0 on success,
// 2 on configuration errors, 3 on numerical errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace floquet_zeno::cli
