// config.cpp — Parameter file parsing

#include "floquet_zeno/config.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <string_view>

#include "floquet_zeno/error.hpp"

namespace floquet_zeno::config {

namespace {

constexpr std::array<std::string_view, 7> kKeys = {
    "omega", "omega_c", "xi", "g", "n_cavities", "drive_amp", "drive_freq"};

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

}  // namespace

bool is_known_key(const std::string& key) {
    for (auto k : kKeys) {
        if (k == key) return true;
    }
    return false;
}

Overrides parse(std::istream& in) {
    Overrides out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view view = line;
        if (auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
        view = trim(view);
        if (view.empty()) continue;

        const auto eq = view.find('=');
        const auto where = "line " + std::to_string(lineno);
        if (eq == std::string_view::npos) {
            throw Error(ErrorCode::ConfigError, where + ": expected `key = value`");
        }
        const std::string key(trim(view.substr(0, eq)));
        const auto text = trim(view.substr(eq + 1));
        if (!is_known_key(key)) {
            throw Error(ErrorCode::ConfigError, where + ": unknown key '" + key + "'");
        }
        if (out.contains(key)) {
            throw Error(ErrorCode::ConfigError, where + ": duplicate key '" + key + "'");
        }
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
            throw Error(ErrorCode::ConfigError, where + ": bad value for '" + key + "'");
        }
        if (key == "n_cavities" && (value != std::floor(value) || std::abs(value) > 1e9)) {
            throw Error(ErrorCode::ConfigError, where + ": n_cavities must be an integer");
        }
        out.emplace(key, value);
    }
    return out;
}

Overrides load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ConfigError, "cannot open config file '" + path + "'");
    return parse(in);
}

SystemParams apply(SystemParams p, const Overrides& overrides) {
    for (const auto& [key, value] : overrides) {
        if (key == "omega") p.omega = value;
        else if (key == "omega_c") p.omega_c = value;
        else if (key == "xi") p.xi = value;
        else if (key == "g") p.g = value;
        else if (key == "n_cavities") p.n_cavities = static_cast<int>(value);
        else if (key == "drive_amp") p.drive_amp = value;
        else if (key == "drive_freq") p.drive_freq = value;
        else throw Error(ErrorCode::ConfigError, "unknown key '" + key + "'");
    }
    return p;
}

}  // namespace floquet_zeno::config
