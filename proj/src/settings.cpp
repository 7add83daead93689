#include "qfluid/settings.hpp"

#include <charconv>
#include <cstdlib>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace qfluid {
namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(std::string_view key, std::string_view v) {
    // strtod accepts forms from_chars rejects on older libstdc++ (e.g. leading '+').
    const std::string text(v);
    char* end = nullptr;
    const double d = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size()) {
        throw InvalidArgument("value for '" + std::string(key) + "' is not a number: " + text);
    }
    return d;
}

std::uint64_t to_unsigned(std::string_view key, std::string_view v) {
    std::uint64_t u = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), u);
    if (ec != std::errc{} || ptr != v.data() + v.size()) {
        throw InvalidArgument("value for '" + std::string(key) +
                              "' is not a non-negative integer: " + std::string(v));
    }
    return u;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

Settings Settings::from(const Scenario& s) {
    Settings out;
    out.params = s.params;
    out.config = s.config;
    out.dx = s.grid.dx();
    out.n = s.grid.size();
    return out;
}

void apply_setting(Settings& s, std::string_view key, std::string_view value) {
    value = trim(value);
    auto& p = s.params;
    auto& c = s.config;
    if (key == "D") p.D = to_double(key, value);
    else if (key == "omega") p.omega = to_double(key, value);
    else if (key == "a") p.a = to_double(key, value);
    else if (key == "kp") p.kp = to_double(key, value);
    else if (key == "M") p.M = to_double(key, value);
    else if (key == "dx") s.dx = to_double(key, value);
    else if (key == "n") s.n = to_unsigned(key, value);
    else if (key == "dt") c.dt = to_double(key, value);
    else if (key == "steps") c.steps = to_unsigned(key, value);
    else if (key == "estimator") c.estimator = parse_estimator(value);
    else if (key == "noise") c.noise = parse_noise_mode(value);
    else if (key == "noise_amplitude") c.noise_amplitude = to_double(key, value);
    else if (key == "seed") c.seed = to_unsigned(key, value);
    else if (key == "snapshot_every") c.snapshot_every = to_unsigned(key, value);
    else if (key == "rho_floor") c.rho_floor = to_double(key, value);
    else if (key == "split") c.split = parse_time_split(value);
    else if (key == "coupling_floor") c.coupling_floor = to_double(key, value);
    else if (key == "fd_trust") c.fd_trust = to_double(key, value);
    else throw InvalidArgument("unknown setting '" + std::string(key) + "'");
}

void apply_config(Settings& s, std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view v(line);
        if (const auto hash = v.find('#'); hash != std::string_view::npos) v = v.substr(0, hash);
        v = trim(v);
        if (v.empty()) continue;
        const auto eq = v.find('=');
        if (eq == std::string_view::npos) {
            throw InvalidArgument("config line " + std::to_string(lineno) + ": expected key = value");
        }
        apply_setting(s, trim(v.substr(0, eq)), v.substr(eq + 1));
    }
}

void apply_config_file(Settings& s, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open config file " + path.string());
    apply_config(s, in);
}

std::string to_config_text(const Settings& s) {
    const auto& p = s.params;
    const auto& c = s.config;
    std::ostringstream o;
    o << "D = " << num(p.D) << '\n'
      << "omega = " << num(p.omega) << '\n'
      << "a = " << num(p.a) << '\n'
      << "kp = " << num(p.kp) << '\n'
      << "M = " << num(p.M) << '\n'
      << "dx = " << num(s.dx) << '\n'
      << "n = " << s.n << '\n'
      << "dt = " << num(c.dt) << '\n'
      << "steps = " << c.steps << '\n'
      << "estimator = " << to_string(c.estimator) << '\n'
      << "noise = " << to_string(c.noise) << '\n'
      << "noise_amplitude = " << num(c.noise_amplitude) << '\n'
      << "seed = " << c.seed << '\n'
      << "snapshot_every = " << c.snapshot_every << '\n'
      << "rho_floor = " << num(c.rho_floor) << '\n'
      << "split = " << to_string(c.split) << '\n'
      << "coupling_floor = " << num(c.coupling_floor) << '\n'
      << "fd_trust = " << num(c.fd_trust) << '\n';
    return o.str();
}

}  // namespace qfluid
