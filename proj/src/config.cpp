#include "mhd2d/config.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "mhd2d/errors.hpp"
#include "mhd2d/initial_conditions.hpp"
#include "mhd2d/ranges.hpp"
#include "mhd2d/spectral.hpp"

namespace mhd2d {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError("key '" + key + "': expected a boolean, got '" + v + "'");
}

std::string join(const std::vector<double>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ", ";
        out += format_number(xs[i]);
    }
    return out;
}

}  // namespace

double parse_number(const std::string& text) {
    const std::string t = trim(text);
    if (t == "inf" || t == "+inf" || t == "infinity") return kInfinity;
    if (t.empty()) throw ConfigError("expected a number, got an empty value");
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size()) throw ConfigError("expected a number, got '" + t + "'");
    return v;
}

std::vector<double> parse_number_list(const std::string& text) {
    std::vector<double> out;
    std::string token;
    std::istringstream is(text);
    while (std::getline(is, token, ',')) {
        std::istringstream words(token);
        std::string w;
        while (words >> w) out.push_back(parse_number(w));
    }
    return out;
}

std::string to_hex(const Digest& d) {
    static const char* digits = "0123456789abcdef";
    std::string s;
    for (auto byte : d) {
        s += digits[byte >> 4];
        s += digits[byte & 0xF];
    }
    return s;
}

void RunConfig::set(const std::string& raw_key, const std::string& raw_value) {
    const std::string key = trim(raw_key);
    const std::string value = trim(raw_value);
    auto integer = [&] {
        const double v = parse_number(value);
        if (v != std::floor(v) || std::abs(v) > 1e9) throw ConfigError("key '" + key + "': expected an integer");
        return static_cast<int>(v);
    };
    if (key == "n") n = integer();
    else if (key == "beta") beta = parse_number(value);
    else if (key == "t_end") t_end = parse_number(value);
    else if (key == "output_interval") output_interval = parse_number(value);
    else if (key == "checkpoint_interval") checkpoint_interval = parse_number(value);
    else if (key == "cfl_number") cfl_number = parse_number(value);
    else if (key == "dt_max") dt_max = parse_number(value);
    else if (key == "dealias_fraction") dealias_fraction = parse_number(value);
    else if (key == "nonlinear") nonlinear = parse_bool(key, value);
    else if (key == "ic") ic.name = value;
    else if (key.rfind("ic.", 0) == 0) ic.params[key.substr(3)] = parse_number(value);
    else if (key == "seed") {
        char* end = nullptr;
        const auto v = std::strtoull(value.c_str(), &end, 10);
        if (value.empty() || value[0] == '-' || end != value.c_str() + value.size()) throw ConfigError("key 'seed': expected an unsigned integer");
        ic.seed = v;
    } else if (key == "q_list") q_list = parse_number_list(value);
    else if (key == "s_list") s_list = parse_number_list(value);
    else if (key == "r_list") r_list = parse_number_list(value);
    else if (key == "deterministic") deterministic = parse_bool(key, value);
    else if (key == "ndjson") ndjson = parse_bool(key, value);
    else if (key == "output_dir") output_dir = value;
    else throw ConfigError("unknown config key '" + key + "'");
}

void RunConfig::validate() const {
    (void)grid();
    if (!(beta > 0.0 && beta <= 2.0)) throw ConfigError("beta must lie in (0, 2]");
    if (!std::isfinite(t_end) || t_end < 0.0) throw ConfigError("t_end must be finite and >= 0");
    if (!(output_interval > 0.0) || !std::isfinite(output_interval)) throw ConfigError("output_interval must be > 0");
    if (!(checkpoint_interval >= 0.0) || !std::isfinite(checkpoint_interval))
        throw ConfigError("checkpoint_interval must be >= 0");
    step_control().validate();
    for (double q : q_list)
        if (std::isnan(q) || q < 1.0) throw ConfigError("q_list entries must be >= 1");
    for (double r : r_list)
        if (std::isnan(r) || r < 1.0) throw ConfigError("r_list entries must be >= 1");
    for (double s : s_list)
        if (!std::isfinite(s)) throw ConfigError("s_list entries must be finite");
    if (!is_known_initial_condition(ic.name)) throw ConfigError("unknown initial condition '" + ic.name + "'");
}

StepControl RunConfig::step_control() const {
    StepControl c;
    c.cfl_number = cfl_number;
    c.dt_max = dt_max;
    c.nonlinear_enabled = nonlinear;
    return c;
}

std::string RunConfig::canonical_text() const {
    std::ostringstream os;
    os << "n = " << n << '\n'
       << "beta = " << format_number(beta) << '\n'
       << "output_interval = " << format_number(output_interval) << '\n'
       << "cfl_number = " << format_number(cfl_number) << '\n'
       << "dt_max = " << format_number(dt_max) << '\n'
       << "dealias_fraction = " << format_number(dealias_fraction) << '\n'
       << "nonlinear = " << (nonlinear ? "true" : "false") << '\n'
       << "ic = " << ic.name << '\n';
    for (const auto& [k, v] : ic.params) os << "ic." << k << " = " << format_number(v) << '\n';
    os << "seed = " << ic.seed << '\n'
       << "q_list = " << join(q_list) << '\n'
       << "s_list = " << join(s_list) << '\n'
       << "r_list = " << join(r_list) << '\n'
       << "deterministic = " << (deterministic ? "true" : "false") << '\n';
    return os.str();
}

std::string RunConfig::to_text() const {
    std::ostringstream os;
    os << canonical_text() << "t_end = " << format_number(t_end) << '\n'
       << "checkpoint_interval = " << format_number(checkpoint_interval) << '\n'
       << "ndjson = " << (ndjson ? "true" : "false") << '\n';
    if (!output_dir.empty()) os << "output_dir = " << output_dir << '\n';
    return os.str();
}

Digest RunConfig::digest() const {
    const std::string text = canonical_text();
    Digest d{};
    unsigned int len = 0;
    if (EVP_Digest(text.data(), text.size(), d.data(), &len, EVP_sha256(), nullptr) != 1 || len != d.size())
        throw std::runtime_error("SHA-256 digest failed");
    return d;
}

RunConfig RunConfig::from_text(const std::string& text) {
    RunConfig c;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        c.set(line.substr(0, eq), line.substr(eq + 1));
    }
    return c;
}

RunConfig RunConfig::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_text(ss.str());
}

}  // namespace mhd2d
