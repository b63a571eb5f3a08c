#include "atse/config_io.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>

#include "atse/errors.hpp"

namespace atse {

namespace {

double to_double(const std::string& key, const std::string& value) {
    const char* begin = value.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw ParameterError("config: bad numeric value for " + key + ": '" + value + "'");
    return v;
}

std::uint64_t to_u64(const std::string& key, const std::string& value) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || ptr != value.data() + value.size())
        throw ParameterError("config: bad integer value for " + key + ": '" + value + "'");
    return v;
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string format_number(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

}  // namespace

EstimatorConfig parse_config(std::istream& in) {
    EstimatorConfig cfg;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        std::size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw ParameterError("config line " + std::to_string(line_no) +
                                 ": expected key=value, got '" + s + "'");
        std::string key = trim(s.substr(0, eq));
        std::string value = trim(s.substr(eq + 1));

        if (key == "eta")
            cfg.eta = to_double(key, value);
        else if (key == "n_trees")
            cfg.n_trees = static_cast<std::size_t>(to_u64(key, value));
        else if (key == "warmup")
            cfg.warmup = static_cast<std::size_t>(to_u64(key, value));
        else if (key == "window_lo")
            cfg.window_lo = static_cast<std::size_t>(to_u64(key, value));
        else if (key == "window_hi")
            cfg.window_hi = static_cast<std::size_t>(to_u64(key, value));
        else if (key == "n_lags")
            cfg.n_lags = static_cast<std::size_t>(to_u64(key, value));
        else if (key == "n_web")
            cfg.n_web = static_cast<std::size_t>(to_u64(key, value));
        else if (key == "max_depth")
            cfg.tree_params.max_depth = static_cast<std::size_t>(to_u64(key, value));
        else if (key == "min_samples_leaf")
            cfg.tree_params.min_samples_leaf = static_cast<std::size_t>(to_u64(key, value));
        else if (key == "min_impurity_decrease")
            cfg.tree_params.min_impurity_decrease = to_double(key, value);
        else if (key == "master_seed")
            cfg.master_seed = to_u64(key, value);
        else
            throw ParameterError("config line " + std::to_string(line_no) +
                                 ": unknown key '" + key + "'");
    }
    cfg.validate();
    return cfg;
}

EstimatorConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParameterError("cannot open config '" + path + "'");
    try {
        return parse_config(in);
    } catch (const ParameterError& e) {
        throw ParameterError(path + ": " + e.what());
    }
}

void write_config(std::ostream& out, const EstimatorConfig& cfg) {
    out << "eta=" << format_number(cfg.eta) << '\n'
        << "n_trees=" << cfg.n_trees << '\n'
        << "warmup=" << cfg.warmup << '\n'
        << "window_lo=" << cfg.window_lo << '\n'
        << "window_hi=" << cfg.window_hi << '\n'
        << "n_lags=" << cfg.n_lags << '\n'
        << "n_web=" << cfg.n_web << '\n'
        << "max_depth=" << cfg.tree_params.max_depth << '\n'
        << "min_samples_leaf=" << cfg.tree_params.min_samples_leaf << '\n'
        << "min_impurity_decrease=" << format_number(cfg.tree_params.min_impurity_decrease)
        << '\n'
        << "master_seed=" << cfg.master_seed << '\n';
}

}  // namespace atse
