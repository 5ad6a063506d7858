#include "petzlab/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace petzlab {

namespace {

std::string trim(const std::string& s) {
    const size_t from = s.find_first_not_of(" \t\r");
    if (from == std::string::npos) return {};
    const size_t to = s.find_last_not_of(" \t\r");
    return s.substr(from, to - from + 1);
}

double parse_double(const std::string& key, const std::string& token) {
    const std::string t = trim(token);
    if (t.empty()) throw ConfigError("key '" + key + "': empty number");
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size())
        throw ConfigError("key '" + key + "': expected a number, got '" + t + "'");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) parts.push_back(cur);
    if (!s.empty() && s.back() == sep) parts.push_back("");
    return parts;
}

}  // namespace

Config Config::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return from_string(text.str());
}

Config Config::from_string(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value', got '" +
                              stripped + "'");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": empty key");
        if (key.find(' ') != std::string::npos || key.find('\t') != std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": key '" + key +
                              "' contains whitespace");
        if (!cfg.values_.emplace(key, value).second)
            throw ConfigError("duplicate key '" + key + "'");
    }
    return cfg;
}

std::string Config::get_string(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("missing key '" + key + "'");
    used_.insert(key);
    if (it->second.empty()) throw ConfigError("key '" + key + "': empty value");
    return it->second;
}

std::string Config::get_string_or(const std::string& key, const std::string& fallback) const {
    return has(key) ? get_string(key) : fallback;
}

double Config::get_double(const std::string& key) const {
    return parse_double(key, get_string(key));
}

double Config::get_double_or(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}

long Config::get_int(const std::string& key) const {
    const double v = get_double(key);
    const long n = static_cast<long>(v);
    if (static_cast<double>(n) != v)
        throw ConfigError("key '" + key + "': expected an integer, got '" + get_string(key) +
                          "'");
    return n;
}

std::vector<double> Config::get_list(const std::string& key) const {
    std::vector<double> out;
    for (const std::string& token : split(get_string(key), ','))
        out.push_back(parse_double(key, token));
    return out;
}

std::vector<double> Config::get_list_or(const std::string& key,
                                        const std::vector<double>& fallback) const {
    return has(key) ? get_list(key) : fallback;
}

Matrix Config::get_matrix(const std::string& key) const {
    const std::vector<std::string> rows = split(get_string(key), ';');
    const size_t n = rows.size();
    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (size_t i = 0; i < n; ++i) {
        const std::vector<std::string> entries = split(rows[i], ',');
        if (entries.size() != n)
            throw ConfigError("key '" + key + "': row " + std::to_string(i + 1) + " has " +
                              std::to_string(entries.size()) + " entries, expected a square " +
                              std::to_string(n) + "x" + std::to_string(n) + " matrix");
        for (size_t j = 0; j < n; ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                parse_double(key, entries[j]);
    }
    return m;
}

void Config::reject_unused() const {
    for (const auto& [key, value] : values_)
        if (used_.count(key) == 0) throw ConfigError("unrecognized key '" + key + "'");
}

}  // namespace petzlab
