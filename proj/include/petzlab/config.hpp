#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "petzlab/numcore.hpp"

namespace petzlab {

// Raised for anything wrong with a config file: unreadable path, malformed
// line, missing or unparsable or unrecognized key. The message always names
// the offending key or line.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Flat `key = value` text, `#` starts a comment, lists are comma-separated,
// matrices are row-major with semicolon-separated rows. Getters record which
// keys were read so unrecognized keys can be reported afterwards.
class Config {
public:
    static Config from_file(const std::string& path);
    static Config from_string(const std::string& text);

    bool has(const std::string& key) const { return values_.count(key) != 0; }

    std::string get_string(const std::string& key) const;
    std::string get_string_or(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double_or(const std::string& key, double fallback) const;
    long get_int(const std::string& key) const;
    std::vector<double> get_list(const std::string& key) const;
    std::vector<double> get_list_or(const std::string& key,
                                    const std::vector<double>& fallback) const;
    // Square real matrix; rejects ragged or non-square shapes.
    Matrix get_matrix(const std::string& key) const;

    // Throws naming the first key never touched by any getter.
    void reject_unused() const;

private:
    std::map<std::string, std::string> values_;
    mutable std::set<std::string> used_;
};

}  // namespace petzlab
