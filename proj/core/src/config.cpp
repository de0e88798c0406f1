#include "chebproj/config.hpp"

#include <cctype>
#include <climits>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace chebproj {

namespace {

std::string trim(const std::string& s) {
    std::size_t lo = 0, hi = s.size();
    while (lo < hi && std::isspace(static_cast<unsigned char>(s[lo]))) ++lo;
    while (hi > lo && std::isspace(static_cast<unsigned char>(s[hi - 1]))) --hi;
    return s.substr(lo, hi - lo);
}

std::string strip_comment(const std::string& line) {
    const std::size_t pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

std::vector<std::string> split_list(const std::string& raw) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream ss(raw);
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

}  // namespace

Config Config::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_string(buf.str());
}

Config Config::from_string(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string body = trim(strip_comment(line));
        if (body.empty()) continue;
        if (body.front() == '[') {
            if (body.back() != ']')
                throw std::invalid_argument("config: unterminated section header at line " +
                                            std::to_string(lineno));
            section = trim(body.substr(1, body.size() - 2));
            if (section.empty())
                throw std::invalid_argument("config: empty section name at line " +
                                            std::to_string(lineno));
            continue;
        }
        const std::size_t eq = body.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: expected key = value at line " +
                                        std::to_string(lineno));
        const std::string key = trim(body.substr(0, eq));
        const std::string value = trim(body.substr(eq + 1));
        if (key.empty())
            throw std::invalid_argument("config: empty key at line " + std::to_string(lineno));
        cfg.set(section.empty() ? key : section + "." + key, value);
    }
    return cfg;
}

void Config::set(const std::string& dotted_key, const std::string& value) {
    kv_[dotted_key] = value;
}

bool Config::has(const std::string& dotted_key) const { return kv_.count(dotted_key) > 0; }

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
    const auto it = kv_.find(key);
    return it == kv_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key, double fallback) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(it->second, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: " + key + " is not a number: " + it->second);
    }
    if (used != it->second.size())
        throw std::invalid_argument("config: " + key + " is not a number: " + it->second);
    return v;
}

int Config::get_int(const std::string& key, int fallback) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    std::size_t used = 0;
    long v = 0;
    try {
        v = std::stol(it->second, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: " + key + " is not an integer: " + it->second);
    }
    if (used != it->second.size() || v < INT_MIN || v > INT_MAX)
        throw std::invalid_argument("config: " + key + " is not an integer: " + it->second);
    return int(v);
}

std::uint64_t Config::get_u64(const std::string& key, std::uint64_t fallback) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    std::size_t used = 0;
    std::uint64_t v = 0;
    try {
        v = std::stoull(it->second, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: " + key + " is not a seed value: " + it->second);
    }
    if (used != it->second.size())
        throw std::invalid_argument("config: " + key + " is not a seed value: " + it->second);
    return v;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    const std::string& v = it->second;
    if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
    if (v == "false" || v == "no" || v == "off" || v == "0") return false;
    throw std::invalid_argument("config: " + key + " is not a boolean: " + v);
}

std::vector<int> Config::get_int_list(const std::string& key, std::vector<int> fallback) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    std::vector<int> out;
    for (const std::string& item : split_list(it->second)) {
        std::size_t used = 0;
        long v = std::stol(item, &used);
        if (used != item.size())
            throw std::invalid_argument("config: " + key + " has a bad entry: " + item);
        out.push_back(int(v));
    }
    if (out.empty()) throw std::invalid_argument("config: " + key + " is an empty list");
    return out;
}

std::vector<double> Config::get_double_list(const std::string& key,
                                            std::vector<double> fallback) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    std::vector<double> out;
    for (const std::string& item : split_list(it->second)) {
        std::size_t used = 0;
        double v = std::stod(item, &used);
        if (used != item.size())
            throw std::invalid_argument("config: " + key + " has a bad entry: " + item);
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument("config: " + key + " is an empty list");
    return out;
}

std::vector<std::string> Config::get_string_list(const std::string& key,
                                                 std::vector<std::string> fallback) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    std::vector<std::string> out = split_list(it->second);
    if (out.empty()) throw std::invalid_argument("config: " + key + " is an empty list");
    return out;
}

}  // namespace chebproj
