#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace chebproj {

/// Plain-text configuration: `key = value` lines grouped under `[section]`
/// headers, addressed here as dotted keys ("mesh.trials"). Nested sections
/// spell the dots in the header ("[mesh.geometric]"). '#' starts a comment,
/// blank lines are skipped. Values keep their raw text; typed getters parse
/// on access and throw std::invalid_argument on malformed input. Later
/// assignments (including CLI overrides via set) win.
class Config {
  public:
    Config() = default;

    static Config from_file(const std::string& path);
    static Config from_string(const std::string& text);

    void set(const std::string& dotted_key, const std::string& value);
    bool has(const std::string& dotted_key) const;

    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;

    /// Comma-separated lists; an absent key yields the fallback unchanged.
    std::vector<int> get_int_list(const std::string& key, std::vector<int> fallback) const;
    std::vector<double> get_double_list(const std::string& key,
                                        std::vector<double> fallback) const;
    std::vector<std::string> get_string_list(const std::string& key,
                                             std::vector<std::string> fallback) const;

    const std::map<std::string, std::string>& entries() const { return kv_; }

  private:
    std::map<std::string, std::string> kv_;
};

}  // namespace chebproj
