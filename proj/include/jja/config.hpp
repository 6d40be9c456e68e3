#pragma once

// Key/value run configuration: `key = value` lines, '#' comments. Each
// subcommand validates against a declared schema so that typos and missing
// keys fail with line/key diagnostics, and every resolved value (defaults
// included) lands in the reproducibility manifest.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace jja {

/// Schema or syntax problem in a configuration; the CLI maps it to exit 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Config {
public:
    static Config from_file(const std::string& path);
    static Config from_string(const std::string& text, const std::string& origin = "<string>");

    /// CLI override `--set key=value`; replaces any file value.
    void set(const std::string& key, const std::string& value);

    bool has(const std::string& key) const;
    std::string get_string(const std::string& key) const;
    double get_double(const std::string& key) const;
    int get_int(const std::string& key) const;
    std::uint64_t get_uint64(const std::string& key) const;

    const std::map<std::string, std::string>& values() const { return values_; }
    int line_of(const std::string& key) const; ///< 0 when set programmatically

private:
    std::string origin_;
    std::map<std::string, std::string> values_;
    std::map<std::string, int> lines_;

    [[noreturn]] void fail(const std::string& key, const std::string& what) const;
};

struct KeySpec {
    std::string name;
    bool required = false;
    std::string default_value; ///< used when not required and absent
    std::string units;         ///< annotation for docs/manifest ("A", "F", "1", ...)
    std::string help;
};

using Schema = std::vector<KeySpec>;

/// Checks required keys and rejects unknown ones, then returns the full
/// resolved key→value map (defaults applied) for the manifest.
std::map<std::string, std::string> resolve_against_schema(const Config& config,
                                                          const Schema& schema);

} // namespace jja
