#include "jja/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace jja {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

} // namespace

Config Config::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return from_string(buffer.str(), path);
}

Config Config::from_string(const std::string& text, const std::string& origin) {
    Config cfg;
    cfg.origin_ = origin;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            std::ostringstream msg;
            msg << origin << ":" << line_no << ": expected 'key = value', got '" << line << "'";
            throw ConfigError(msg.str());
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            std::ostringstream msg;
            msg << origin << ":" << line_no << ": empty key";
            throw ConfigError(msg.str());
        }
        if (cfg.values_.count(key)) {
            std::ostringstream msg;
            msg << origin << ":" << line_no << ": duplicate key '" << key << "' (first at line "
                << cfg.lines_[key] << ")";
            throw ConfigError(msg.str());
        }
        cfg.values_[key] = value;
        cfg.lines_[key] = line_no;
    }
    return cfg;
}

void Config::set(const std::string& key, const std::string& value) {
    values_[key] = value;
    lines_[key] = 0;
}

bool Config::has(const std::string& key) const { return values_.count(key) > 0; }

std::string Config::get_string(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) fail(key, "missing required key");
    return it->second;
}

double Config::get_double(const std::string& key) const {
    const std::string s = get_string(key);
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(s.c_str(), &end);
    if (errno != 0 || end == s.c_str() || *end != '\0')
        fail(key, "value '" + s + "' is not a number");
    return v;
}

int Config::get_int(const std::string& key) const {
    const std::string s = get_string(key);
    char* end = nullptr;
    errno = 0;
    const long v = std::strtol(s.c_str(), &end, 10);
    if (errno != 0 || end == s.c_str() || *end != '\0')
        fail(key, "value '" + s + "' is not an integer");
    return static_cast<int>(v);
}

std::uint64_t Config::get_uint64(const std::string& key) const {
    const std::string s = get_string(key);
    char* end = nullptr;
    errno = 0;
    const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
    if (errno != 0 || end == s.c_str() || *end != '\0')
        fail(key, "value '" + s + "' is not an unsigned integer");
    return static_cast<std::uint64_t>(v);
}

int Config::line_of(const std::string& key) const {
    const auto it = lines_.find(key);
    return it == lines_.end() ? 0 : it->second;
}

void Config::fail(const std::string& key, const std::string& what) const {
    std::ostringstream msg;
    msg << origin_;
    const int line = line_of(key);
    if (line > 0) msg << ":" << line;
    msg << ": key '" << key << "': " << what;
    throw ConfigError(msg.str());
}

std::map<std::string, std::string> resolve_against_schema(const Config& config,
                                                          const Schema& schema) {
    std::map<std::string, std::string> resolved;
    for (const KeySpec& spec : schema) {
        if (config.has(spec.name)) {
            resolved[spec.name] = config.get_string(spec.name);
        } else if (spec.required) {
            throw ConfigError("missing required key '" + spec.name + "' (" + spec.help + ")");
        } else {
            resolved[spec.name] = spec.default_value;
        }
    }
    for (const auto& [key, value] : config.values()) {
        (void)value;
        const bool known = std::any_of(schema.begin(), schema.end(),
                                       [&](const KeySpec& s) { return s.name == key; });
        if (!known) {
            std::ostringstream msg;
            msg << "unknown key '" << key << "'";
            if (config.line_of(key) > 0) msg << " at line " << config.line_of(key);
            throw ConfigError(msg.str());
        }
    }
    return resolved;
}

} // namespace jja
