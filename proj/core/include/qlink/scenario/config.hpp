#pragma once

#include "qlink/error.hpp"
#include "qlink/timetag.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace qlink::scenario {

QLINK_DEFINE_ERROR(ConfigError);

// Unit dimensions accepted by the typed getters. Every physical quantity in
// a config must carry a unit of the right dimension; bare numbers are only
// legal through number()/integer().
enum class Dim {
    LengthKm,   // km, m
    LengthUm,   // um, nm, mm
    LengthNm,   // nm, um
    TimePs,     // ps, ns, us, ms, s
    TimeS,      // s, ms, min
    RateHz,     // Hz, kHz, MHz, /s
    LossDb,     // dB
    LossDbPerKm,// dB/km
    AngleRad,   // rad, deg
    DriftRate,  // rad/sqrt_s
};

// One parsed `lhs = value...` line. The key may carry its own unit token
// (attenuation tables use wavelength keys like `810 nm`).
struct ConfigEntry {
    std::string key;
    std::string key_unit;
    std::vector<std::string> value_tokens;
    int line = 0;
};

// Nested block of entries and sub-blocks:
//   key = value [unit]
//   kind [label] { ... }
//   include "path"
// Comments run from '#' to end of line. Includes splice the included file's
// statements into the enclosing block.
class ConfigNode {
public:
    const std::string& kind() const { return kind_; }
    const std::string& label() const { return label_; }
    const std::string& source() const { return source_; }
    int line() const { return line_; }

    bool has(const std::string& key) const;
    double number(const std::string& key) const;
    std::uint64_t integer(const std::string& key) const;
    double quantity(const std::string& key, Dim dim) const;
    TimePs time_ps(const std::string& key) const;
    std::string word(const std::string& key) const;
    std::vector<std::string> words(const std::string& key) const;
    bool flag(const std::string& key) const;

    std::optional<double> maybe_number(const std::string& key) const;
    std::optional<double> maybe_quantity(const std::string& key, Dim dim) const;
    std::optional<TimePs> maybe_time_ps(const std::string& key) const;
    std::optional<std::string> maybe_word(const std::string& key) const;

    const std::vector<ConfigEntry>& entries() const { return entries_; }
    const ConfigEntry& entry(const std::string& key) const;

    const ConfigNode* find_block(const std::string& kind) const;
    const ConfigNode& block(const std::string& kind) const;
    std::vector<const ConfigNode*> blocks(const std::string& kind) const;

    [[noreturn]] void fail(int line, const std::string& what) const;

private:
    friend class ConfigParser;

    std::string kind_;
    std::string label_;
    std::string source_;
    int line_ = 0;
    std::vector<ConfigEntry> entries_;
    std::vector<ConfigNode> children_;
};

ConfigNode parse_config_file(const std::filesystem::path& path);
ConfigNode parse_config_text(const std::string& text, const std::string& display_name);

} // namespace qlink::scenario
