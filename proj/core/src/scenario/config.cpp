#include "qlink/scenario/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

namespace qlink::scenario {
namespace {

struct UnitTable {
    const char* unit;
    double factor;
};

const std::vector<UnitTable>& units_for(Dim dim) {
    static const std::vector<UnitTable> length_km = {{"km", 1.0}, {"m", 1e-3}};
    static const std::vector<UnitTable> length_um = {{"um", 1.0}, {"nm", 1e-3}, {"mm", 1e3}};
    static const std::vector<UnitTable> length_nm = {{"nm", 1.0}, {"um", 1e3}};
    static const std::vector<UnitTable> time_ps = {
        {"ps", 1.0}, {"ns", 1e3}, {"us", 1e6}, {"ms", 1e9}, {"s", 1e12}};
    static const std::vector<UnitTable> time_s = {{"s", 1.0}, {"ms", 1e-3}, {"min", 60.0}};
    static const std::vector<UnitTable> rate_hz = {
        {"Hz", 1.0}, {"kHz", 1e3}, {"MHz", 1e6}, {"/s", 1.0}};
    static const std::vector<UnitTable> loss_db = {{"dB", 1.0}};
    static const std::vector<UnitTable> loss_db_km = {{"dB/km", 1.0}};
    static const std::vector<UnitTable> angle = {{"rad", 1.0},
                                                 {"deg", std::numbers::pi / 180.0}};
    static const std::vector<UnitTable> drift = {{"rad/sqrt_s", 1.0}};
    switch (dim) {
    case Dim::LengthKm: return length_km;
    case Dim::LengthUm: return length_um;
    case Dim::LengthNm: return length_nm;
    case Dim::TimePs: return time_ps;
    case Dim::TimeS: return time_s;
    case Dim::RateHz: return rate_hz;
    case Dim::LossDb: return loss_db;
    case Dim::LossDbPerKm: return loss_db_km;
    case Dim::AngleRad: return angle;
    case Dim::DriftRate: return drift;
    }
    return loss_db;
}

std::string dim_units(Dim dim) {
    std::string out;
    for (const auto& u : units_for(dim)) {
        if (!out.empty())
            out += ", ";
        out += u.unit;
    }
    return out;
}

bool parse_double(const std::string& token, double& out) {
    const char* begin = token.c_str();
    char* end = nullptr;
    out = std::strtod(begin, &end);
    return end == begin + token.size() && token.size() > 0 && std::isfinite(out);
}

} // namespace

void ConfigNode::fail(int line, const std::string& what) const {
    std::ostringstream os;
    os << source_ << ":" << line << ": " << what;
    throw ConfigError(os.str());
}

bool ConfigNode::has(const std::string& key) const {
    for (const auto& e : entries_)
        if (e.key == key)
            return true;
    return false;
}

const ConfigEntry& ConfigNode::entry(const std::string& key) const {
    const ConfigEntry* found = nullptr;
    for (const auto& e : entries_) {
        if (e.key != key)
            continue;
        if (found)
            fail(e.line, "duplicate key '" + key + "'");
        found = &e;
    }
    if (!found)
        fail(line_, "missing required key '" + key + "'" +
                        (kind_.empty() ? "" : " in block '" + kind_ + "'"));
    return *found;
}

double ConfigNode::number(const std::string& key) const {
    const ConfigEntry& e = entry(key);
    double v = 0.0;
    if (e.value_tokens.size() != 1 || !parse_double(e.value_tokens[0], v))
        fail(e.line, "'" + key + "' must be a bare number");
    return v;
}

std::uint64_t ConfigNode::integer(const std::string& key) const {
    const ConfigEntry& e = entry(key);
    if (e.value_tokens.size() != 1)
        fail(e.line, "'" + key + "' must be a single integer");
    const std::string& tok = e.value_tokens[0];
    char* end = nullptr;
    const unsigned long long v = std::strtoull(tok.c_str(), &end, 10);
    if (end != tok.c_str() + tok.size() || tok.empty())
        fail(e.line, "'" + key + "' must be a non-negative integer");
    return v;
}

double ConfigNode::quantity(const std::string& key, Dim dim) const {
    const ConfigEntry& e = entry(key);
    double v = 0.0;
    if (e.value_tokens.size() != 2 || !parse_double(e.value_tokens[0], v))
        fail(e.line, "'" + key + "' must be <number> <unit> with unit in {" + dim_units(dim) + "}");
    for (const auto& u : units_for(dim))
        if (e.value_tokens[1] == u.unit)
            return v * u.factor;
    fail(e.line, "'" + key + "' has unit '" + e.value_tokens[1] + "', expected one of {" +
                     dim_units(dim) + "}");
}

TimePs ConfigNode::time_ps(const std::string& key) const {
    return static_cast<TimePs>(std::llround(quantity(key, Dim::TimePs)));
}

std::string ConfigNode::word(const std::string& key) const {
    const ConfigEntry& e = entry(key);
    if (e.value_tokens.size() != 1)
        fail(e.line, "'" + key + "' must be a single word");
    return e.value_tokens[0];
}

std::vector<std::string> ConfigNode::words(const std::string& key) const {
    const ConfigEntry& e = entry(key);
    std::vector<std::string> out;
    for (std::string tok : e.value_tokens) {
        while (!tok.empty() && tok.back() == ',')
            tok.pop_back();
        if (!tok.empty())
            out.push_back(tok);
    }
    if (out.empty())
        fail(e.line, "'" + key + "' must list at least one word");
    return out;
}

bool ConfigNode::flag(const std::string& key) const {
    const std::string v = word(key);
    if (v == "on" || v == "true")
        return true;
    if (v == "off" || v == "false")
        return false;
    fail(entry(key).line, "'" + key + "' must be on/off/true/false");
}

std::optional<double> ConfigNode::maybe_number(const std::string& key) const {
    return has(key) ? std::optional<double>(number(key)) : std::nullopt;
}

std::optional<double> ConfigNode::maybe_quantity(const std::string& key, Dim dim) const {
    return has(key) ? std::optional<double>(quantity(key, dim)) : std::nullopt;
}

std::optional<TimePs> ConfigNode::maybe_time_ps(const std::string& key) const {
    return has(key) ? std::optional<TimePs>(time_ps(key)) : std::nullopt;
}

std::optional<std::string> ConfigNode::maybe_word(const std::string& key) const {
    return has(key) ? std::optional<std::string>(word(key)) : std::nullopt;
}

const ConfigNode* ConfigNode::find_block(const std::string& kind) const {
    const ConfigNode* found = nullptr;
    for (const auto& c : children_) {
        if (c.kind_ != kind)
            continue;
        if (found)
            fail(c.line_, "duplicate block '" + kind + "'");
        found = &c;
    }
    return found;
}

const ConfigNode& ConfigNode::block(const std::string& kind) const {
    const ConfigNode* b = find_block(kind);
    if (!b)
        fail(line_, "missing required block '" + kind + "'");
    return *b;
}

std::vector<const ConfigNode*> ConfigNode::blocks(const std::string& kind) const {
    std::vector<const ConfigNode*> out;
    for (const auto& c : children_)
        if (c.kind_ == kind)
            out.push_back(&c);
    return out;
}

class ConfigParser {
public:
    static ConfigNode parse_file(const std::filesystem::path& path, int depth);
    static ConfigNode parse_text(const std::string& text, const std::string& name,
                                 const std::filesystem::path& base_dir, int depth);

private:
    static std::vector<std::string> tokenize(const ConfigNode& ctx, const std::string& line,
                                             int line_no);
};

std::vector<std::string> ConfigParser::tokenize(const ConfigNode& ctx, const std::string& line,
                                                int line_no) {
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        const char c = line[i];
        if (c == '#')
            break;
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (c == '"') {
            const std::size_t close = line.find('"', i + 1);
            if (close == std::string::npos)
                ctx.fail(line_no, "unterminated quote");
            tokens.push_back(line.substr(i + 1, close - i - 1));
            i = close + 1;
            continue;
        }
        if (c == '{' || c == '}' || c == '=') {
            tokens.push_back(std::string(1, c));
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) &&
               line[j] != '{' && line[j] != '}' && line[j] != '=' && line[j] != '#')
            ++j;
        tokens.push_back(line.substr(i, j - i));
        i = j;
    }
    return tokens;
}

ConfigNode ConfigParser::parse_text(const std::string& text, const std::string& name,
                                    const std::filesystem::path& base_dir, int depth) {
    if (depth > 16)
        throw ConfigError(name + ": include nesting too deep (cycle?)");

    ConfigNode root;
    root.source_ = name;
    root.line_ = 1;
    std::vector<ConfigNode*> stack = {&root};

    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        ConfigNode& top = *stack.back();
        auto tokens = tokenize(top, line, line_no);
        if (tokens.empty())
            continue;

        if (tokens.size() == 1 && tokens[0] == "}") {
            if (stack.size() == 1)
                top.fail(line_no, "unmatched '}'");
            stack.pop_back();
            continue;
        }

        if (tokens[0] == "include") {
            if (tokens.size() != 2)
                top.fail(line_no, "include expects one path");
            const std::filesystem::path inc = base_dir / tokens[1];
            ConfigNode sub = parse_file(inc, depth + 1);
            for (auto& e : sub.entries_)
                top.entries_.push_back(std::move(e));
            for (auto& c : sub.children_)
                top.children_.push_back(std::move(c));
            continue;
        }

        if (tokens.back() == "{") {
            if (tokens.size() < 2 || tokens.size() > 3)
                top.fail(line_no, "block header must be 'kind [label] {'");
            ConfigNode child;
            child.kind_ = tokens[0];
            child.label_ = tokens.size() == 3 ? tokens[1] : "";
            child.source_ = name;
            child.line_ = line_no;
            top.children_.push_back(std::move(child));
            stack.push_back(&top.children_.back());
            continue;
        }

        // entry: lhs [unit] = value...
        std::size_t eq = tokens.size();
        for (std::size_t k = 0; k < tokens.size(); ++k)
            if (tokens[k] == "=") {
                eq = k;
                break;
            }
        if (eq == 0 || eq > 2 || eq + 1 >= tokens.size())
            top.fail(line_no, "expected 'key [unit] = value [unit]'");
        ConfigEntry entry;
        entry.key = tokens[0];
        entry.key_unit = eq == 2 ? tokens[1] : "";
        entry.value_tokens.assign(tokens.begin() + static_cast<std::ptrdiff_t>(eq) + 1,
                                  tokens.end());
        entry.line = line_no;
        top.entries_.push_back(std::move(entry));
    }

    if (stack.size() != 1)
        stack.back()->fail(line_no, "unterminated block '" + stack.back()->kind_ + "'");
    return root;
}

ConfigNode ConfigParser::parse_file(const std::filesystem::path& path, int depth) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file: " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_text(buffer.str(), path.string(), path.parent_path(), depth);
}

ConfigNode parse_config_file(const std::filesystem::path& path) {
    return ConfigParser::parse_file(path, 0);
}

ConfigNode parse_config_text(const std::string& text, const std::string& display_name) {
    return ConfigParser::parse_text(text, display_name, std::filesystem::path("."), 0);
}

} // namespace qlink::scenario
