#pragma once

#include <map>
#include <string>
#include <vector>

namespace polaron::toml {

// Minimal TOML subset: [section] headers, key = value lines, # comments.
// Values: bool, number, "string", or flat arrays of numbers/strings.
struct Value {
    enum class Kind { boolean, number, string, array };
    Kind kind = Kind::number;
    bool boolean = false;
    double number = 0.0;
    std::string text;
    std::vector<Value> array;
    int line = 0;
};

using Section = std::map<std::string, Value>;

struct Table {
    std::map<std::string, Section> sections;  // top-level keys live under ""

    bool has(const std::string& section, const std::string& key) const;
    const Value* find(const std::string& section, const std::string& key) const;
};

// Throws std::runtime_error with a line-numbered message on malformed input.
Table parse(const std::string& text);
Table parse_file(const std::string& path);

}  // namespace polaron::toml
