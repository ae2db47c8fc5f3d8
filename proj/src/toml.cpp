#include "polaron/toml.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace polaron::toml {

namespace {

[[noreturn]] void fail(int line, const std::string& what)
{
    throw std::runtime_error("toml: line " + std::to_string(line) + ": " + what);
}

std::string trim(const std::string& s)
{
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Strips a trailing comment that is not inside a quoted string.
std::string strip_comment(const std::string& s)
{
    bool quoted = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"') quoted = !quoted;
        else if (s[i] == '#' && !quoted) return s.substr(0, i);
    }
    return s;
}

bool valid_key(const std::string& key)
{
    if (key.empty()) return false;
    for (char c : key)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-')
            return false;
    return true;
}

Value parse_scalar(const std::string& text, int line)
{
    Value v;
    v.line = line;
    if (text == "true" || text == "false") {
        v.kind = Value::Kind::boolean;
        v.boolean = text == "true";
        return v;
    }
    if (text.size() >= 2 && text.front() == '"' && text.back() == '"') {
        v.kind = Value::Kind::string;
        v.text = text.substr(1, text.size() - 2);
        if (v.text.find('"') != std::string::npos) fail(line, "unsupported escaped quote");
        return v;
    }
    std::size_t used = 0;
    try {
        v.number = std::stod(text, &used);
    } catch (const std::exception&) {
        fail(line, "cannot parse value '" + text + "'");
    }
    if (used != text.size()) fail(line, "trailing characters in value '" + text + "'");
    v.kind = Value::Kind::number;
    return v;
}

Value parse_value(const std::string& text, int line)
{
    if (!text.empty() && text.front() == '[') {
        if (text.back() != ']') fail(line, "unterminated array");
        Value v;
        v.kind = Value::Kind::array;
        v.line = line;
        const std::string inner = trim(text.substr(1, text.size() - 2));
        if (inner.empty()) return v;
        std::size_t start = 0;
        bool quoted = false;
        for (std::size_t i = 0; i <= inner.size(); ++i) {
            if (i < inner.size() && inner[i] == '"') quoted = !quoted;
            if (i == inner.size() || (inner[i] == ',' && !quoted)) {
                const std::string item = trim(inner.substr(start, i - start));
                if (item.empty()) fail(line, "empty array element");
                v.array.push_back(parse_scalar(item, line));
                start = i + 1;
            }
        }
        return v;
    }
    return parse_scalar(text, line);
}

}  // namespace

bool Table::has(const std::string& section, const std::string& key) const
{
    return find(section, key) != nullptr;
}

const Value* Table::find(const std::string& section, const std::string& key) const
{
    auto s = sections.find(section);
    if (s == sections.end()) return nullptr;
    auto k = s->second.find(key);
    return k == s->second.end() ? nullptr : &k->second;
}

Table parse(const std::string& text)
{
    Table table;
    std::string current;  // top level
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trim(strip_comment(raw));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(line_no, "unterminated section header");
            current = trim(line.substr(1, line.size() - 2));
            if (!valid_key(current)) fail(line_no, "invalid section name '" + current + "'");
            table.sections[current];  // empty sections are allowed
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) fail(line_no, "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        if (!valid_key(key)) fail(line_no, "invalid key '" + key + "'");
        if (table.sections[current].count(key)) fail(line_no, "duplicate key '" + key + "'");
        table.sections[current][key] = parse_value(trim(line.substr(eq + 1)), line_no);
    }
    return table;
}

Table parse_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("toml: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

}  // namespace polaron::toml
