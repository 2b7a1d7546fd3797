#include "cspace/json_writer.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace cspace {

std::string JsonWriter::escape(std::string_view s) {
    std::string out = "\"";
    for (unsigned char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (ch < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", ch);
                    out += buf;
                } else {
                    out += static_cast<char>(ch);
                }
        }
    }
    out += '"';
    return out;
}

std::string JsonWriter::format_fixed(double v, int decimals) {
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite number in JSON output");
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    std::string s = buf;
    // Avoid "-0.000000".
    if (s[0] == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
    return s;
}

std::string JsonWriter::format_shortest(double v) {
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite number in JSON output");
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    std::string s(buf, ptr);
    if (s.find_first_of(".eE") == std::string::npos) s += ".0";
    return s;
}

void JsonWriter::newline() {
    if (indent_ <= 0) return;
    out_ += '\n';
    out_.append(stack_.size() * static_cast<std::size_t>(indent_), ' ');
}

void JsonWriter::before_value() {
    if (after_key_) {
        after_key_ = false;
        return;
    }
    if (stack_.empty()) return;
    if (!stack_.back().array) throw std::logic_error("JSON value inside object needs a key");
    const bool first = stack_.back().empty;
    if (!first) out_ += ',';
    stack_.back().empty = false;
    if (stack_.back().compact) {
        if (!first) out_ += ' ';
    } else {
        newline();
    }
}

void JsonWriter::raw(std::string_view s) {
    before_value();
    out_ += s;
}

JsonWriter& JsonWriter::begin_object() {
    raw("{");
    stack_.push_back({false, true, !stack_.empty() && stack_.back().compact});
    return *this;
}

JsonWriter& JsonWriter::end_object() {
    Frame f = stack_.back();
    stack_.pop_back();
    if (!f.empty && !f.compact) newline();
    out_ += '}';
    return *this;
}

JsonWriter& JsonWriter::begin_array(bool compact) {
    raw("[");
    stack_.push_back({true, true, compact || (!stack_.empty() && stack_.back().compact)});
    return *this;
}

JsonWriter& JsonWriter::end_array() {
    Frame f = stack_.back();
    stack_.pop_back();
    if (!f.empty && !f.compact) newline();
    out_ += ']';
    return *this;
}

JsonWriter& JsonWriter::key(std::string_view k) {
    if (stack_.empty() || stack_.back().array) throw std::logic_error("JSON key outside object");
    const bool first = stack_.back().empty;
    if (!first) out_ += ',';
    stack_.back().empty = false;
    if (stack_.back().compact) {
        if (!first) out_ += ' ';
    } else {
        newline();
    }
    out_ += escape(k);
    out_ += indent_ > 0 ? ": " : ":";
    after_key_ = true;
    return *this;
}

JsonWriter& JsonWriter::value(std::string_view s) {
    raw(escape(s));
    return *this;
}

JsonWriter& JsonWriter::value(bool b) {
    raw(b ? "true" : "false");
    return *this;
}

JsonWriter& JsonWriter::value(long long v) {
    raw(std::to_string(v));
    return *this;
}

JsonWriter& JsonWriter::value(unsigned long long v) {
    raw(std::to_string(v));
    return *this;
}

JsonWriter& JsonWriter::fixed(double v, int decimals) {
    raw(format_fixed(v, decimals));
    return *this;
}

JsonWriter& JsonWriter::shortest(double v) {
    raw(format_shortest(v));
    return *this;
}

JsonWriter& JsonWriter::null() {
    raw("null");
    return *this;
}

}  // namespace cspace
