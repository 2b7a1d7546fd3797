#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace cspace {

/// Minimal streaming JSON emitter with deterministic layout. Doubles are
/// written either in fixed notation with a chosen number of decimals or in
/// shortest round-trip form.
class JsonWriter {
public:
    explicit JsonWriter(int indent = 2) : indent_(indent) {}

    JsonWriter& begin_object();
    JsonWriter& end_object();
    /// A compact array (and anything nested in it) stays on one line.
    JsonWriter& begin_array(bool compact = false);
    JsonWriter& end_array();
    JsonWriter& key(std::string_view k);

    JsonWriter& value(std::string_view s);
    JsonWriter& value(const char* s) { return value(std::string_view(s)); }
    JsonWriter& value(bool b);
    JsonWriter& value(int v) { return value(static_cast<long long>(v)); }
    JsonWriter& value(long long v);
    JsonWriter& value(unsigned long long v);
    JsonWriter& fixed(double v, int decimals);
    JsonWriter& shortest(double v);
    JsonWriter& null();

    const std::string& str() const noexcept { return out_; }

    static std::string escape(std::string_view s);
    static std::string format_fixed(double v, int decimals);
    static std::string format_shortest(double v);

private:
    struct Frame {
        bool array = false;
        bool empty = true;
        bool compact = false;
    };
    void before_value();
    void newline();
    void raw(std::string_view s);

    std::string out_;
    std::vector<Frame> stack_;
    int indent_;
    bool after_key_ = false;
};

}  // namespace cspace
