#include "shuttlesense/canonical_json.hpp"

#include <cmath>
#include <cstdio>

namespace shuttlesense::canon {

std::string format_number(double v) {
    if (std::isnan(v)) return "null";
    if (std::isinf(v)) return v > 0 ? "1e9999" : "-1e9999";
    // Integral values up to 2^53 print without an exponent so ids and
    // counts stay readable.
    if (v == std::floor(v) && std::abs(v) < 9.007199254740992e15) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.0f", v);
        return buf;
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

namespace {

void escape_string(const std::string& s, std::string& out) {
    out += '"';
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
}

} // namespace

void Value::dump(std::string& out) const {
    struct Visitor {
        std::string& out;
        void operator()(std::nullptr_t) const { out += "null"; }
        void operator()(bool b) const { out += b ? "true" : "false"; }
        void operator()(double d) const { out += format_number(d); }
        void operator()(const std::string& s) const { escape_string(s, out); }
        void operator()(const Array& a) const {
            out += '[';
            bool first = true;
            for (const Value& v : a) {
                if (!first) out += ',';
                first = false;
                v.dump(out);
            }
            out += ']';
        }
        void operator()(const Object& o) const {
            out += '{';
            bool first = true;
            for (const auto& [k, v] : o) {
                if (!first) out += ',';
                first = false;
                escape_string(k, out);
                out += ':';
                v.dump(out);
            }
            out += '}';
        }
    };
    std::visit(Visitor{out}, data_);
}

std::string Value::dump() const {
    std::string out;
    dump(out);
    return out;
}

} // namespace shuttlesense::canon
