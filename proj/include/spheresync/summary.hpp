#pragma once

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "spheresync/matrix.hpp"

namespace spheresync {

/// All floats in summary documents carry 17 significant digits, enough to
/// round-trip a double exactly and to keep output byte-deterministic.
inline std::string format_float(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string format_complex(const Complex& z) {
    std::string s = format_float(z.real());
    s += (z.imag() < 0.0 || (z.imag() == 0.0 && std::signbit(z.imag()))) ? "-" : "+";
    s += format_float(std::abs(z.imag()));
    s += "i";
    return s;
}

/// Ordered tree of key/value pairs rendered as indented "key: value" text.
/// The CLI also renders the same tree as JSON on request.
class Doc {
public:
    enum class Kind { Map, List, Scalar };
    enum class ScalarType { String, Float, Int, Bool };

    Doc() : kind_(Kind::Map) {}

    static Doc map() { return Doc(); }
    static Doc list() {
        Doc d;
        d.kind_ = Kind::List;
        return d;
    }
    static Doc scalar(const std::string& s) { return make_scalar(ScalarType::String, s, 0.0, 0, false); }
    static Doc scalar(const char* s) { return scalar(std::string(s)); }
    static Doc scalar(double v) { return make_scalar(ScalarType::Float, {}, v, 0, false); }
    static Doc scalar(int v) { return make_scalar(ScalarType::Int, {}, 0.0, v, false); }
    static Doc scalar(long long v) { return make_scalar(ScalarType::Int, {}, 0.0, v, false); }
    static Doc scalar(bool v) { return make_scalar(ScalarType::Bool, {}, 0.0, 0, v); }

    Kind kind() const { return kind_; }
    ScalarType scalar_type() const { return scalar_type_; }
    const std::string& as_string() const { return str_; }
    double as_float() const { return num_; }
    long long as_int() const { return int_; }
    bool as_bool() const { return bool_; }

    const std::vector<std::pair<std::string, Doc>>& entries() const { return entries_; }
    const std::vector<Doc>& items() const { return items_; }

    Doc& add(const std::string& key, Doc value) {
        entries_.emplace_back(key, std::move(value));
        return *this;
    }
    template <typename V>
    Doc& add(const std::string& key, V value) {
        return add(key, Doc::scalar(value));
    }
    Doc& push_back(Doc value) {
        items_.push_back(std::move(value));
        return *this;
    }
    template <typename V>
    Doc& push_back(V value) {
        return push_back(Doc::scalar(value));
    }

    std::string to_text() const {
        std::ostringstream out;
        render(out, 0);
        return out.str();
    }

private:
    static Doc make_scalar(ScalarType t, std::string s, double v, long long i, bool b) {
        Doc d;
        d.kind_ = Kind::Scalar;
        d.scalar_type_ = t;
        d.str_ = std::move(s);
        d.num_ = v;
        d.int_ = i;
        d.bool_ = b;
        return d;
    }

    std::string scalar_text() const {
        switch (scalar_type_) {
            case ScalarType::String: return str_;
            case ScalarType::Float: return format_float(num_);
            case ScalarType::Int: return std::to_string(int_);
            case ScalarType::Bool: return bool_ ? "true" : "false";
        }
        return {};
    }

    void render(std::ostringstream& out, int indent) const {
        const std::string pad(static_cast<std::size_t>(indent), ' ');
        if (kind_ == Kind::Map) {
            for (const auto& [key, value] : entries_) {
                if (value.kind_ == Kind::Scalar) {
                    out << pad << key << ": " << value.scalar_text() << "\n";
                } else {
                    out << pad << key << ":\n";
                    value.render(out, indent + 2);
                }
            }
        } else if (kind_ == Kind::List) {
            for (const Doc& item : items_) {
                if (item.kind_ == Kind::Scalar) {
                    out << pad << "- " << item.scalar_text() << "\n";
                } else {
                    out << pad << "-\n";
                    item.render(out, indent + 2);
                }
            }
        } else {
            out << pad << scalar_text() << "\n";
        }
    }

    Kind kind_ = Kind::Map;
    ScalarType scalar_type_ = ScalarType::String;
    std::string str_;
    double num_ = 0.0;
    long long int_ = 0;
    bool bool_ = false;
    std::vector<std::pair<std::string, Doc>> entries_;
    std::vector<Doc> items_;
};

} // namespace spheresync
