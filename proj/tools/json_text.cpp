#include "json_text.hpp"

#include <cmath>
#include <cstdio>

namespace clonal::cli {

namespace {

void emit(const nlohmann::ordered_json& v, int depth, std::string& out) {
    const std::string pad(2 * depth, ' ');
    const std::string inner(2 * (depth + 1), ' ');
    switch (v.type()) {
    case nlohmann::json::value_t::object: {
        if (v.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (auto it = v.begin(); it != v.end(); ++it) {
            if (!first) out += ",\n";
            first = false;
            out += inner + nlohmann::ordered_json(it.key()).dump() + ": ";
            emit(it.value(), depth + 1, out);
        }
        out += "\n" + pad + "}";
        return;
    }
    case nlohmann::json::value_t::array: {
        if (v.empty()) {
            out += "[]";
            return;
        }
        // Arrays of scalars stay on one line.
        bool flat = true;
        for (const auto& x : v) flat = flat && !x.is_structured();
        out += flat ? "[" : "[\n";
        for (std::size_t n = 0; n < v.size(); ++n) {
            if (n > 0) out += flat ? ", " : ",\n";
            if (!flat) out += inner;
            emit(v[n], depth + 1, out);
        }
        out += flat ? "]" : "\n" + pad + "]";
        return;
    }
    case nlohmann::json::value_t::number_float: {
        const double d = v.get<double>();
        if (!std::isfinite(d)) {
            out += "null";
            return;
        }
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", d);
        out += buf;
        return;
    }
    default: out += v.dump(); return;
    }
}

} // namespace

std::string format_json(const nlohmann::ordered_json& value) {
    std::string out;
    emit(value, 0, out);
    out += "\n";
    return out;
}

std::string csv_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

} // namespace clonal::cli
