#pragma once

// Machine-readable command reports.  The line-oriented form is
//   command=<name>
//   param.<key>=<text>
//   result.<key>=<number | comma-separated numbers | text>
//   prov.<key>=<closed_form | empirical | comparison>
// with '#' comment lines permitted anywhere.  Every result carries a
// provenance entry; numbers are serialized with 17 significant digits so
// they parse back to the identical double.

#include <cstdio>
#include <cstdlib>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

#include "chamfer/errors.hpp"
#include "chamfer/types.hpp"

namespace chamfer {

enum class Provenance { ClosedForm, Empirical, Comparison };

inline std::string to_string(Provenance p) {
    switch (p) {
        case Provenance::ClosedForm: return "closed_form";
        case Provenance::Empirical: return "empirical";
        case Provenance::Comparison: return "comparison";
    }
    return "?";
}

inline Provenance provenance_from_string(const std::string& s) {
    if (s == "closed_form") return Provenance::ClosedForm;
    if (s == "empirical") return Provenance::Empirical;
    if (s == "comparison") return Provenance::Comparison;
    throw ParseError("unknown provenance '" + s + "'");
}

namespace detail {

inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace detail

class Report {
public:
    using Value = std::variant<double, std::vector<double>, std::string>;

    explicit Report(std::string command = "") : command_(std::move(command)) {}

    const std::string& command() const { return command_; }

    void param(const std::string& key, const std::string& value) {
        params_.emplace_back(key, value);
    }
    void param(const std::string& key, double value) { param(key, detail::format_double(value)); }
    void param(const std::string& key, int value) { param(key, std::to_string(value)); }

    void result(const std::string& key, Value value, Provenance prov) {
        results_.emplace_back(key, std::move(value));
        provenance_[key] = prov;
    }
    void result(const std::string& key, Vec2i v, Provenance prov) {
        result(key, std::vector<double>{double(v.x), double(v.y)}, prov);
    }

    const std::vector<std::pair<std::string, std::string>>& params() const { return params_; }
    const std::vector<std::pair<std::string, Value>>& results() const { return results_; }
    Provenance provenance(const std::string& key) const { return provenance_.at(key); }

    bool has_result(const std::string& key) const {
        for (const auto& [k, v] : results_)
            if (k == key) return true;
        return false;
    }
    const Value& value(const std::string& key) const {
        for (const auto& [k, v] : results_)
            if (k == key) return v;
        throw BadRange("no result named '" + key + "'");
    }
    double number(const std::string& key) const { return std::get<double>(value(key)); }

    std::string to_kv() const {
        std::string out = "command=" + command_ + "\n";
        for (const auto& [k, v] : params_) out += "param." + k + "=" + v + "\n";
        for (const auto& [k, v] : results_) {
            out += "result." + k + "=" + value_text(v) + "\n";
            out += "prov." + k + "=" + to_string(provenance_.at(k)) + "\n";
        }
        return out;
    }

    std::string to_json() const {
        nlohmann::json j;
        j["command"] = command_;
        j["parameters"] = nlohmann::json::object();
        for (const auto& [k, v] : params_) j["parameters"][k] = v;
        j["results"] = nlohmann::json::object();
        for (const auto& [k, v] : results_) {
            if (std::holds_alternative<double>(v))
                j["results"][k] = std::get<double>(v);
            else if (std::holds_alternative<std::vector<double>>(v))
                j["results"][k] = std::get<std::vector<double>>(v);
            else
                j["results"][k] = std::get<std::string>(v);
        }
        j["provenance"] = nlohmann::json::object();
        for (const auto& [k, p] : provenance_) j["provenance"][k] = to_string(p);
        return j.dump(2);
    }

    static Report parse_kv(const std::string& text) {
        Report rep;
        std::map<std::string, Provenance> provs;
        std::size_t pos = 0;
        while (pos < text.size()) {
            std::size_t end = text.find('\n', pos);
            if (end == std::string::npos) end = text.size();
            const std::string line = text.substr(pos, end - pos);
            pos = end + 1;
            if (line.empty() || line[0] == '#') continue;
            const std::size_t eq = line.find('=');
            if (eq == std::string::npos) throw ParseError("report line without '=': " + line);
            const std::string key = line.substr(0, eq);
            const std::string val = line.substr(eq + 1);
            if (key == "command") {
                rep.command_ = val;
            } else if (key.rfind("param.", 0) == 0) {
                rep.params_.emplace_back(key.substr(6), val);
            } else if (key.rfind("result.", 0) == 0) {
                rep.results_.emplace_back(key.substr(7), parse_value(val));
            } else if (key.rfind("prov.", 0) == 0) {
                provs[key.substr(5)] = provenance_from_string(val);
            } else {
                throw ParseError("unknown report key '" + key + "'");
            }
        }
        for (const auto& [k, v] : rep.results_) {
            const auto it = provs.find(k);
            if (it == provs.end()) throw ParseError("result '" + k + "' has no provenance");
            rep.provenance_[k] = it->second;
        }
        return rep;
    }

private:
    static std::string value_text(const Value& v) {
        if (std::holds_alternative<double>(v)) return detail::format_double(std::get<double>(v));
        if (std::holds_alternative<std::vector<double>>(v)) {
            std::string out;
            for (double d : std::get<std::vector<double>>(v)) {
                if (!out.empty()) out += ",";
                out += detail::format_double(d);
            }
            return out;
        }
        return std::get<std::string>(v);
    }

    static bool parse_number(const std::string& s, double& out) {
        if (s.empty()) return false;
        char* end = nullptr;
        out = std::strtod(s.c_str(), &end);
        return end == s.c_str() + s.size();
    }

    static Value parse_value(const std::string& s) {
        double d = 0.0;
        if (parse_number(s, d)) return d;
        if (s.find(',') != std::string::npos) {
            std::vector<double> vec;
            std::size_t pos = 0;
            bool ok = true;
            while (pos <= s.size()) {
                std::size_t comma = s.find(',', pos);
                if (comma == std::string::npos) comma = s.size();
                if (!parse_number(s.substr(pos, comma - pos), d)) {
                    ok = false;
                    break;
                }
                vec.push_back(d);
                pos = comma + 1;
            }
            if (ok) return vec;
        }
        return s;
    }

    std::string command_;
    std::vector<std::pair<std::string, std::string>> params_;
    std::vector<std::pair<std::string, Value>> results_;
    std::map<std::string, Provenance> provenance_;
};

} // namespace chamfer
