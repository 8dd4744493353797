#pragma once

// JSON input documents for the command-line tool: system descriptions with
// optional per-component probabilities, and the tank storage scenario.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "algrel/errors.hpp"
#include "algrel/reliability.hpp"
#include "algrel/systems.hpp"

namespace algrel::io {

using Json = nlohmann::json;

struct SystemDocument {
    SystemSpec spec;
    std::optional<ProbabilityModel> model;

    const ProbabilityModel& require_model() const {
        if (!model) {
            throw ValidationError("this command needs component probabilities in the system document");
        }
        return *model;
    }
};

struct TankDocument {
    std::size_t tanks = 0;
    std::uint64_t capacity_loads = 0;
    std::uint64_t current_level_loads = 0;
    std::uint64_t incoming_loads = 0;
    std::uint64_t level_lo = 0;
    std::uint64_t level_hi = 0;
    /// One survival array per tank, indexed by loads added (0, 1, 2, ...).
    std::vector<std::vector<double>> survival;
};

namespace detail {

inline const Json& member(const Json& obj, const char* key, const std::string& where) {
    if (!obj.is_object() || !obj.contains(key)) {
        throw ValidationError(where + ": missing field \"" + key + "\"");
    }
    return obj.at(key);
}

inline std::uint64_t as_uint(const Json& v, const std::string& where) {
    if (v.is_number_unsigned()) {
        return v.get<std::uint64_t>();
    }
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
        return static_cast<std::uint64_t>(v.get<std::int64_t>());
    }
    throw ValidationError(where + ": expected a nonnegative integer");
}

inline std::uint64_t uint_field(const Json& obj, const char* key, const std::string& where) {
    return as_uint(member(obj, key, where), where + "." + key);
}

inline std::optional<std::uint64_t> optional_uint(const Json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) {
        return std::nullopt;
    }
    return as_uint(obj.at(key), where + "." + key);
}

inline std::vector<double> number_array(const Json& v, const std::string& where) {
    if (!v.is_array()) {
        throw ValidationError(where + ": expected an array of numbers");
    }
    std::vector<double> out;
    for (const auto& x : v) {
        if (!x.is_number()) {
            throw ValidationError(where + ": expected an array of numbers");
        }
        out.push_back(x.get<double>());
    }
    return out;
}

inline Level as_level(std::uint64_t v, const std::string& where) {
    if (v < 1 || v > 1'000'000) {
        throw ValidationError(where + ": level out of range");
    }
    return static_cast<Level>(v);
}

}  // namespace detail

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open " + path);
    }
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

inline SystemDocument parse_system_document(const Json& doc) {
    const Json& sys = detail::member(doc, "system", "document");
    const Json& type_field = detail::member(sys, "type", "system");
    if (!type_field.is_string()) {
        throw ValidationError("system.type must be a string");
    }
    const std::string type = type_field.get<std::string>();

    std::vector<Level> caps;
    std::vector<std::vector<double>> survival;
    std::size_t with_probabilities = 0;
    const bool has_components = doc.contains("components");
    if (has_components) {
        const Json& comps = doc.at("components");
        if (!comps.is_array() || comps.empty()) {
            throw ValidationError("components must be a nonempty array");
        }
        for (std::size_t i = 0; i < comps.size(); ++i) {
            const std::string where = "components[" + std::to_string(i) + "]";
            const Level cap = detail::as_level(detail::uint_field(comps[i], "max_level", where), where);
            caps.push_back(cap);
            if (!comps[i].contains("probabilities")) {
                continue;
            }
            ++with_probabilities;
            const Json& p = comps[i].at("probabilities");
            const Json& kind = detail::member(p, "kind", where + ".probabilities");
            auto values = detail::number_array(detail::member(p, "values", where + ".probabilities"),
                                               where + ".probabilities.values");
            if (values.size() != std::size_t{cap} + 1) {
                throw ValidationError(where + ": expected " + std::to_string(cap + 1) +
                                      " probability values (levels 0.." + std::to_string(cap) + ")");
            }
            if (kind == "survival") {
                survival.push_back(std::move(values));
            } else if (kind == "mass") {
                // Convert now so that every component is validated the same way.
                auto one = ProbabilityModel::from_mass({values});
                survival.push_back(one.survival_table().front());
            } else {
                throw ValidationError(where + ".probabilities.kind must be \"mass\" or \"survival\"");
            }
        }
    }
    if (with_probabilities != 0 && with_probabilities != caps.size()) {
        throw ValidationError("either every component or none must carry probabilities");
    }

    const auto n_field = detail::optional_uint(sys, "n", "system");
    if (n_field && has_components && *n_field != caps.size()) {
        throw ValidationError("system.n disagrees with the number of components");
    }
    auto component_count = [&]() -> std::size_t {
        if (has_components) {
            return caps.size();
        }
        if (!n_field) {
            throw ValidationError("system.n is required when no components are listed");
        }
        return static_cast<std::size_t>(*n_field);
    };
    auto require_caps = [&](Level expected, const char* what) {
        for (Level c : caps) {
            if (c != expected) {
                throw ValidationError(std::string("every component of a ") + what + " system must have max_level " +
                                      std::to_string(expected));
            }
        }
    };

    std::optional<SystemSpec> spec;
    if (type == "simple_kn") {
        if (!has_components) {
            throw ValidationError("simple_kn needs a components array");
        }
        const auto k = detail::uint_field(sys, "k", "system");
        std::optional<Level> top;
        if (const auto m = detail::optional_uint(sys, "max_level", "system")) {
            top = detail::as_level(*m, "system.max_level");
        }
        spec = SystemSpec::simple_kn(static_cast<std::size_t>(k), caps, top);
    } else if (type == "generalized_kn") {
        const Json& t = detail::member(sys, "thresholds", "system");
        if (!t.is_array()) {
            throw ValidationError("system.thresholds must be an array");
        }
        std::vector<std::size_t> thresholds;
        for (const auto& v : t) {
            thresholds.push_back(static_cast<std::size_t>(detail::as_uint(v, "system.thresholds")));
        }
        if (has_components) {
            spec = SystemSpec::generalized_kn(thresholds, caps);
        } else {
            spec = SystemSpec::generalized_kn(component_count(), thresholds);
        }
    } else if (type == "sum_threshold") {
        const Level m = detail::as_level(detail::uint_field(sys, "m", "system"), "system.m");
        const auto k = detail::uint_field(sys, "k_sum", "system");
        require_caps(m, "sum_threshold");
        spec = SystemSpec::sum_threshold(component_count(), m, k);
    } else if (type == "consecutive_kn") {
        const auto k = detail::uint_field(sys, "k", "system");
        require_caps(1, "consecutive_kn");
        spec = SystemSpec::consecutive_kn(component_count(), static_cast<std::size_t>(k));
    } else {
        throw ValidationError("unknown system.type \"" + type + "\"");
    }

    SystemDocument out{*spec, std::nullopt};
    if (with_probabilities != 0) {
        out.model = ProbabilityModel::from_survival(std::move(survival));
    }
    return out;
}

inline SystemDocument load_system_document(const std::string& path) {
    return parse_system_document(read_json_file(path));
}

/// Survival arrays p(j) = 1 - (c*j)^e for j = 0..top, clipped to [0, 1].
/// Accepts "1-(c*j)^e" and "1-(c*j)", where c and e may be written as
/// fractions such as 10/150.
inline std::vector<double> survival_from_law(const std::string& law, std::size_t top) {
    static const std::regex pattern(
        R"(^\s*1\s*-\s*\(\s*([0-9.eE+-]+(?:\s*/\s*[0-9.eE+-]+)?)\s*\*\s*j\s*\)\s*(?:\^\s*\(?\s*([0-9.eE+-]+(?:\s*/\s*[0-9.eE+-]+)?)\s*\)?)?\s*$)");
    std::smatch match;
    if (!std::regex_match(law, match, pattern)) {
        throw ValidationError("law must look like \"1-(c*j)^e\", got \"" + law + "\"");
    }
    auto number = [&](const std::string& text) {
        const auto slash = text.find('/');
        try {
            if (slash == std::string::npos) {
                return std::stod(text);
            }
            return std::stod(text.substr(0, slash)) / std::stod(text.substr(slash + 1));
        } catch (const std::exception&) {
            throw ValidationError("law: cannot read number \"" + text + "\"");
        }
    };
    const double c = number(match[1].str());
    const double e = match[2].matched ? number(match[2].str()) : 1.0;
    if (!(c >= 0.0) || !(e > 0.0) || !std::isfinite(c) || !std::isfinite(e)) {
        throw ValidationError("law: need c >= 0 and e > 0");
    }
    std::vector<double> out(top + 1);
    out[0] = 1.0;
    for (std::size_t j = 1; j <= top; ++j) {
        const double v = 1.0 - std::pow(c * static_cast<double>(j), e);
        out[j] = std::clamp(v, 0.0, out[j - 1]);
    }
    return out;
}

/// Parses a tank document.  survival_model is either one array shared by
/// every tank or one array per tank; it may be omitted when `law` is given.
inline TankDocument parse_tank_document(const Json& doc, const std::optional<std::string>& law = std::nullopt) {
    TankDocument out;
    const std::string where = "tank document";
    std::optional<std::uint64_t> tanks = detail::optional_uint(doc, "tanks", where);
    if (!tanks) {
        tanks = detail::optional_uint(doc, "n", where);
    }
    if (!tanks || *tanks < 1) {
        throw ValidationError(where + ": \"tanks\" must be a positive integer");
    }
    out.tanks = static_cast<std::size_t>(*tanks);
    out.capacity_loads = detail::uint_field(doc, "capacity_loads", where);
    out.current_level_loads = detail::uint_field(doc, "current_level_loads", where);
    out.incoming_loads = detail::uint_field(doc, "incoming_loads", where);
    const Json& range = detail::member(doc, "level_range", where);
    if (!range.is_array() || range.size() != 2) {
        throw ValidationError(where + ": level_range must be [lo, hi]");
    }
    out.level_lo = detail::as_uint(range[0], where + ".level_range");
    out.level_hi = detail::as_uint(range[1], where + ".level_range");
    if (out.level_lo > out.level_hi) {
        throw ValidationError(where + ": level_range must have lo <= hi");
    }
    if (out.level_lo < out.current_level_loads) {
        throw ValidationError(where + ": levels must not lie below current_level_loads");
    }
    if (out.level_hi > out.capacity_loads) {
        throw ValidationError(where + ": levels must not exceed capacity_loads");
    }
    if (out.incoming_loads < 1) {
        throw ValidationError(where + ": incoming_loads must be positive");
    }

    const std::size_t top = static_cast<std::size_t>(out.level_hi - out.current_level_loads);
    if (law) {
        out.survival.assign(out.tanks, survival_from_law(*law, top));
    } else {
        const Json& model = detail::member(doc, "survival_model", where);
        if (model.is_array() && !model.empty() && model.front().is_array()) {
            if (model.size() != out.tanks) {
                throw ValidationError(where + ": survival_model needs one array per tank");
            }
            for (std::size_t i = 0; i < model.size(); ++i) {
                out.survival.push_back(
                    detail::number_array(model[i], where + ".survival_model[" + std::to_string(i) + "]"));
            }
        } else {
            out.survival.assign(out.tanks, detail::number_array(model, where + ".survival_model"));
        }
    }
    for (auto& s : out.survival) {
        // Validates shape and monotonicity; levels past the array are impossible.
        (void)ProbabilityModel::from_survival({s});
    }
    return out;
}

/// Survival model of the tanks when each can take at most `room` loads.
inline ProbabilityModel tank_model(const TankDocument& doc, std::size_t room) {
    std::vector<std::vector<double>> survival;
    for (const auto& s : doc.survival) {
        std::vector<double> t(room + 1, 0.0);
        for (std::size_t j = 0; j <= room && j < s.size(); ++j) {
            t[j] = s[j];
        }
        survival.push_back(std::move(t));
    }
    return ProbabilityModel::from_survival(std::move(survival));
}

}  // namespace algrel::io
