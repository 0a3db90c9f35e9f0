#include <json.hpp>

#include "fhlab/error.hpp"
#include "fhlab/symbol.hpp"

namespace fhlab::symbol {

using nlohmann::json;

namespace {

cplx parse_pair(const json& j, const char* name) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw Error("symbol", "symbol_spec_from_json",
                    std::string(name) + " must be a [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

std::string symbol_spec_to_json(const SymbolSpec& spec) {
    json j;
    j["alpha"] = {spec.alpha.real(), spec.alpha.imag()};
    j["beta"] = {spec.beta.real(), spec.beta.imag()};
    j["t"] = spec.t;
    j["V"] = json::array();
    for (const auto& [k, v] : spec.v_coeffs)
        j["V"].push_back({double(k), v.real(), v.imag()});
    return j.dump();
}

SymbolSpec symbol_spec_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw Error("symbol", "symbol_spec_from_json", e.what());
    }
    if (!j.is_object())
        throw Error("symbol", "symbol_spec_from_json", "spec must be an object");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (key != "alpha" && key != "beta" && key != "t" && key != "V")
            throw Error("symbol", "symbol_spec_from_json", "unknown key: " + key);
    }
    if (!j.contains("alpha") || !j.contains("beta"))
        throw Error("symbol", "symbol_spec_from_json", "alpha and beta are required");
    SymbolSpec spec;
    spec.alpha = parse_pair(j["alpha"], "alpha");
    spec.beta = parse_pair(j["beta"], "beta");
    if (j.contains("t")) {
        if (!j["t"].is_number())
            throw Error("symbol", "symbol_spec_from_json", "t must be a number");
        spec.t = j["t"].get<double>();
    }
    if (j.contains("V")) {
        if (!j["V"].is_array())
            throw Error("symbol", "symbol_spec_from_json",
                        "V must be an array of [k, re, im]");
        for (const auto& entry : j["V"]) {
            if (!entry.is_array() || entry.size() != 3)
                throw Error("symbol", "symbol_spec_from_json",
                            "V entries must be [k, re, im]");
            const double kd = entry[0].get<double>();
            if (kd != std::round(kd))
                throw Error("symbol", "symbol_spec_from_json", "V index must be integer");
            const int k = (int)kd;
            if (spec.v_coeffs.count(k))
                throw Error("symbol", "symbol_spec_from_json",
                            "duplicate V index: " + std::to_string(k));
            spec.v_coeffs[k] = cplx(entry[1].get<double>(), entry[2].get<double>());
        }
    }
    spec.validate();
    return spec;
}

}  // namespace fhlab::symbol
