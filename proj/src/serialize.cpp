#include "flatlab/serialize.hpp"

#include "flatlab/errors.hpp"

#include <fstream>

namespace flatlab {

nlohmann::json surface_to_json(const TranslationSurface& s)
{
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["backend"] = std::string(backend_name(s.backend()));
    j["polygons"] = nlohmann::json::array();
    for (const auto& poly : s.polygons()) {
        auto arr = nlohmann::json::array();
        for (const auto& e : poly) arr.push_back({to_string(e.x), to_string(e.y)});
        j["polygons"].push_back(arr);
    }
    j["pairing"] = nlohmann::json::array();
    for (const auto& row : s.pairing()) {
        auto arr = nlohmann::json::array();
        for (const auto& r : row) arr.push_back({r.poly, r.edge});
        j["pairing"].push_back(arr);
    }
    j["stratum"] = s.stratum().degrees;
    j["genus"] = s.genus();
    j["area"] = to_string(s.area());
    j["length_scale_sq"] = to_string(s.length_scale_sq());
    return j;
}

namespace {

Rational read_number(const nlohmann::json& v)
{
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long>());
    if (v.is_number()) return exact_rational(v.get<double>());
    throw Error(ErrorCode::ConfigError, "core", "coordinate is not a number");
}

}  // namespace

TranslationSurface surface_from_json(const nlohmann::json& j)
{
    try {
        Backend backend = parse_backend(j.value("backend", std::string("exact")));
        std::vector<std::vector<Vec2>> polys;
        for (const auto& poly : j.at("polygons")) {
            std::vector<Vec2> edges;
            for (const auto& e : poly) edges.emplace_back(read_number(e.at(0)), read_number(e.at(1)));
            polys.push_back(std::move(edges));
        }
        std::vector<std::vector<EdgeRef>> pairing;
        for (const auto& row : j.at("pairing")) {
            std::vector<EdgeRef> r;
            for (const auto& p : row) r.push_back({p.at(0).get<int>(), p.at(1).get<int>()});
            pairing.push_back(std::move(r));
        }
        Rational scale = 1;
        if (j.contains("length_scale_sq")) scale = read_number(j.at("length_scale_sq"));
        return TranslationSurface(std::move(polys), std::move(pairing), backend, scale);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ConfigError, "core", std::string("malformed surface JSON: ") + e.what());
    }
}

TranslationSurface load_surface(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ConfigError, "core", "cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ConfigError, "core", "invalid JSON in " + path);
    }
    return surface_from_json(j);
}

void save_surface(const TranslationSurface& s, const std::string& path)
{
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::ConfigError, "core", "cannot write " + path);
    out << surface_to_json(s).dump(2) << "\n";
}

}  // namespace flatlab
