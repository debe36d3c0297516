#pragma once

#include "flatlab/surface.hpp"

#include <json.hpp>

#include <string>

namespace flatlab {

inline constexpr int kSchemaVersion = 1;

nlohmann::json surface_to_json(const TranslationSurface& s);
TranslationSurface surface_from_json(const nlohmann::json& j);

TranslationSurface load_surface(const std::string& path);
void save_surface(const TranslationSurface& s, const std::string& path);

}  // namespace flatlab
