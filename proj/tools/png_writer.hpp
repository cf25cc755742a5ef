#pragma once

#include <filesystem>
#include <optional>

#include "bishop/scene.hpp"

namespace bishop::tools {

/// Writes the raster as an 8-bit RGB PNG, outlining `highlight` in white.
void write_png(const Raster& raster, const std::filesystem::path& path,
               std::optional<ObjectId> highlight = std::nullopt);

}  // namespace bishop::tools
