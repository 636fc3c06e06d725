#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "lifemodes/halfline.hpp"
#include "lifemodes/lifetable.hpp"
#include "lifemodes/transition.hpp"

namespace lifemodes::io {

/// 12 significant digits, the precision used by every CSV we emit.
std::string format_number(double x);

/// Header row "next|prev,<labels>"; then one row per next state.
std::string transition_csv(const TransitionMatrix& t);
nlohmann::json transition_json(const TransitionMatrix& t);

std::string life_csv(const std::vector<LifeTable>& tables);
nlohmann::json life_json(const std::vector<LifeTable>& tables);

/// Column s followed by q(s) per initial state; blank once a curve has ended.
std::string survival_csv(const std::vector<LifeTable>& tables);

nlohmann::json spectrum_json(const HalfLineVector& hl);

/// Monochrome heatmap, black = 1, white = 0. Byte-stable for a given matrix.
std::string heatmap_svg(const TransitionMatrix& t, const std::string& title);

void write_text(const std::filesystem::path& path, const std::string& contents);
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

} // namespace lifemodes::io
