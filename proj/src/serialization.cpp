#include "fmmbound/serialization.hpp"

#include <string>

#include "fmmbound/errors.hpp"

namespace fmmbound {

nlohmann::json expansion_to_json(const Expansion& e) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const complex& c : e.coefficients().values()) coeffs.push_back({c.real(), c.imag()});
  return {
      {"kind", std::string(to_string(e.kind()))},
      {"center", {e.center().x, e.center().y, e.center().z}},
      {"order", e.order()},
      {"radius", e.radius()},
      {"coefficients", std::move(coeffs)},
  };
}

Expansion expansion_from_json(const nlohmann::json& j) {
  try {
    const auto kind = expansion_kind_from_string(j.at("kind").get<std::string>());
    const auto& c = j.at("center");
    if (!c.is_array() || c.size() != 3) throw ConfigError("expansion: center must have 3 entries");
    const Vec3 center{c[0].get<double>(), c[1].get<double>(), c[2].get<double>()};
    const int order = j.at("order").get<int>();
    if (order < 0) throw ConfigError("expansion: negative order");
    const auto& raw = j.at("coefficients");
    CoefficientTable table(order);
    if (!raw.is_array() || raw.size() != table.size())
      throw ConfigError("expansion: expected " + std::to_string(table.size()) + " coefficients");
    for (std::size_t k = 0; k < table.size(); ++k) {
      if (!raw[k].is_array() || raw[k].size() != 2)
        throw ConfigError("expansion: coefficients must be [re, im] pairs");
      table[k] = complex{raw[k][0].get<double>(), raw[k][1].get<double>()};
    }
    return Expansion(kind, center, j.at("radius").get<double>(), std::move(table));
  } catch (const nlohmann::json::exception& ex) {
    throw ConfigError(std::string("expansion: ") + ex.what());
  }
}

}  // namespace fmmbound
