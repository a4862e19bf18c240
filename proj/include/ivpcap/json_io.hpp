#pragma once

// JSON serialization for the machine-readable surfaces. All numeric
// fields cross the interface as decimal strings.

#include "ivpcap/capacity.hpp"
#include "ivpcap/gram.hpp"
#include "ivpcap/lattice.hpp"

#include <json.hpp>

namespace ivpcap {

nlohmann::json to_json(const IvpCoeffs& p);
IvpCoeffs ivp_from_json(const nlohmann::json& j);

nlohmann::json to_json(const GrowthSpec& s);
nlohmann::json to_json(const GramMatrix& g, unsigned digits = 0);
nlohmann::json to_json(const CapacityValue& c, const Real& a, const Real& b, const std::string& method);
nlohmann::json to_json(const SearchReport& r, const GrowthSpec& spec);

std::string witnesses_csv(const SearchReport& r);

}  // namespace ivpcap
