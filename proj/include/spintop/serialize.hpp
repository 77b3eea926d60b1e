#pragma once

#include <string>
#include <utility>

#include <json.hpp>

#include "spintop/cell_complex.hpp"
#include "spintop/disorder.hpp"
#include "spintop/ground_state.hpp"
#include "spintop/percolation.hpp"
#include "spintop/topology.hpp"

namespace spintop {

std::string base64_encode(const std::vector<std::uint8_t>& data);
std::vector<std::uint8_t> base64_decode(const std::string& text);

std::vector<std::uint8_t> bitvec_to_bytes(const Bitvec& v);
Bitvec bitvec_from_bytes(const std::vector<std::uint8_t>& bytes, std::size_t n_bits);

// {"j0":...,"x":...,"seed":...,"n_bonds":...,"signs":"<base64>"}; bit i set
// in the decoded vector means bond i has a negative coupling.
nlohmann::json bond_config_to_json(const BondConfig& bonds);
BondConfig bond_config_from_json(const nlohmann::json& j, std::size_t n_bonds);

// Chains serialize as sorted cell-index arrays.
nlohmann::json chain_to_json(const Chain2& c);
Chain2 chain_from_json(const nlohmann::json& j, std::size_t n_cells);

nlohmann::json verify_report_to_json(const VerifyReport& rep);
nlohmann::json percolation_report_to_json(const PercolationReport& rep);
nlohmann::json ground_state_result_to_json(const GroundStateResult& gs);
nlohmann::json wall_set_to_json(const DomainWallSet& ws);

}  // namespace spintop
