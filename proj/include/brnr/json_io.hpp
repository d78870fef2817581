#pragma once

#include <optional>
#include <string>

#include "json.hpp"

#include "brnr/brauer.hpp"
#include "brnr/galois.hpp"
#include "brnr/group.hpp"
#include "brnr/oracle.hpp"

namespace brnr {

// Parses with line/column diagnostics on failure (ArgumentError).
nlohmann::json parse_json(const std::string& text);

// {"kind":"permutation"|"demarche"|"abelian"|"direct_product"|"semidirect",...}
GroupPtr group_from_json(const nlohmann::json& j,
                         std::int64_t element_cap = kDefaultElementCap);

struct GaloisSpec {
  std::string mode;  // fq | char0 | real | local_unramified
  std::optional<FrobeniusData> frobenius;     // fq / local_unramified
  std::optional<FiniteGaloisData> finite;     // char0 / real
};

// {"mode":"fq","q":Q,"action":[...]|"trivial"} | {"mode":"char0",...} |
// {"mode":"real",...} | {"mode":"local_unramified",...}
GaloisSpec galois_from_json(const nlohmann::json& j, GroupPtr g);

nlohmann::json element_to_json(const AbelianElement& e);
nlohmann::json invariants_to_json(const AbelianGroup& a);
nlohmann::json result_to_json(const BrauerResult& r, bool witnesses);
nlohmann::json report_to_json(const OracleReport& r);

}  // namespace brnr
