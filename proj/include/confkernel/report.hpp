#pragma once

// Versioned, deterministic report records. The text rendering is produced
// from the JSON record so both carry the same content.

#include <json.hpp>
#include <string>

#include "confkernel/algebra.hpp"
#include "confkernel/biderivations.hpp"
#include "confkernel/modules.hpp"
#include "confkernel/solver.hpp"

namespace confkernel {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchema = 1;

/// FNV-1a 64-bit, lower-case hex.
std::string digest(std::string_view data);

/// {"schema", "command", "input": {...}, "checks": [], "result": {}, "verdict"}
Json make_report(const std::string& command, const Json& input);

Json to_json(const CheckReport& r);
Json to_json(const FourTupleReport& r);
Json to_json(const DerivationResult& r, const LcsAlgebra& alg);
Json to_json(const BiderivationResult& r, const LcsAlgebra& alg);
Json to_json(const KeyEqResult& r);
Json to_json(const DiscoverResult& r);
Json map_json(const ConformalEnd& d, const LcsAlgebra& alg);
Json bimap_json(const ConformalBiMap& f, const LcsAlgebra& alg);

/// Sets "verdict" from the "checks" entries (pass iff every counted check passed).
void finalize(Json& report);

std::string render_text(const Json& report);
std::string render(const Json& report, const std::string& format);

}  // namespace confkernel
