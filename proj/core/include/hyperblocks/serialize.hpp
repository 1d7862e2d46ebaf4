#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hyperblocks/fetvins.hpp"
#include "hyperblocks/group.hpp"
#include "hyperblocks/hyperfield.hpp"
#include "hyperblocks/quotient.hpp"

namespace hyperblocks {

using nlohmann::json;

json group_to_json(const AbelianGroup& g);
/// Throws InvalidSpec on a malformed object.
AbelianGroup group_from_json(const json& j);

json hyperfield_to_json(const HyperfieldCandidate& h);
HyperfieldCandidate hyperfield_from_json(const json& j);

/// Coefficient matrix with -1 for zero.
json system_to_json(const Arithmetic& ar, const LinearSystem& sys);
LinearSystem system_from_json(const Arithmetic& ar, const json& j);

json assignment_to_json(const Arithmetic& ar, const Assignment& asg);
json witness_to_json(const QuotientWitness& w);

struct CatalogFlags {
  bool ample = false;
  std::string quotient_status = "unknown";
  std::uint32_t fetvins_checked_to = 0;
};

struct Provenance {
  std::string tool_version;
  std::string run_id;
};

struct CatalogRecord {
  HyperfieldCandidate hyperfield;  ///< pi in canonical form
  CatalogFlags flags;
  Provenance provenance;
};

json record_to_json(const CatalogRecord& rec);
CatalogRecord record_from_json(const json& j);

/// Appends one record per line.
void append_catalog(std::ostream& out, const std::vector<CatalogRecord>& records);

/// Reads a JSON-lines catalog, skipping blank lines and records without a
/// "hyperfield" key (such as summaries). Records whose (group, -1, pi) were
/// already seen are dropped; the first occurrence wins.
std::vector<CatalogRecord> read_catalog(std::istream& in);

std::string tool_version();

}  // namespace hyperblocks
