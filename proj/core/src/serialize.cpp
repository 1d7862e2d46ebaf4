#include "hyperblocks/serialize.hpp"

#include <istream>
#include <ostream>
#include <set>
#include <tuple>

#include "hyperblocks/error.hpp"

namespace hyperblocks {

namespace {

template <typename T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidSpec(std::string("missing key \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InvalidSpec(std::string("bad value for \"") + key + "\": " + e.what());
  }
}

}  // namespace

std::string tool_version() { return "0.1.0"; }

json group_to_json(const AbelianGroup& g) { return json{{"factors", g.invariant_factors()}}; }

AbelianGroup group_from_json(const json& j) {
  auto factors = field<std::vector<std::uint32_t>>(j, "factors");
  return make_group(factors);
}

json hyperfield_to_json(const HyperfieldCandidate& h) {
  return json{{"group", group_to_json(h.group)},
              {"minus_one", h.minus_one},
              {"pi", h.pi.bit_string()},
              {"status", status_name(h.status)}};
}

HyperfieldCandidate hyperfield_from_json(const json& j) {
  AbelianGroup g = group_from_json(field<json>(j, "group"));
  auto m1 = field<std::int64_t>(j, "minus_one");
  if (m1 < 0 || m1 >= static_cast<std::int64_t>(g.order())) throw InvalidSpec("minus_one out of range");
  HyperfieldCandidate h = make_candidate(g, static_cast<Element>(m1));
  h.pi = PairRelation::from_bit_string(g.order(), field<std::string>(j, "pi"));
  if (j.contains("status")) h.status = parse_status(field<std::string>(j, "status"));
  return h;
}

json system_to_json(const Arithmetic& ar, const LinearSystem& sys) {
  json rows = json::array();
  for (const auto& row : sys.coefficients) {
    json r = json::array();
    for (auto a : row) r.push_back(a == ar.zero() ? -1 : static_cast<std::int64_t>(a));
    rows.push_back(std::move(r));
  }
  return rows;
}

LinearSystem system_from_json(const Arithmetic& ar, const json& j) {
  if (!j.is_array() || j.empty()) throw InvalidSpec("system must be a nonempty array of rows");
  LinearSystem sys;
  for (const auto& row : j) {
    if (!row.is_array() || row.empty()) throw InvalidSpec("system rows must be nonempty arrays");
    std::vector<Element> out;
    for (const auto& v : row) {
      if (!v.is_number_integer()) throw InvalidSpec("coefficients must be integers");
      auto a = v.get<std::int64_t>();
      if (a < -1 || a >= static_cast<std::int64_t>(ar.order())) throw InvalidSpec("coefficient out of range");
      out.push_back(a == -1 ? ar.zero() : static_cast<Element>(a));
    }
    if (sys.coefficients.empty()) {
      sys.variables = out.size();
    } else if (out.size() != sys.variables) {
      throw InvalidSpec("system rows differ in length");
    }
    sys.coefficients.push_back(std::move(out));
  }
  return sys;
}

json assignment_to_json(const Arithmetic& ar, const Assignment& asg) {
  json out = json::array();
  for (auto v : asg) out.push_back(v == ar.zero() ? -1 : static_cast<std::int64_t>(v));
  return out;
}

json witness_to_json(const QuotientWitness& w) {
  return json{{"q", w.q},
              {"p", w.p},
              {"k", w.k},
              {"r", w.r},
              {"subgroup_generator", w.subgroup_generator},
              {"subgroup_order", w.subgroup_order},
              {"subgroup", w.subgroup}};
}

json record_to_json(const CatalogRecord& rec) {
  return json{{"hyperfield", hyperfield_to_json(rec.hyperfield)},
              {"flags",
               {{"ample", rec.flags.ample},
                {"quotient_status", rec.flags.quotient_status},
                {"fetvins_checked_to", rec.flags.fetvins_checked_to}}},
              {"provenance", {{"tool_version", rec.provenance.tool_version}, {"run_id", rec.provenance.run_id}}}};
}

CatalogRecord record_from_json(const json& j) {
  CatalogRecord rec;
  rec.hyperfield = hyperfield_from_json(field<json>(j, "hyperfield"));
  if (j.contains("flags")) {
    const auto& f = j.at("flags");
    rec.flags.ample = field<bool>(f, "ample");
    rec.flags.quotient_status = field<std::string>(f, "quotient_status");
    rec.flags.fetvins_checked_to = field<std::uint32_t>(f, "fetvins_checked_to");
  }
  if (j.contains("provenance")) {
    const auto& p = j.at("provenance");
    rec.provenance.tool_version = field<std::string>(p, "tool_version");
    rec.provenance.run_id = field<std::string>(p, "run_id");
  }
  return rec;
}

void append_catalog(std::ostream& out, const std::vector<CatalogRecord>& records) {
  for (const auto& rec : records) out << record_to_json(rec).dump() << '\n';
}

std::vector<CatalogRecord> read_catalog(std::istream& in) {
  std::vector<CatalogRecord> out;
  std::set<std::tuple<std::vector<std::uint32_t>, Element, std::string>> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw InvalidSpec("catalog line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("hyperfield")) continue;
    CatalogRecord rec = record_from_json(j);
    auto key = std::make_tuple(rec.hyperfield.group.invariant_factors(), rec.hyperfield.minus_one,
                               rec.hyperfield.pi.bit_string());
    if (seen.insert(key).second) out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace hyperblocks
