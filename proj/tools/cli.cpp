#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "hyperblocks/blocks.hpp"
#include "hyperblocks/census.hpp"
#include "hyperblocks/counting.hpp"
#include "hyperblocks/error.hpp"
#include "hyperblocks/fetvins.hpp"
#include "hyperblocks/quotient.hpp"
#include "hyperblocks/serialize.hpp"

namespace hyperblocks::cli {

namespace {

struct Options {
  std::string group;
  std::optional<std::int64_t> minus_one;
  std::string blocks;
  std::string in;
  std::string out;
  std::string format = "json";
  unsigned threads = 1;
  std::uint64_t budget = 10'000'000;
  std::string mode = "full";
  std::string shard;
  std::optional<std::uint64_t> bound;
  std::uint32_t nmax = 3;
  std::string system;
  std::string run_id = "default";
};

/// Signals a failed claim (exit 1) after the report has been printed.
struct ClaimFailed {};

json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InvalidSpec("cannot open " + path);
  try {
    return json::parse(f);
  } catch (const json::parse_error& e) {
    throw InvalidSpec(path + ": " + e.what());
  }
}

AbelianGroup require_group(const Options& o) {
  if (o.group.empty()) throw InvalidSpec("--group is required");
  return parse_group_spec(o.group);
}

Element resolve_minus_one(const AbelianGroup& g, const Options& o) {
  auto cands = involution_candidates(g);
  if (!o.minus_one) return cands.front();
  auto m = *o.minus_one;
  if (m < 0 || m >= static_cast<std::int64_t>(g.order())) throw InvalidSpec("--minus-one out of range");
  if (g.order_of(static_cast<Element>(m)) > 2) throw InvalidSpec("--minus-one must have order at most 2");
  return static_cast<Element>(m);
}

/// From --in (a hyperfield object or a catalog record) or from --group,
/// --minus-one and --blocks.
HyperfieldCandidate load_candidate(const Options& o) {
  if (!o.in.empty()) {
    json j = read_json_file(o.in);
    if (j.is_object() && j.contains("hyperfield")) return record_from_json(j).hyperfield;
    return hyperfield_from_json(j);
  }
  AbelianGroup g = require_group(o);
  BlockPartition bp = compute_blocks(g, resolve_minus_one(g, o));
  return build_candidate(bp, block_selection(bp.block_count(), parse_block_sequence(o.blocks, bp.block_count())));
}

std::string csv_cell(const json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

/// Flat objects become a header and one row; anything else is dumped.
void emit(const Options& o, const json& j, std::ostream& out) {
  std::ofstream file;
  std::ostream* dst = &out;
  if (!o.out.empty()) {
    file.open(o.out);
    if (!file) throw InvalidSpec("cannot write " + o.out);
    dst = &file;
  }
  if (o.format == "csv" && j.is_object()) {
    std::string header, row;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!header.empty()) {
        header += ',';
        row += ',';
      }
      header += it.key();
      row += csv_cell(it.value());
    }
    *dst << header << '\n' << row << '\n';
  } else {
    *dst << j.dump(2) << '\n';
  }
}

int cmd_blocks(const Options& o, std::ostream& out) {
  AbelianGroup g = require_group(o);
  Element m1 = resolve_minus_one(g, o);
  BlockPartition bp = compute_blocks(g, m1);
  CoeffMatrix cm = coefficient_matrix(bp);
  auto table = block_table(bp);

  std::vector<std::string> names;
  for (Element x = 0; x < g.order(); ++x) names.push_back(g.element_name(x));

  if (o.format == "csv") {
    std::ostringstream s;
    s << "x\\y";
    for (const auto& n : names) s << ',' << csv_cell(n);
    s << '\n';
    for (Element x = 0; x < g.order(); ++x) {
      s << csv_cell(names[x]);
      for (const auto& lab : table[x]) s << ',' << lab;
      s << '\n';
    }
    s << '\n' << "row";
    for (std::size_t b = 0; b < cm.b; ++b) s << ',' << block_label(b);
    s << '\n';
    for (std::size_t i = 0; i < cm.rows.size(); ++i) {
      s << csv_cell(names[cm.row_labels[i]]);
      for (auto v : cm.rows[i]) s << ',' << v;
      s << '\n';
    }
    if (o.out.empty()) {
      out << s.str();
    } else {
      std::ofstream f(o.out);
      f << s.str();
    }
    return ok;
  }

  json blocks = json::array();
  for (std::size_t b = 0; b < bp.block_count(); ++b) {
    json pairs = json::array();
    for (const auto& p : bp.block_pairs(b)) pairs.push_back({names[p.x], names[p.y]});
    blocks.push_back({{"label", block_label(b)}, {"size", pairs.size()}, {"pairs", pairs}});
  }
  json rows = json::array();
  for (std::size_t i = 0; i < cm.rows.size(); ++i) {
    rows.push_back({{"element", names[cm.row_labels[i]]}, {"counts", cm.rows[i]}});
  }
  emit(o, json{{"group", g.name()},
               {"minus_one", m1},
               {"block_count", bp.block_count()},
               {"elements", names},
               {"table", table},
               {"blocks", blocks},
               {"coefficient_matrix", rows}},
       out);
  return ok;
}

std::pair<std::uint64_t, std::uint64_t> parse_shard(const std::string& s) {
  if (s.empty()) return {0, 1};
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) throw std::invalid_argument(s);
    std::size_t used = 0;
    auto i = std::stoull(s.substr(0, slash), &used);
    if (used != slash) throw std::invalid_argument(s);
    auto n = std::stoull(s.substr(slash + 1), &used);
    if (used != s.size() - slash - 1 || n == 0 || i >= n) throw std::invalid_argument(s);
    return {i, n};
  } catch (const std::exception&) {
    throw InvalidSpec("--shard expects i/n with 0 <= i < n, got " + s);
  }
}

int cmd_census(const Options& o, std::ostream& out) {
  AbelianGroup g = require_group(o);
  Element m1 = resolve_minus_one(g, o);
  BlockPartition bp = compute_blocks(g, m1);
  CensusOptions co;
  co.threads = o.threads;
  std::tie(co.shard_index, co.shard_count) = parse_shard(o.shard);
  Census c = enumerate(bp, parse_mode(o.mode), co);

  json summary{{"subsets", c.subsets_examined},
               {"hyperfields", c.hyperfields},
               {"classes", c.class_count()},
               {"ample", c.ample}};
  if (!o.out.empty()) {
    std::ofstream f(o.out, std::ios::app);
    if (!f) throw InvalidSpec("cannot write " + o.out);
    std::vector<CatalogRecord> records;
    for (const auto& cls : c.classes) {
      CatalogRecord rec;
      rec.hyperfield = cls.representative;
      rec.flags.ample = cls.ample;
      rec.provenance = {tool_version(), o.run_id};
      records.push_back(std::move(rec));
    }
    append_catalog(f, records);
    json s = summary;
    s["group"] = group_to_json(g);
    s["minus_one"] = m1;
    s["mode"] = mode_name(c.mode);
    s["shard"] = {co.shard_index, co.shard_count};
    s["run_id"] = o.run_id;
    f << json{{"summary", s}}.dump() << '\n';
  }
  if (o.format == "csv") {
    out << "subsets,hyperfields,classes,ample\n"
        << c.subsets_examined << ',' << c.hyperfields << ',' << c.class_count() << ',' << c.ample << '\n';
  } else {
    out << "subsets=" << c.subsets_examined << " hyperfields=" << c.hyperfields << " classes=" << c.class_count()
        << " ample=" << c.ample << '\n';
  }
  return ok;
}

int cmd_verify(const Options& o, std::ostream& out) {
  HyperfieldCandidate h = load_candidate(o);
  VerificationReport rep = verify_axioms(h);
  json j{{"status", status_name(h.status)}, {"passed", rep.passed}};
  if (rep.passed) {
    BlockPartition bp = compute_blocks(h.group, h.minus_one);
    AmpleParams ap = ample_params(h);
    j["m"] = ap.m;
    j["k"] = ap.k;
    j["ample"] = is_ample(h);
    j["union_of_blocks"] = is_union_of_blocks(h.pi, bp);
  } else {
    json w = json::array();
    for (auto e : rep.witness) w.push_back(e == h.zero() ? std::string("0") : h.group.element_name(e));
    j["violated"] = axiom_name(*rep.violated);
    j["witness"] = w;
    j["message"] = rep.message;
  }
  emit(o, j, out);
  return rep.passed ? ok : claim_failed;
}

int cmd_count(const Options& o, std::ostream& out) {
  AbelianGroup g = require_group(o);
  BlockPartition bp = compute_blocks(g, resolve_minus_one(g, o));
  CountOptions co;
  co.threads = o.threads;
  json j;
  if (g.order() % 2 == 1) {
    BoundReport rep = decompose_and_bound(bp, co);
    InfiniteQuotientBound iq = infinite_quotient_upper_bound(bp);
    j["exact"] = rep.exact;
    j["lower_bound"] = rep.lower_bound ? json(*rep.lower_bound) : json(nullptr);
    j["infinite_quotient_bound"] = iq.bound ? json(*iq.bound) : json(nullptr);
  } else {
    j["exact"] = count_solutions(ample_system(bp), co);
    j["lower_bound"] = nullptr;
    j["infinite_quotient_bound"] = nullptr;
  }
  emit(o, j, out);
  return ok;
}

HyperfieldCandidate load_verified(const Options& o, std::ostream& out) {
  HyperfieldCandidate h = load_candidate(o);
  if (h.status != Status::certified_ample) {
    VerificationReport rep = verify_axioms(h);
    if (!rep.passed) {
      emit(o, json{{"status", "not-a-hyperfield"}, {"violated", axiom_name(*rep.violated)}, {"message", rep.message}},
           out);
      throw ClaimFailed{};
    }
  }
  return h;
}

int cmd_quotient(const Options& o, std::ostream& out) {
  HyperfieldCandidate h = load_verified(o, out);
  QuotientStatus qs = quotient_status(h, o.bound);
  json j{{"status", quotient_kind_name(qs.kind)},
         {"q_bound", qs.q_bound},
         {"witness", qs.witness ? witness_to_json(*qs.witness) : json(nullptr)},
         {"excludes_infinite_quotient", excludes_infinite_quotient(h)}};
  emit(o, j, out);
  return ok;
}

int cmd_fetvins(const Options& o, std::ostream& out) {
  HyperfieldCandidate h = load_verified(o, out);
  Arithmetic ar(h);
  if (!o.system.empty()) {
    LinearSystem sys = system_from_json(ar, read_json_file(o.system));
    auto sol = brute_force_solve(ar, sys, o.budget);
    json j{{"status", sol ? "solved" : "no-solution"},
           {"witness", sol ? json{{"assignment", assignment_to_json(ar, *sol)}} : json(nullptr)}};
    if (is_ample(h) && sys.equations() < sys.variables) {
      j["ample_solve"] = assignment_to_json(ar, ample_solve(ar, sys));
    }
    emit(o, j, out);
    return sol ? ok : claim_failed;
  }
  FetvinsOptions fo;
  fo.threads = o.threads;
  fo.brute_force_budget = o.budget;
  FetvinsReport rep = check_fetvins(ar, o.nmax, fo);
  json j{{"status", rep.confirmed ? "confirmed" : "counterexample"},
         {"n_max", rep.n_max},
         {"systems_checked", rep.systems_checked},
         {"solver_runs", rep.solver_runs},
         {"solver_failures", rep.solver_failures},
         {"witness", rep.counterexample ? json{{"system", system_to_json(ar, *rep.counterexample)}} : json(nullptr)}};
  if (rep.solver_failure_example) {
    j["solver_failure"] = {{"system", system_to_json(ar, *rep.solver_failure_example)},
                           {"message", rep.solver_failure_message}};
  }
  emit(o, j, out);
  return rep.confirmed && rep.solver_failures == 0 ? ok : claim_failed;
}

void show_one(const HyperfieldCandidate& h, std::ostream& out) {
  const auto& g = h.group;
  auto name = [&](Element e) { return e == h.zero() ? std::string("0") : g.element_name(e); };
  out << "group " << g.name() << ", -1 = " << name(h.minus_one) << ", status " << status_name(h.status) << '\n';
  for (Element x = 0; x <= h.zero(); ++x) {
    out << "  " << name(x) << " + 1 = {";
    bool first = true;
    add(h, x, 0).for_each([&](Element e) {
      out << (first ? "" : ", ") << name(e);
      first = false;
    });
    out << "}\n";
  }
}

int cmd_show(const Options& o, std::ostream& out) {
  if (o.in.empty()) {
    show_one(load_candidate(o), out);
    return ok;
  }
  std::ifstream f(o.in);
  if (!f) throw InvalidSpec("cannot open " + o.in);
  std::string first_line;
  std::getline(f, first_line);
  f.seekg(0);
  json probe;
  bool jsonl = false;
  try {
    probe = json::parse(first_line);
    jsonl = probe.is_object() && (probe.contains("hyperfield") || probe.contains("summary"));
  } catch (const json::parse_error&) {
  }
  if (!jsonl) {
    show_one(load_candidate(o), out);
    return ok;
  }
  auto records = read_catalog(f);
  for (const auto& rec : records) {
    show_one(rec.hyperfield, out);
    out << "  flags: ample=" << (rec.flags.ample ? "yes" : "no") << " quotient=" << rec.flags.quotient_status
        << " fetvins_checked_to=" << rec.flags.fetvins_checked_to << '\n';
  }
  return ok;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Block theory of finite hyperfields"};
  app.require_subcommand(1);
  Options o;

  app.add_option("--group", o.group, "Group such as Z7 or Z2xZ4");
  app.add_option("--minus-one", o.minus_one, "Element index of -1 (default: the identity)");
  app.add_option("--blocks", o.blocks, "Block sequence such as BD");
  app.add_option("--in", o.in, "Input hyperfield JSON, catalog record or JSON-lines catalog");
  app.add_option("--out", o.out, "Output file");
  app.add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--threads", o.threads, "Worker threads")->check(CLI::Range(1u, 256u));
  app.add_option("--budget", o.budget, "Brute-force assignment budget");
  app.add_option("--run-id", o.run_id, "Run id stored in catalog provenance");

  auto* blocks = app.add_subcommand("blocks", "Block table and coefficient matrix");
  auto* census = app.add_subcommand("census", "Enumerate block unions");
  census->add_option("--mode", o.mode, "full or ample-only")->check(CLI::IsMember({"full", "ample-only"}));
  census->add_option("--shard", o.shard, "Shard i/n of the subset range");
  auto* verify = app.add_subcommand("verify", "Check the hyperfield axioms");
  auto* count = app.add_subcommand("count", "Count ample block unions and bounds");
  auto* quotient = app.add_subcommand("quotient", "Search for a finite-field quotient");
  quotient->add_option("--bound", o.bound, "Largest field size to try");
  auto* fetvins = app.add_subcommand("fetvins", "Check FETVINS exhaustively or solve one system");
  fetvins->add_option("--nmax", o.nmax, "Largest number of variables")->check(CLI::Range(2u, 8u));
  fetvins->add_option("--system", o.system, "JSON matrix of coefficients, -1 for zero");
  auto* show = app.add_subcommand("show", "Print a hyperfield or catalog");
  for (auto* s : {blocks, census, verify, count, quotient, fetvins, show}) s->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? ok : usage_error;
  }

  try {
    if (*blocks) return cmd_blocks(o, out);
    if (*census) return cmd_census(o, out);
    if (*verify) return cmd_verify(o, out);
    if (*count) return cmd_count(o, out);
    if (*quotient) return cmd_quotient(o, out);
    if (*fetvins) return cmd_fetvins(o, out);
    if (*show) return cmd_show(o, out);
  } catch (const ClaimFailed&) {
    return claim_failed;
  } catch (const CapacityExceeded& e) {
    err << "capacity exceeded: " << e.what() << '\n';
    return capacity_exceeded;
  } catch (const InvalidSpec& e) {
    err << "error: " << e.what() << '\n';
    return usage_error;
  } catch (const PreconditionError& e) {
    err << "precondition failed: " << e.what() << '\n';
    return claim_failed;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return claim_failed;
  }
  return usage_error;
}

}  // namespace hyperblocks::cli
