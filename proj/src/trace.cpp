#include "cpm/trace.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "cpm/errors.hpp"

namespace cpm {

using nlohmann::json;

namespace {

json set_json(const OddSet& s) {
  json a = json::array();
  for (NodeId v : s.members()) a.push_back(v + 1);
  return a;
}

json sets_json(const std::vector<OddSet>& sets) {
  json a = json::array();
  for (const auto& s : sets) a.push_back(set_json(s));
  return a;
}

json dual_json(const DualSolution& d) {
  json nodes = json::array();
  for (NodeId v = 0; v < d.node_count(); ++v) nodes.push_back(d.node(v).str());
  json sets = json::array();
  for (const auto& [s, v] : d.set_values()) sets.push_back({{"set", set_json(s)}, {"value", v.str()}});
  return {{"nodes", nodes}, {"sets", sets}};
}

OddSet parse_set(const json& j) {
  std::vector<NodeId> members;
  for (const auto& v : j) members.push_back(v.get<int>() - 1);
  return OddSet(std::move(members));
}

std::vector<OddSet> parse_sets(const json& j) {
  std::vector<OddSet> out;
  for (const auto& s : j) out.push_back(parse_set(s));
  return out;
}

DualSolution parse_dual(const json& j) {
  const auto& nodes = j.at("nodes");
  DualSolution d(static_cast<int>(nodes.size()));
  for (std::size_t v = 0; v < nodes.size(); ++v)
    d.set_node(static_cast<NodeId>(v), Rational::parse(nodes[v].get<std::string>()));
  for (const auto& entry : j.at("sets"))
    d.set_value(parse_set(entry.at("set")), Rational::parse(entry.at("value").get<std::string>()));
  return d;
}

IterationRecord parse_record(const json& j) {
  IterationRecord r;
  r.iteration = j.at("iteration").get<int>();
  r.cuts_imposed = parse_sets(j.at("cuts_imposed"));
  r.lp_rows = j.at("lp_rows").get<int>();
  for (const auto& v : j.at("primal")) r.x.push_back(Rational::parse(v.get<std::string>()));
  r.dual = parse_dual(j.at("dual"));
  if (j.contains("basis_dual")) r.basis_dual = parse_dual(j.at("basis_dual"));
  r.odd_cycle_count = j.at("odd_cycle_count").get<int>();
  r.cuts_retained = parse_sets(j.at("cuts_retained"));
  r.cuts_added = parse_sets(j.at("cuts_added"));
  r.objective_scaled = Rational::parse(j.at("objective_scaled").get<std::string>());
  r.pc_iterations = j.value("pc_iterations", -1);
  if (j.contains("procedure")) {
    const auto& p = j.at("procedure");
    ProcedureSummary s;
    s.iterations = p.at("iterations").get<int>();
    s.unshrinks = p.at("unshrinks").get<int>();
    s.family_size = p.at("family_size").get<int>();
    s.q0 = p.at("q0").get<int>();
    s.phase_lengths = p.at("phase_lengths").get<std::vector<int>>();
    s.cases = p.at("cases").get<std::vector<std::string>>();
    s.chosen_k = parse_sets(p.at("chosen_k"));
    s.certified = p.at("certified").get<bool>();
    s.candidates_tried = p.at("candidates_tried").get<int>();
    r.procedure = std::move(s);
  }
  return r;
}

}  // namespace

std::string record_to_json(const IterationRecord& rec) {
  json j;
  j["type"] = "iteration";
  j["iteration"] = rec.iteration;
  j["cuts_imposed"] = sets_json(rec.cuts_imposed);
  j["lp_rows"] = rec.lp_rows;
  json primal = json::array();
  for (const auto& v : rec.x) primal.push_back(v.str());
  j["primal"] = primal;
  j["dual"] = dual_json(rec.dual);
  if (rec.basis_dual) j["basis_dual"] = dual_json(*rec.basis_dual);
  j["odd_cycle_count"] = rec.odd_cycle_count;
  j["cuts_retained"] = sets_json(rec.cuts_retained);
  j["cuts_added"] = sets_json(rec.cuts_added);
  j["objective_scaled"] = rec.objective_scaled.str();
  if (rec.pc_iterations >= 0) j["pc_iterations"] = rec.pc_iterations;
  if (rec.procedure) {
    const auto& p = *rec.procedure;
    j["procedure"] = {{"iterations", p.iterations},     {"unshrinks", p.unshrinks},
                      {"family_size", p.family_size},   {"q0", p.q0},
                      {"phase_lengths", p.phase_lengths}, {"cases", p.cases},
                      {"chosen_k", sets_json(p.chosen_k)}, {"certified", p.certified},
                      {"candidates_tried", p.candidates_tried}};
  }
  return j.dump();
}

void write_trace(std::ostream& out, const TraceHeader& header,
                 const std::vector<IterationRecord>& records) {
  json h = {{"type", "header"}, {"schema", kTraceSchema}, {"version", header.version},
            {"n", header.n},    {"m", header.m},          {"solver", header.solver},
            {"scale", header.scale}};
  out << h.dump() << '\n';
  for (const auto& r : records) out << record_to_json(r) << '\n';
}

Trace read_trace(std::istream& in) {
  Trace t;
  std::string line;
  bool have_header = false;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const json j = json::parse(line);
      if (!have_header) {
        if (j.value("schema", "") != kTraceSchema) throw SchemaMismatch("line 1 is not a trace header");
        t.header.version = j.at("version").get<int>();
        if (t.header.version != kTraceVersion)
          throw SchemaMismatch("trace version " + std::to_string(t.header.version) + " unsupported");
        t.header.n = j.at("n").get<int>();
        t.header.m = j.at("m").get<int>();
        t.header.solver = j.at("solver").get<std::string>();
        t.header.scale = j.at("scale").get<std::string>();
        have_header = true;
        continue;
      }
      if (j.value("type", "") != "iteration") throw SchemaMismatch("unexpected record type");
      t.records.push_back(parse_record(j));
    } catch (const SchemaMismatch&) {
      throw;
    } catch (const std::exception& e) {
      throw SchemaMismatch("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!have_header) throw SchemaMismatch("empty trace");
  return t;
}

Trace read_trace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaMismatch("cannot open " + path);
  return read_trace(in);
}

TraceHeader make_header(const Graph& g, const PerturbedCosts& pc, SolverChoice solver) {
  return {kTraceVersion, g.node_count(), g.edge_count(), to_string(solver), pc.scale.get_str()};
}

}  // namespace cpm
