#include "cpm/graph.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "cpm/errors.hpp"

namespace cpm {

Graph::Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)), incidence_(n) {
  if (n < 0) throw std::invalid_argument("negative node count");
  for (EdgeId e = 0; e < edge_count(); ++e) {
    const auto& ed = edges_[e];
    if (ed.u < 0 || ed.u >= n || ed.v < 0 || ed.v >= n)
      throw std::invalid_argument("edge endpoint out of range");
    if (ed.u == ed.v) throw std::invalid_argument("self-loop");
    incidence_[ed.u].push_back(e);
    incidence_[ed.v].push_back(e);
  }
}

std::vector<long> Graph::costs() const {
  std::vector<long> out;
  out.reserve(edges_.size());
  for (const auto& e : edges_) out.push_back(e.cost);
  return out;
}

Graph read_instance(std::istream& in) {
  std::string line;
  int line_no = 0;
  int n = -1;
  long declared_m = -1;
  std::vector<Edge> edges;
  auto fail = [&](const std::string& msg) {
    throw ParseError("line " + std::to_string(line_no) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag == "c") continue;
    if (tag == "p") {
      std::string kind;
      if (n >= 0) fail("duplicate header");
      if (!(ls >> kind >> n >> declared_m) || kind != "edge" || n < 0 || declared_m < 0)
        fail("malformed header, expected 'p edge <n> <m>'");
    } else if (tag == "e") {
      if (n < 0) fail("edge before header");
      long u = 0, v = 0, cost = 0;
      if (!(ls >> u >> v >> cost)) fail("malformed edge line");
      if (u < 1 || u > n || v < 1 || v > n) fail("node id out of range");
      if (u == v) fail("self-loop");
      edges.push_back({static_cast<NodeId>(u - 1), static_cast<NodeId>(v - 1), cost});
    } else {
      fail("unknown line tag '" + tag + "'");
    }
    std::string extra;
    if (ls >> extra) fail("trailing tokens");
  }
  if (n < 0) throw ParseError("missing 'p edge' header");
  if (static_cast<long>(edges.size()) != declared_m)
    throw ParseError("header declares " + std::to_string(declared_m) + " edges, found " +
                     std::to_string(edges.size()));
  return Graph(n, std::move(edges));
}

Graph read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_instance(in);
}

void write_instance(std::ostream& out, const Graph& g) {
  out << "p edge " << g.node_count() << ' ' << g.edge_count() << '\n';
  for (const auto& e : g.edges()) out << "e " << e.u + 1 << ' ' << e.v + 1 << ' ' << e.cost << '\n';
}

}  // namespace cpm
