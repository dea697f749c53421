#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cpm/driver.hpp"

namespace cpm {

inline constexpr const char* kTraceSchema = "cpm-trace";
inline constexpr int kTraceVersion = 1;

struct TraceHeader {
  int version = kTraceVersion;
  int n = 0;
  int m = 0;
  std::string solver;
  std::string scale;  // 2^m as a decimal string
};

struct Trace {
  TraceHeader header;
  std::vector<IterationRecord> records;
};

/// JSON-lines: one header object, then one object per iteration. Rationals
/// are "p/q" strings, node ids and edge ids 1-based.
void write_trace(std::ostream& out, const TraceHeader& header,
                 const std::vector<IterationRecord>& records);
std::string record_to_json(const IterationRecord& rec);

/// Throws SchemaMismatch on a missing or foreign header, a version
/// mismatch, or malformed records.
Trace read_trace(std::istream& in);
Trace read_trace_file(const std::string& path);

TraceHeader make_header(const Graph& g, const PerturbedCosts& pc, SolverChoice solver);

}  // namespace cpm
