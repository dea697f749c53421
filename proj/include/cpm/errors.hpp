#pragma once

#include <stdexcept>
#include <string>

namespace cpm {

struct NoPerfectMatching : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LaminarityViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An LP came back infeasible.
struct Infeasible : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Unbounded LP; never legitimate for the programs built here.
struct Unbounded : std::logic_error {
  using std::logic_error::logic_error;
};

/// A proven structural property failed to hold. Carries the offending context
/// (usually a serialized iteration record) so the run can be replayed.
struct StructureViolation : std::runtime_error {
  StructureViolation(const std::string& what, std::string context = {})
      : std::runtime_error(what), context(std::move(context)) {}
  std::string context;
};

struct InvalidConfiguration : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StalledNoEpsilon : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PreconditionBroken : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SchemaMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GenerationFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace cpm
