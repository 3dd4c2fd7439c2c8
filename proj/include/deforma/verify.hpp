#pragma once

#include <cstdint>
#include <string>
#include <vector>

/// Self-check suite: each module's identities evaluated on seeded random
/// corpora, plus informational records for formulas whose commonly quoted
/// form differs from the one implemented.
namespace deforma::verify {

enum class Status { pass, fail, info };
const char* to_string(Status status);

struct Record {
  Status status = Status::pass;
  std::string module;
  std::string name;
  /// Largest observed error (unset for info records).
  double max_error = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct Options {
  /// Restrict to one module; empty runs everything.
  std::string only;
  std::uint64_t seed = 1;
};

/// core, qcalc, fractional, dcalc, spectral, qpotential.
const std::vector<std::string>& module_names();

/// Runs the suite. DomainError for an unknown module name. A check that
/// throws is recorded as a failure carrying the exception message.
std::vector<Record> run(const Options& options);

bool all_passed(const std::vector<Record>& records);

/// One line per record plus a summary line. Contains no timings, so equal
/// inputs give byte-identical reports.
std::string format_report(const std::vector<Record>& records);

}  // namespace deforma::verify
