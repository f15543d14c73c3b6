#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ces/quasi_exact.hpp"

namespace ces::report {

/// One row of the published state table (A = -1), transcribed as printed. This is
/// the arbitration baseline, not ground truth.
struct PrintedRow {
  int M, n, k;
  double bprime;                 // printed decimal
  const char* bprime_symbolic;
  double energy;                 // printed decimal
  const char* energy_symbolic;
  double energy_symbolic_value;  // the symbolic entry evaluated
};

std::span<const PrintedRow> printed_table2();

enum class Verdict { Match, PaperTypoSuspected };
const char* to_string(Verdict v);

// |difference| <= 5e-4 counts as agreement with a three-decimal print.
inline constexpr double kPrintedTolerance = 5e-4;

struct DiscrepancyRecord {
  int M = 0, n = 0, k = 0;
  std::string quantity;  // "Bprime", "E", "E_symbolic"
  double paper_value = 0.0;
  double computed_value = 0.0;
  double abs_difference = 0.0;
  Verdict verdict = Verdict::Match;
};

/// Compares states (matched by (n, k)) against every printed quantity. Rows
/// with no printed counterpart are skipped; a printed row whose M disagrees
/// with the computed node count yields a "M" record.
std::vector<DiscrepancyRecord> compare_with_printed(std::span<const quasi_exact::CesState> states);

// ---------------------------------------------------------------------------
// Output records

using Field = std::variant<std::int64_t, double, std::string, bool>;

struct Record {
  std::vector<std::pair<std::string, Field>> fields;

  Record& add(std::string key, Field value) {
    fields.emplace_back(std::move(key), std::move(value));
    return *this;
  }
};

enum class Format { Table, Csv, JsonLines };
Format parse_format(const std::string& text);

// Shortest text that parses back to the identical double (17 significant
// digits at most), locale independent.
std::string format_double(double v);

void write(std::ostream& os, std::span<const Record> records, Format format);

// Minimal RFC-4180 reader for what write(..., Csv) emits: header then rows.
std::vector<std::vector<std::string>> read_csv(std::istream& is);

}  // namespace ces::report
