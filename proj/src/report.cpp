#include "ces/report.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "ces/error.hpp"

namespace ces::report {

namespace {

const double kSqrt6 = std::sqrt(6.0);
const double kSqrt10 = std::sqrt(10.0);

double sq(double v) { return v * v; }

const std::array<PrintedRow, 12> kPrinted = {{
    {0, 2, 1, 0.0370, "sqrt(1/9^3)", -0.197, "-(4/9)^2", -sq(4.0 / 9.0)},
    {0, 3, 1, 0.0475, "sqrt(3/11^3)", -0.055, "-(4/11)^2", -sq(4.0 / 11.0)},
    {0, 4, 1, 0.0525, "sqrt((3+sqrt(6))/(15-sqrt(6))^3)", -0.029, "-[4/(15+sqrt(6))]^2",
     -sq(4.0 / (15.0 + kSqrt6))},
    {0, 5, 1, 0.0555, "sqrt((5+sqrt(10))/(17-sqrt(10))^3)", -0.018, "-[4/(17+sqrt(10))]^2",
     -sq(4.0 / (17.0 + kSqrt10))},
    {1, 2, 2, -0.037, "-sqrt(1/9^3)", -0.132, "-(4/9)^2", -sq(4.0 / 9.0)},
    {1, 4, 2, 0.0102, "sqrt((3-sqrt(6))/(15+sqrt(6))^3)", -0.047, "-[4/(15-sqrt(6))]^2",
     -sq(4.0 / (15.0 - kSqrt6))},
    {1, 5, 2, 0.0150, "sqrt((5-sqrt(10))/(17+sqrt(10))^3)", -0.028, "-[4/(17-sqrt(10))]^2",
     -sq(4.0 / (17.0 - kSqrt10))},
    {2, 3, 2, -0.047, "-sqrt(3/11^3)", -0.055, "-(4/11)^2", -sq(4.0 / 11.0)},
    {2, 4, 3, -0.010, "-sqrt((3-sqrt(6))/(15+sqrt(6))^3)", -0.047, "-[4/(15-sqrt(6))]^2",
     -sq(4.0 / (15.0 - kSqrt6))},
    {3, 4, 4, -0.053, "-sqrt((3+sqrt(6))/(15-sqrt(6))^3)", -0.029, "-[4/(15+sqrt(6))]^2",
     -sq(4.0 / (15.0 + kSqrt6))},
    {3, 5, 3, -0.015, "-sqrt((5-sqrt(10))/(17+sqrt(10))^3)", -0.028, "-[4/(17-sqrt(10))]^2",
     -sq(4.0 / (17.0 - kSqrt10))},
    {4, 5, 4, -0.056, "-sqrt((5+sqrt(10))/(17-sqrt(10))^3)", -0.039, "-[4/(17+sqrt(10))]^2",
     -sq(4.0 / (17.0 + kSqrt10))},
}};

DiscrepancyRecord make_record(const PrintedRow& row, std::string quantity, double paper,
                              double computed) {
  DiscrepancyRecord rec;
  rec.M = row.M;
  rec.n = row.n;
  rec.k = row.k;
  rec.quantity = std::move(quantity);
  rec.paper_value = paper;
  rec.computed_value = computed;
  rec.abs_difference = std::abs(paper - computed);
  rec.verdict = rec.abs_difference <= kPrintedTolerance ? Verdict::Match
                                                        : Verdict::PaperTypoSuspected;
  return rec;
}

std::string field_text(const Field& f) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          return format_double(v);
        } else if constexpr (std::is_same_v<T, std::string>) {
          return v;
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else {
          return std::to_string(v);
        }
      },
      f);
}

std::string table_text(const Field& f) {
  if (const double* d = std::get_if<double>(&f)) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << std::setprecision(10) << *d;
    return os.str();
  }
  return field_text(f);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::span<const PrintedRow> printed_table2() { return kPrinted; }

const char* to_string(Verdict v) {
  return v == Verdict::Match ? "MATCH" : "PAPER_TYPO_SUSPECTED";
}

std::vector<DiscrepancyRecord> compare_with_printed(
    std::span<const quasi_exact::CesState> states) {
  std::vector<DiscrepancyRecord> out;
  for (const auto& row : kPrinted) {
    auto it = std::find_if(states.begin(), states.end(),
                           [&](const auto& s) { return s.n == row.n && s.k == row.k; });
    if (it == states.end()) continue;
    out.push_back(make_record(row, "Bprime", row.bprime, it->Bprime));
    out.push_back(make_record(row, "E", row.energy, it->E));
    out.push_back(make_record(row, "E_symbolic", row.energy_symbolic_value, it->E));
    if (it->M != row.M) {
      auto rec = make_record(row, "M", row.M, it->M);
      rec.verdict = Verdict::PaperTypoSuspected;
      out.push_back(rec);
    }
  }
  return out;
}

Format parse_format(const std::string& text) {
  if (text == "table") return Format::Table;
  if (text == "csv") return Format::Csv;
  if (text == "json-lines" || text == "jsonl") return Format::JsonLines;
  throw Error(ErrorKind::InvalidArgument, "unknown output format '" + text + "'");
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), end);
}

void write(std::ostream& os, std::span<const Record> records, Format format) {
  if (records.empty()) {
    if (format == Format::Table) os << "(no rows)\n";
    return;
  }
  const auto& first = records.front().fields;

  switch (format) {
    case Format::Csv: {
      for (std::size_t i = 0; i < first.size(); ++i) {
        os << (i ? "," : "") << csv_escape(first[i].first);
      }
      os << '\n';
      for (const auto& rec : records) {
        for (std::size_t i = 0; i < rec.fields.size(); ++i) {
          os << (i ? "," : "") << csv_escape(field_text(rec.fields[i].second));
        }
        os << '\n';
      }
      break;
    }
    case Format::JsonLines: {
      for (const auto& rec : records) {
        nlohmann::ordered_json j = nlohmann::ordered_json::object();
        for (const auto& [key, value] : rec.fields) {
          std::visit([&](const auto& v) { j[key] = v; }, value);
        }
        os << j.dump() << '\n';
      }
      break;
    }
    case Format::Table: {
      std::vector<std::size_t> width(first.size());
      std::vector<std::vector<std::string>> cells;
      for (std::size_t i = 0; i < first.size(); ++i) width[i] = first[i].first.size();
      for (const auto& rec : records) {
        auto& row = cells.emplace_back();
        for (std::size_t i = 0; i < rec.fields.size(); ++i) {
          row.push_back(table_text(rec.fields[i].second));
          if (i < width.size()) width[i] = std::max(width[i], row.back().size());
        }
      }
      for (std::size_t i = 0; i < first.size(); ++i) {
        os << (i ? "  " : "") << std::setw(static_cast<int>(width[i])) << first[i].first;
      }
      os << '\n';
      for (const auto& row : cells) {
        for (std::size_t i = 0; i < row.size(); ++i) {
          os << (i ? "  " : "") << std::setw(static_cast<int>(i < width.size() ? width[i] : 0))
             << row[i];
        }
        os << '\n';
      }
      break;
    }
  }
}

std::vector<std::vector<std::string>> read_csv(std::istream& is) {
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(is, line)) {
    std::vector<std::string> row;
    std::string cell;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      char ch = line[i];
      if (quoted) {
        if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
          cell += '"';
          ++i;
        } else if (ch == '"') {
          quoted = false;
        } else {
          cell += ch;
        }
      } else if (ch == '"') {
        quoted = true;
      } else if (ch == ',') {
        row.push_back(std::move(cell));
        cell.clear();
      } else {
        cell += ch;
      }
    }
    row.push_back(std::move(cell));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace ces::report
