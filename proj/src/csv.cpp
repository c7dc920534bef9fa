#include "arago/csv.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace arago {

std::string format_double(double v) {
  std::array<char, 32> buf;
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf.data(), ptr);
}

namespace {

double parse_field(std::string_view field, std::size_t line_no, const char* what) {
  double v = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw std::runtime_error("line " + std::to_string(line_no) + ": bad " + what +
                             " '" + std::string(field) + "'");
  }
  return v;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return out;
}

// Reads rows, skipping blank and '#'-comment lines. Returns {header, rows}.
struct CsvBody {
  std::string header;
  std::vector<std::pair<std::size_t, std::string>> rows;  // (line number, text)
};

CsvBody read_csv_body(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  CsvBody body;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (body.header.empty()) {
      body.header = line;
    } else {
      body.rows.emplace_back(line_no, line);
    }
  }
  if (body.header.empty()) throw std::runtime_error("'" + path + "': empty file");
  return body;
}

}  // namespace

void write_profile_csv(std::ostream& os, const IntensityProfile& p) {
  os << "x_um,intensity\n";
  for (std::size_t i = 0; i < p.xs.size(); ++i) {
    os << format_double(p.xs[i] * 1e6) << ',' << format_double(p.values[i]) << '\n';
  }
}

IntensityProfile read_profile_csv(const std::string& path) {
  const CsvBody body = read_csv_body(path);
  // residual traces from the fit report share the layout
  if (body.header != "x_um,intensity" && body.header != "x_um,residual") {
    throw std::runtime_error("'" + path + "': expected header x_um,intensity");
  }
  if (body.rows.empty()) throw std::runtime_error("'" + path + "': empty profile");
  IntensityProfile p;
  for (const auto& [line_no, row] : body.rows) {
    const auto fields = split_fields(row);
    if (fields.size() != 2) {
      throw std::runtime_error("line " + std::to_string(line_no) +
                               ": expected 2 fields");
    }
    p.xs.push_back(parse_field(fields[0], line_no, "x_um") * 1e-6);
    p.values.push_back(parse_field(fields[1], line_no, "intensity"));
  }
  validate_grid(p.xs);
  return p;
}

void write_dataset_csv(std::ostream& os, const DataSet& d) {
  const bool err = d.has_errors();
  os << (err ? "x_um,rate,rate_err\n" : "x_um,rate\n");
  for (std::size_t i = 0; i < d.xs.size(); ++i) {
    os << format_double(d.xs[i] * 1e6) << ',' << format_double(d.counts[i]);
    if (err) os << ',' << format_double(d.errors[i]);
    os << '\n';
  }
}

DataSet read_dataset_csv(const std::string& path) {
  const CsvBody body = read_csv_body(path);
  bool with_err = false;
  if (body.header == "x_um,rate,rate_err") {
    with_err = true;
  } else if (body.header != "x_um,rate") {
    throw std::runtime_error("'" + path +
                             "': expected header x_um,rate[,rate_err]");
  }
  if (body.rows.empty()) throw std::runtime_error("'" + path + "': empty dataset");

  DataSet d;
  for (const auto& [line_no, row] : body.rows) {
    const auto fields = split_fields(row);
    if (fields.size() != (with_err ? 3u : 2u)) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": expected " +
                               std::to_string(with_err ? 3 : 2) + " fields");
    }
    d.xs.push_back(parse_field(fields[0], line_no, "x_um") * 1e-6);
    d.counts.push_back(parse_field(fields[1], line_no, "rate"));
    if (with_err) d.errors.push_back(parse_field(fields[2], line_no, "rate_err"));
  }

  // sort by x, reject duplicates
  std::vector<std::size_t> order(d.xs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return d.xs[a] < d.xs[b]; });
  DataSet sorted;
  for (std::size_t i : order) {
    sorted.xs.push_back(d.xs[i]);
    sorted.counts.push_back(d.counts[i]);
    if (with_err) sorted.errors.push_back(d.errors[i]);
  }
  for (std::size_t i = 0; i + 1 < sorted.xs.size(); ++i) {
    if (sorted.xs[i] == sorted.xs[i + 1]) {
      throw std::runtime_error("'" + path + "': duplicate abscissa x = " +
                               format_double(sorted.xs[i] * 1e6) + " um");
    }
  }
  sorted.validate();
  return sorted;
}

}  // namespace arago
