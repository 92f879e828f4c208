#include "core/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "core/errors.hpp"

namespace dirac {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

std::string read_line(std::istream& in) {
  std::string line;
  std::getline(in, line);
  if (!line.empty() && line.back() == '\r') {
    line.pop_back();
  }
  return line;
}

double field_as_double(const std::string& field, int line_no) {
  // strtod round-trips every finite double, subnormals included
  const char* begin = field.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (field.empty() || end != begin + field.size() || !std::isfinite(v)) {
    throw parse_error("csv line " + std::to_string(line_no) + ": bad numeric field '" + field +
                      "'");
  }
  return v;
}

std::uint64_t field_as_u64(const std::string& field, int line_no) {
  std::uint64_t v = 0;
  const char* first = field.data();
  const char* last = first + field.size();
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc{} || res.ptr != last) {
    throw parse_error("csv line " + std::to_string(line_no) + ": bad integer field '" + field +
                      "'");
  }
  return v;
}

void expect_header(std::istream& in, const char* expected) {
  const std::string line = read_line(in);
  if (line != expected) {
    throw parse_error(std::string("csv: expected header '") + expected + "', found '" + line +
                      "'");
  }
}

}  // namespace

std::string format_full(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_ensemble_csv(std::ostream& out, const PhaseEnsemble& ensemble) {
  out << "sample_index,phase\n";
  for (const auto& [index, phase] : ensemble.phases) {
    out << index << ',' << format_full(phase) << '\n';
  }
}

void write_summary_csv(std::ostream& out, const MomentEstimate& est, std::uint64_t rejected) {
  out << "samples,rejected,mean,variance,stderr_mean,stderr_variance\n";
  out << est.accepted << ',' << rejected << ',' << format_full(est.mean) << ','
      << format_full(est.variance) << ',' << format_full(est.stderr_mean) << ','
      << format_full(est.stderr_variance) << '\n';
}

void write_sweep_csv(std::ostream& out, std::span<const SweepPoint> points) {
  out << "N,sigma,sigma_stderr\n";
  for (const SweepPoint& p : points) {
    out << format_full(p.n) << ',' << format_full(p.sigma) << ',' << format_full(p.sigma_stderr)
        << '\n';
  }
}

void write_fit_csv(std::ostream& out, const FitResult& fit) {
  out << "a,b,residual_norm\n";
  out << format_full(fit.a) << ',' << format_full(fit.b) << ',' << format_full(fit.residual_norm)
      << '\n';
}

std::vector<std::pair<std::uint64_t, double>> read_ensemble_csv(std::istream& in) {
  expect_header(in, "sample_index,phase");
  std::vector<std::pair<std::uint64_t, double>> rows;
  int line_no = 1;
  while (in) {
    const std::string line = read_line(in);
    if (line.empty()) {
      break;
    }
    ++line_no;
    const auto fields = split_fields(line);
    if (fields.size() != 2) {
      throw parse_error("csv line " + std::to_string(line_no) + ": expected 2 fields");
    }
    rows.emplace_back(field_as_u64(fields[0], line_no), field_as_double(fields[1], line_no));
  }
  return rows;
}

std::vector<SweepPoint> read_sweep_csv(std::istream& in) {
  expect_header(in, "N,sigma,sigma_stderr");
  std::vector<SweepPoint> rows;
  int line_no = 1;
  while (in) {
    const std::string line = read_line(in);
    if (line.empty()) {
      break;
    }
    ++line_no;
    const auto fields = split_fields(line);
    if (fields.size() != 3) {
      throw parse_error("csv line " + std::to_string(line_no) + ": expected 3 fields");
    }
    rows.push_back(SweepPoint{field_as_double(fields[0], line_no),
                              field_as_double(fields[1], line_no),
                              field_as_double(fields[2], line_no)});
  }
  return rows;
}

}  // namespace dirac
