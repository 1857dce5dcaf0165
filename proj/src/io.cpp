#include "vhjlab/io.hpp"

#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include "vhjlab/errors.hpp"

namespace vhj {

namespace {

void set_precision(std::ostream& os) {
  os << std::setprecision(17);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_number(const std::string& s, int line_no) {
  try {
    size_t pos = 0;
    const double v = std::stod(s, &pos);
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("bad number '" + s + "' on CSV line " +
                      std::to_string(line_no));
  }
}

} // namespace

SeriesData series_from_trajectory(const Trajectory& traj) {
  SeriesData data;
  data.dimension = traj.grid->dimension;
  data.times = traj.times;
  data.x = traj.grid->x;
  data.y = traj.grid->y;
  data.values = traj.snapshots;
  return data;
}

FieldData field_from(const Grid& grid, const std::vector<double>& values) {
  FieldData data;
  data.dimension = grid.dimension;
  data.x = grid.x;
  data.y = grid.y;
  data.values = values;
  return data;
}

TimeSeriesField to_time_series(const SeriesData& data) {
  TimeSeriesField out;
  out.times = data.times;
  out.values = data.values;
  return out;
}

void write_series_csv(std::ostream& os, const SeriesData& data) {
  set_precision(os);
  os << (data.dimension == 2 ? "t,x,y,u\n" : "t,x,u\n");
  for (size_t k = 0; k < data.times.size(); ++k)
    for (size_t i = 0; i < data.x.size(); ++i) {
      os << data.times[k] << ',' << data.x[i];
      if (data.dimension == 2) os << ',' << data.y[i];
      os << ',' << data.values[k][i] << '\n';
    }
}

SeriesData read_series_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ConfigError("empty series CSV");
  std::vector<std::string> header = split_csv_line(line);
  SeriesData data;
  if (header.size() == 3 && header[0] == "t" && header[1] == "x" &&
      header[2] == "u")
    data.dimension = 1;
  else if (header.size() == 4 && header[0] == "t" && header[1] == "x" &&
           header[2] == "y" && header[3] == "u")
    data.dimension = 2;
  else
    throw ConfigError("series CSV must start with 't,x,u' or 't,x,y,u'");

  const size_t cols = header.size();
  int line_no = 1;
  std::vector<double> row;            // values of the block being read
  std::vector<double> bx, by;         // coordinates of the block being read
  double block_time = 0.0;
  bool in_block = false;

  auto flush = [&]() {
    if (!in_block) return;
    if (data.values.empty()) {
      data.x = bx;
      data.y = by;
    } else if (bx != data.x || by != data.y) {
      throw ConfigError("series CSV blocks list different node coordinates");
    }
    if (!data.times.empty() && !(block_time > data.times.back()))
      throw ConfigError("series CSV times must be strictly increasing");
    data.times.push_back(block_time);
    data.values.push_back(row);
    row.clear();
    bx.clear();
    by.clear();
    in_block = false;
  };

  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    std::vector<std::string> f = split_csv_line(line);
    if (f.size() != cols)
      throw ConfigError("CSV line " + std::to_string(line_no) + " has " +
                        std::to_string(f.size()) + " fields, expected " +
                        std::to_string(cols));
    const double t = parse_number(f[0], line_no);
    if (in_block && t != block_time) flush();
    if (!in_block) {
      block_time = t;
      in_block = true;
    }
    bx.push_back(parse_number(f[1], line_no));
    if (data.dimension == 2) by.push_back(parse_number(f[2], line_no));
    row.push_back(parse_number(f.back(), line_no));
  }
  flush();
  if (data.times.empty()) throw ConfigError("series CSV has no data rows");
  return data;
}

void write_field_csv(std::ostream& os, const FieldData& data) {
  set_precision(os);
  os << (data.dimension == 2 ? "x,y,u\n" : "x,u\n");
  for (size_t i = 0; i < data.x.size(); ++i) {
    os << data.x[i];
    if (data.dimension == 2) os << ',' << data.y[i];
    os << ',' << data.values[i] << '\n';
  }
}

FieldData read_field_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ConfigError("empty field CSV");
  std::vector<std::string> header = split_csv_line(line);
  FieldData data;
  if (header.size() == 2 && header[0] == "x" && header[1] == "u")
    data.dimension = 1;
  else if (header.size() == 3 && header[0] == "x" && header[1] == "y" &&
           header[2] == "u")
    data.dimension = 2;
  else
    throw ConfigError("field CSV must start with 'x,u' or 'x,y,u'");

  int line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    std::vector<std::string> f = split_csv_line(line);
    if (f.size() != header.size())
      throw ConfigError("CSV line " + std::to_string(line_no) +
                        " has the wrong field count");
    data.x.push_back(parse_number(f[0], line_no));
    if (data.dimension == 2) data.y.push_back(parse_number(f[1], line_no));
    data.values.push_back(parse_number(f.back(), line_no));
  }
  if (data.values.empty()) throw ConfigError("field CSV has no data rows");
  return data;
}

void write_profile_dat(std::ostream& os, const std::string& comment,
                       const std::vector<double>& first,
                       const std::vector<double>& second) {
  if (first.size() != second.size())
    throw ConfigError("profile columns have different lengths");
  set_precision(os);
  if (!comment.empty()) os << "# " << comment << '\n';
  for (size_t i = 0; i < first.size(); ++i)
    os << first[i] << ' ' << second[i] << '\n';
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << content;
  if (!out) throw ConfigError("short write to '" + path + "'");
}

std::string timestamp_utc() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

} // namespace vhj
