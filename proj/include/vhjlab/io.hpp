#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "vhjlab/parabolic.hpp"
#include "vhjlab/supconv.hpp"

namespace vhj {

// Space-time samples in long CSV form: t,x[,y],u with one block per time.
struct SeriesData {
  int dimension = 1;
  std::vector<double> times;
  std::vector<double> x, y; // node coordinates, shared by all blocks
  std::vector<std::vector<double>> values;
};

// Single field in CSV form: x[,y],u.
struct FieldData {
  int dimension = 1;
  std::vector<double> x, y;
  std::vector<double> values;
};

SeriesData series_from_trajectory(const Trajectory& traj);
FieldData field_from(const Grid& grid, const std::vector<double>& values);
TimeSeriesField to_time_series(const SeriesData& data);

void write_series_csv(std::ostream& os, const SeriesData& data);
SeriesData read_series_csv(std::istream& is);

void write_field_csv(std::ostream& os, const FieldData& data);
FieldData read_field_csv(std::istream& is);

// Two aligned columns, gnuplot-ready ('plot "file" using 1:2 with lines').
void write_profile_dat(std::ostream& os, const std::string& comment,
                       const std::vector<double>& first,
                       const std::vector<double>& second);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// ISO-8601 UTC wall-clock stamp; the only non-deterministic output field.
std::string timestamp_utc();

} // namespace vhj
