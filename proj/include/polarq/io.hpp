/*
   Copyright 2026 The polarq authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef POLARQ_IO_HPP
#define POLARQ_IO_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace polarq {

/// Experiment configuration: key=value lines, '#' comments, and
/// include=<path> (resolved relative to the including file). Later keys
/// override earlier ones, so an including file can specialize a base.
class Config {
  public:
    Config() = default;
    static Config load(const std::string& path);
    static Config from_string(const std::string& text);

    void set(const std::string& key, const std::string& value);
    bool has(const std::string& key) const;

    std::string get(const std::string& key) const;  // throws if missing
    std::string get_or(const std::string& key, const std::string& dflt) const;
    uint64_t get_u64(const std::string& key) const;
    uint64_t get_u64_or(const std::string& key, uint64_t dflt) const;
    double get_double(const std::string& key) const;
    double get_double_or(const std::string& key, double dflt) const;
    bool get_bool_or(const std::string& key, bool dflt) const;

    const std::map<std::string, std::string>& entries() const { return kv_; }

  private:
    std::map<std::string, std::string> kv_;
    void parse_lines(const std::string& text, const std::string& dir);
};

/// Usage / configuration problems; the CLI maps these to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// CSV with a '#'-prefixed key=value metadata header. Every emitted file
/// carries enough metadata to re-run the producing command; the wall_time
/// column is informational and excluded from determinism comparisons.
class CsvWriter {
  public:
    explicit CsvWriter(const std::string& path);
    void metadata(const std::string& key, const std::string& value);
    void header(const std::vector<std::string>& columns);
    void row(const std::vector<std::string>& cells);
    void close();

  private:
    std::string path_;
    std::string buf_;
    bool header_written_ = false;
    bool closed_ = false;
};

struct CsvTable {
    std::map<std::string, std::string> metadata;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    static CsvTable load(const std::string& path);
    int column_index(const std::string& name) const;  // -1 if absent
};

std::string format_double(double v);  // shortest round-trip decimal

struct PlotSeries {
    std::string label;
    std::vector<double> x, y;
};

struct PlotSpec {
    std::string title, xlabel, ylabel;
    bool log_y = false;
    std::vector<PlotSeries> series;
};

/// Standalone SVG line plot, no external renderer required.
void write_svg_plot(const std::string& path, const PlotSpec& spec);

} // namespace polarq

#endif
