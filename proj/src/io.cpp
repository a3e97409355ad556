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

#include "polarq/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace polarq {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::string dir_of(const std::string& path) {
    const size_t slash = path.find_last_of('/');
    return slash == std::string::npos ? std::string(".") : path.substr(0, slash);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

void Config::parse_lines(const std::string& text, const std::string& dir) {
    std::istringstream in(text);
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected key=value, got '" + t + "'");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        if (key == "include") {
            const std::string sub =
                (!value.empty() && value[0] == '/') ? value : dir + "/" + value;
            parse_lines(read_file(sub), dir_of(sub));
        } else {
            kv_[key] = value;
        }
    }
}

Config Config::load(const std::string& path) {
    Config c;
    c.parse_lines(read_file(path), dir_of(path));
    return c;
}

Config Config::from_string(const std::string& text) {
    Config c;
    c.parse_lines(text, ".");
    return c;
}

void Config::set(const std::string& key, const std::string& value) { kv_[key] = value; }

bool Config::has(const std::string& key) const { return kv_.count(key) != 0; }

std::string Config::get(const std::string& key) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) throw ConfigError("missing required config key: " + key);
    return it->second;
}

std::string Config::get_or(const std::string& key, const std::string& dflt) const {
    auto it = kv_.find(key);
    return it == kv_.end() ? dflt : it->second;
}

uint64_t Config::get_u64(const std::string& key) const {
    const std::string v = get(key);
    try {
        size_t pos = 0;
        const uint64_t r = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return r;
    } catch (const std::exception&) {
        throw ConfigError("config key " + key + ": not an integer: '" + v + "'");
    }
}

uint64_t Config::get_u64_or(const std::string& key, uint64_t dflt) const {
    return has(key) ? get_u64(key) : dflt;
}

double Config::get_double(const std::string& key) const {
    const std::string v = get(key);
    try {
        size_t pos = 0;
        const double r = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return r;
    } catch (const std::exception&) {
        throw ConfigError("config key " + key + ": not a number: '" + v + "'");
    }
}

double Config::get_double_or(const std::string& key, double dflt) const {
    return has(key) ? get_double(key) : dflt;
}

bool Config::get_bool_or(const std::string& key, bool dflt) const {
    if (!has(key)) return dflt;
    const std::string v = get(key);
    if (v == "1" || v == "true" || v == "yes") return true;
    if (v == "0" || v == "false" || v == "no") return false;
    throw ConfigError("config key " + key + ": not a boolean: '" + v + "'");
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    double back = 0.0;
    // prefer the shortest representation that round-trips
    for (int prec = 1; prec <= 16; ++prec) {
        char cand[40];
        std::snprintf(cand, sizeof cand, "%.*g", prec, v);
        std::sscanf(cand, "%lf", &back);
        if (back == v) return cand;
    }
    return buf;
}

CsvWriter::CsvWriter(const std::string& path) : path_(path) {}

void CsvWriter::metadata(const std::string& key, const std::string& value) {
    if (header_written_) throw std::logic_error("csv metadata after header");
    buf_ += "# " + key + "=" + value + "\n";
}

void CsvWriter::header(const std::vector<std::string>& columns) {
    if (header_written_) throw std::logic_error("csv header written twice");
    header_written_ = true;
    for (size_t i = 0; i < columns.size(); ++i) {
        if (i) buf_ += ',';
        buf_ += columns[i];
    }
    buf_ += '\n';
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    if (!header_written_) throw std::logic_error("csv row before header");
    for (size_t i = 0; i < cells.size(); ++i) {
        if (i) buf_ += ',';
        buf_ += cells[i];
    }
    buf_ += '\n';
}

void CsvWriter::close() {
    if (closed_) return;
    closed_ = true;
    std::ofstream out(path_);
    if (!out) throw std::runtime_error("cannot write csv file: " + path_);
    out << buf_;
}

CsvTable CsvTable::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open csv file: " + path);
    CsvTable t;
    std::string line;
    bool have_header = false;
    auto split = [](const std::string& s) {
        std::vector<std::string> out;
        std::string cell;
        std::istringstream ss(s);
        while (std::getline(ss, cell, ',')) out.push_back(cell);
        return out;
    };
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const std::string body = trim(line.substr(1));
            const size_t eq = body.find('=');
            if (eq != std::string::npos)
                t.metadata[trim(body.substr(0, eq))] = trim(body.substr(eq + 1));
            continue;
        }
        if (!have_header) {
            t.columns = split(line);
            have_header = true;
        } else {
            t.rows.push_back(split(line));
        }
    }
    if (!have_header) throw std::runtime_error("csv file has no header row: " + path);
    return t;
}

int CsvTable::column_index(const std::string& name) const {
    for (size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return static_cast<int>(i);
    return -1;
}

namespace {

std::string svg_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '&') out += "&amp;";
        else if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else out += c;
    }
    return out;
}

// round an axis range outward to tidy tick positions
void nice_range(double lo, double hi, double& out_lo, double& out_hi, double& step) {
    if (hi <= lo) hi = lo + 1.0;
    const double span = hi - lo;
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double s = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        if (raw <= m * mag) {
            s = m * mag;
            break;
        }
    }
    out_lo = std::floor(lo / s) * s;
    out_hi = std::ceil(hi / s) * s;
    step = s;
}

} // namespace

void write_svg_plot(const std::string& path, const PlotSpec& spec) {
    if (spec.series.empty()) throw std::runtime_error("plot has no series");
    for (const auto& s : spec.series)
        if (s.x.empty() || s.x.size() != s.y.size())
            throw std::runtime_error("plot series '" + s.label + "' is empty or ragged");

    const double W = 720, H = 480, ML = 80, MR = 30, MT = 50, MB = 60;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    auto ty = [&spec](double v) {
        return spec.log_y ? std::log10(std::max(v, 1e-300)) : v;
    };
    for (const auto& s : spec.series)
        for (size_t i = 0; i < s.x.size(); ++i) {
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, ty(s.y[i]));
            ymax = std::max(ymax, ty(s.y[i]));
        }
    double xlo, xhi, xstep, ylo, yhi, ystep;
    nice_range(xmin, xmax, xlo, xhi, xstep);
    nice_range(ymin, ymax, ylo, yhi, ystep);

    auto px = [&](double x) { return ML + (x - xlo) / (xhi - xlo) * (W - ML - MR); };
    auto py = [&](double y) { return H - MB - (y - ylo) / (yhi - ylo) * (H - MT - MB); };

    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\""
        << H << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << svg_escape(spec.title)
        << "</text>\n";

    // grid and ticks
    svg << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
    for (double x = xlo; x <= xhi + 1e-9 * xstep; x += xstep) {
        svg << "<line x1=\"" << px(x) << "\" y1=\"" << MT << "\" x2=\"" << px(x)
            << "\" y2=\"" << H - MB << "\" stroke=\"#ddd\"/>\n";
        svg << "<text x=\"" << px(x) << "\" y=\"" << H - MB + 16
            << "\" text-anchor=\"middle\">" << format_double(x) << "</text>\n";
    }
    for (double y = ylo; y <= yhi + 1e-9 * ystep; y += ystep) {
        svg << "<line x1=\"" << ML << "\" y1=\"" << py(y) << "\" x2=\"" << W - MR
            << "\" y2=\"" << py(y) << "\" stroke=\"#ddd\"/>\n";
        std::string label = spec.log_y ? ("1e" + format_double(y)) : format_double(y);
        svg << "<text x=\"" << ML - 6 << "\" y=\"" << py(y) + 4
            << "\" text-anchor=\"end\">" << label << "</text>\n";
    }
    svg << "</g>\n";
    svg << "<rect x=\"" << ML << "\" y=\"" << MT << "\" width=\"" << W - ML - MR
        << "\" height=\"" << H - MT - MB << "\" fill=\"none\" stroke=\"#333\"/>\n";
    svg << "<text x=\"" << W / 2 << "\" y=\"" << H - 14
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
        << svg_escape(spec.xlabel) << "</text>\n";
    svg << "<text x=\"18\" y=\"" << H / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
        << "transform=\"rotate(-90 18 " << H / 2 << ")\">" << svg_escape(spec.ylabel)
        << "</text>\n";

    for (size_t si = 0; si < spec.series.size(); ++si) {
        const auto& s = spec.series[si];
        const char* color = palette[si % 8];
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (size_t i = 0; i < s.x.size(); ++i)
            svg << px(s.x[i]) << ',' << py(ty(s.y[i])) << ' ';
        svg << "\"/>\n";
        const double ly = MT + 16 + 16 * static_cast<double>(si);
        svg << "<line x1=\"" << W - MR - 150 << "\" y1=\"" << ly << "\" x2=\""
            << W - MR - 130 << "\" y2=\"" << ly << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n";
        svg << "<text x=\"" << W - MR - 124 << "\" y=\"" << ly + 4
            << "\" font-family=\"sans-serif\" font-size=\"11\">" << svg_escape(s.label)
            << "</text>\n";
    }
    svg << "</svg>\n";

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write svg file: " + path);
    out << svg.str();
}

} // namespace polarq
