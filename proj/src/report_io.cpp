/*
   Copyright 2026 The rbarrier Authors

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


#include "rbarrier/report_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "rbarrier/error.hpp"

namespace rbarrier {

namespace {

const char* const kColumns =
    "maturity,hit_prob,hit_se,up_and_in,up_and_in_se,european,european_se,discrete_hits,n_paths,seed,"
    "mean_max,concentration_bound,cdf_bound,combined_bound";

double parse_double(const std::string& s)
{
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
        throw InvalidArgument("report.csv: cannot parse number '" + s + "'");
    return v;
}

std::vector<std::string> split(const std::string& line, char sep)
{
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(line);
    while (std::getline(in, item, sep))
        out.push_back(item);
    return out;
}

} // namespace

std::string format_double(double v)
{
    if (std::isnan(v))
        return "nan";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string fnv1a_hex(std::string_view data)
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string report_to_csv(const DecayReport& r, const std::string& manifest_digest)
{
    std::ostringstream out;
    out << "# rbarrier decay report; manifest_digest=" << manifest_digest
        << "; units: maturity in years, prices in units of S0's currency, probabilities and bounds "
           "dimensionless, mean_max in natural-log price\n";
    out << "# meta: log_spot=" << format_double(r.log_spot) << ";log_barrier=" << format_double(r.log_barrier)
        << ";rho=" << format_double(r.rho) << ";alpha=" << format_double(r.vol_bounds.alpha)
        << ";beta=" << format_double(r.vol_bounds.beta) << ";c1=" << format_double(r.cdf_params.c1)
        << ";c2=" << format_double(r.cdf_params.c2) << ";seed=" << r.seed << ";n_paths=" << r.n_paths
        << ";n_steps=" << r.n_steps << "\n";
    out << kColumns << "\n";
    for (const auto& row : r.rows) {
        out << format_double(row.maturity) << ',' << format_double(row.hit.value) << ','
            << format_double(row.hit.std_error) << ',' << format_double(row.up_and_in.value) << ','
            << format_double(row.up_and_in.std_error) << ',' << format_double(row.european.value) << ','
            << format_double(row.european.std_error) << ',' << row.discrete_hits << ',' << row.hit.n_paths << ','
            << row.hit.seed << ','
            << format_double(row.mean_max) << ',' << format_double(row.concentration) << ','
            << format_double(row.cdf) << ',' << format_double(row.combined) << "\n";
    }
    return out.str();
}

DecayReport report_from_csv(const std::string& text)
{
    DecayReport r;
    std::istringstream in(text);
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        if (line.rfind("# meta: ", 0) == 0) {
            std::map<std::string, std::string> kv;
            for (const auto& item : split(line.substr(8), ';')) {
                const auto eq = item.find('=');
                if (eq != std::string::npos)
                    kv[item.substr(0, eq)] = item.substr(eq + 1);
            }
            r.log_spot = parse_double(kv.at("log_spot"));
            r.log_barrier = parse_double(kv.at("log_barrier"));
            r.rho = parse_double(kv.at("rho"));
            r.vol_bounds = {parse_double(kv.at("alpha")), parse_double(kv.at("beta"))};
            r.cdf_params = {parse_double(kv.at("c1")), parse_double(kv.at("c2"))};
            r.seed = std::stoull(kv.at("seed"));
            r.n_paths = std::stoull(kv.at("n_paths"));
            r.n_steps = std::stoi(kv.at("n_steps"));
            continue;
        }
        if (line[0] == '#')
            continue;
        if (!header_seen) {
            if (line != kColumns)
                throw InvalidArgument("report.csv: unexpected header '" + line + "'");
            header_seen = true;
            continue;
        }
        const auto cells = split(line, ',');
        if (cells.size() != 14)
            throw InvalidArgument("report.csv: expected 14 columns, got " + std::to_string(cells.size()));
        DecayRow row;
        row.maturity = parse_double(cells[0]);
        row.hit = {parse_double(cells[1]), parse_double(cells[2]), 0, r.seed};
        row.up_and_in = {parse_double(cells[3]), parse_double(cells[4]), 0, r.seed};
        row.european = {parse_double(cells[5]), parse_double(cells[6]), 0, r.seed};
        row.discrete_hits = std::stoull(cells[7]);
        const std::size_t n = std::stoull(cells[8]);
        const std::uint64_t seed = std::stoull(cells[9]);
        row.hit.n_paths = row.up_and_in.n_paths = row.european.n_paths = n;
        row.hit.seed = row.up_and_in.seed = row.european.seed = seed;
        row.mean_max = parse_double(cells[10]);
        row.concentration = parse_double(cells[11]);
        row.cdf = parse_double(cells[12]);
        row.combined = parse_double(cells[13]);
        r.rows.push_back(row);
    }
    return r;
}

std::vector<std::string> csv_row_digests(const std::string& csv_text)
{
    std::vector<std::string> out;
    std::istringstream in(csv_text);
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        out.push_back(fnv1a_hex(line));
    }
    return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw InvalidArgument("--out: cannot write '" + path.string() + "'");
    out << text;
}

std::string read_text_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InvalidArgument("cannot read '" + path.string() + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace rbarrier
