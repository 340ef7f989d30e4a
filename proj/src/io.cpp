#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <string_view>

#include "edm/io.hpp"

namespace edm
{

namespace
{

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line)
{
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        cells.push_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return cells;
}

std::optional<double> parse_double(std::string_view cell)
{
    if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc() || ptr != cell.data() + cell.size() || cell.empty()) {
        return std::nullopt;
    }
    return v;
}

std::string location(std::size_t row, std::size_t col, std::string_view name)
{
    return "row " + std::to_string(row) + ", column " + std::to_string(col) +
           " ('" + std::string(name) + "')";
}

std::ifstream open_in(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    return in;
}

std::ofstream open_out(const std::filesystem::path &path)
{
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    return out;
}

void format_rho(std::ostream &out, const std::optional<double> &rho)
{
    if (!rho) {
        out << "NA";
        return;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", *rho);
    out << buf;
}

} // namespace

Dataset parse_csv(std::istream &in)
{
    std::string line;
    std::size_t row = 0;

    std::vector<std::string> names;
    while (std::getline(in, line)) {
        row++;
        if (trim(line).empty()) continue;
        for (auto cell : split(line)) names.emplace_back(cell);
        break;
    }
    if (names.empty()) throw IoError("empty CSV input");

    std::set<std::string_view> seen;
    for (std::size_t c = 0; c < names.size(); c++) {
        if (names[c].empty()) {
            throw IoError("empty column name in column " + std::to_string(c + 1));
        }
        if (!seen.insert(names[c]).second) {
            throw IoError("duplicate column name '" + names[c] + "'");
        }
    }

    std::vector<std::vector<double>> columns(names.size());
    while (std::getline(in, line)) {
        row++;
        if (trim(line).empty()) continue;
        const auto cells = split(line);
        if (cells.size() != names.size()) {
            throw IoError("row " + std::to_string(row) + " has " +
                          std::to_string(cells.size()) + " cells, expected " +
                          std::to_string(names.size()));
        }
        for (std::size_t c = 0; c < cells.size(); c++) {
            const auto v = parse_double(cells[c]);
            if (!v) {
                throw IoError("non-numeric cell '" + std::string(cells[c]) +
                              "' at " + location(row, c + 1, names[c]));
            }
            if (!std::isfinite(*v)) {
                throw IoError("non-finite cell '" + std::string(cells[c]) +
                              "' at " + location(row, c + 1, names[c]));
            }
            columns[c].push_back(*v);
        }
    }
    if (columns.front().empty()) throw IoError("CSV has a header but no data rows");

    std::vector<TimeSeries> series;
    series.reserve(names.size());
    for (std::size_t c = 0; c < names.size(); c++) {
        series.emplace_back(std::move(columns[c]), names[c]);
    }
    return Dataset(std::move(series));
}

Dataset load_csv(const std::filesystem::path &path)
{
    auto in = open_in(path);
    return parse_csv(in);
}

void write_skill_matrix(std::ostream &out, const SkillMatrix &m)
{
    out << "library";
    for (const auto &name : m.names()) out << ',' << name;
    out << '\n';
    for (std::size_t lib = 0; lib < m.n(); lib++) {
        out << m.names()[lib];
        for (std::size_t tgt = 0; tgt < m.n(); tgt++) {
            out << ',';
            format_rho(out, m(lib, tgt));
        }
        out << '\n';
    }
}

void write_skill_matrix(const SkillMatrix &m, const std::filesystem::path &path)
{
    auto out = open_out(path);
    write_skill_matrix(out, m);
    out.flush();
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

SkillMatrix read_skill_matrix(std::istream &in)
{
    std::string line;
    if (!std::getline(in, line)) throw IoError("empty skill matrix");

    auto header = split(line);
    if (header.empty() || header.front() != "library") {
        throw IoError("skill matrix header must start with 'library'");
    }
    std::vector<std::string> names(header.begin() + 1, header.end());
    SkillMatrix m(names);

    for (std::size_t lib = 0; lib < names.size(); lib++) {
        if (!std::getline(in, line)) {
            throw IoError("skill matrix has fewer rows than columns");
        }
        const auto cells = split(line);
        if (cells.size() != names.size() + 1 || cells.front() != names[lib]) {
            throw IoError("malformed skill matrix row " + std::to_string(lib + 2));
        }
        for (std::size_t tgt = 0; tgt < names.size(); tgt++) {
            const auto cell = cells[tgt + 1];
            if (cell == "NA") continue;
            const auto v = parse_double(cell);
            if (!v) {
                throw IoError("bad skill value '" + std::string(cell) + "' at " +
                              location(lib + 2, tgt + 2, names[tgt]));
            }
            m(lib, tgt) = *v;
        }
    }
    return m;
}

SkillMatrix read_skill_matrix(const std::filesystem::path &path)
{
    auto in = open_in(path);
    return read_skill_matrix(in);
}

void write_predictions(std::ostream &out, const CcmResult &result)
{
    const auto &names = result.skill.names();
    out << "library,target,time,predicted\n";
    char buf[32];
    for (const auto &p : result.predictions) {
        for (std::size_t j = 0; j < p.predicted.size(); j++) {
            std::snprintf(buf, sizeof buf, "%.17g", p.predicted[j]);
            out << names[p.library] << ',' << names[p.target] << ','
                << p.first_time + j << ',' << buf << '\n';
        }
    }
}

} // namespace edm
