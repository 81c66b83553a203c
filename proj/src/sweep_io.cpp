#include "gibbsqaoa/sweep_io.hpp"

#include <array>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "gibbsqaoa/errors.hpp"

namespace gibbsqaoa {

namespace {

std::ofstream open_for_write(const std::filesystem::path &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    return out;
}

std::vector<std::string> split_csv_line(const std::string &line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ','))
        cells.push_back(cell);
    if (!line.empty() && line.back() == ',')
        cells.emplace_back();
    return cells;
}

std::string optional_cell(const std::optional<double> &v) {
    return v ? format_double(*v) : std::string{};
}

} // namespace

std::string format_double(double v) {
    std::array<char, 40> buf{};
    std::snprintf(buf.data(), buf.size(), "%.17g", v);
    return buf.data();
}

void write_sweep_csv(std::ostream &out, std::span<const SweepRecord> records) {
    out << kSweepHeader << '\n';
    for (const auto &r : records) {
        out << format_double(r.gamma) << ',' << format_double(r.beta_angle) << ','
            << format_double(r.energy_expectation) << ',' << format_double(r.entropy) << ','
            << optional_cell(r.beta_eff) << ',' << optional_cell(r.tvd_min) << '\n';
    }
}

void write_sweep_csv(const std::filesystem::path &path, std::span<const SweepRecord> records) {
    auto out = open_for_write(path);
    write_sweep_csv(out, records);
    if (!out)
        throw std::runtime_error("failed writing " + path.string());
}

std::vector<SweepRecord> read_sweep_csv(std::istream &in) {
    std::string line;
    if (!std::getline(in, line))
        throw ParseError("sweep csv: empty input");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    const auto header = split_csv_line(line);

    auto column = [&](const std::string &name) -> std::optional<std::size_t> {
        for (std::size_t k = 0; k < header.size(); ++k)
            if (header[k] == name)
                return k;
        return std::nullopt;
    };
    const std::array<const char *, 6> names{"gamma", "beta_angle", "energy",
                                            "entropy", "beta_eff", "tvd_min"};
    std::array<std::optional<std::size_t>, 6> idx;
    for (std::size_t k = 0; k < names.size(); ++k) {
        idx[k] = column(names[k]);
        if (!idx[k] && k < 4)
            throw ParseError(std::string("sweep csv: missing column '") + names[k] + "'");
    }

    std::vector<SweepRecord> records;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        const auto cells = split_csv_line(line);

        auto parse = [&](std::size_t col) -> std::optional<double> {
            if (!idx[col])
                return std::nullopt;
            if (*idx[col] >= cells.size())
                throw ParseError("sweep csv line " + std::to_string(line_no) + ": missing '" +
                                 names[col] + "' value");
            const std::string &text = cells[*idx[col]];
            if (text.empty())
                return std::nullopt;
            char *end = nullptr;
            errno = 0;
            const double v = std::strtod(text.c_str(), &end);
            if (end != text.c_str() + text.size() || errno == ERANGE)
                throw ParseError("sweep csv line " + std::to_string(line_no) + ": column '" +
                                 names[col] + "' is not a number: '" + text + "'");
            return v;
        };
        auto required = [&](std::size_t col) {
            auto v = parse(col);
            if (!v)
                throw ParseError("sweep csv line " + std::to_string(line_no) + ": empty '" +
                                 names[col] + "'");
            return *v;
        };

        SweepRecord r;
        r.gamma = required(0);
        r.beta_angle = required(1);
        r.energy_expectation = required(2);
        r.entropy = required(3);
        r.beta_eff = parse(4);
        r.tvd_min = parse(5);
        records.push_back(r);
    }
    return records;
}

std::vector<SweepRecord> read_sweep_csv(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open sweep csv " + path.string());
    return read_sweep_csv(in);
}

void write_thresholds_csv(const std::filesystem::path &path,
                          std::span<const ThresholdPoint> points,
                          std::span<const SweepRecord> records) {
    auto out = open_for_write(path);
    out << kThresholdHeader << '\n';
    for (const auto &pt : points) {
        out << format_double(pt.threshold) << ',';
        if (pt.best_beta_eff && pt.record_index) {
            const auto &r = records[*pt.record_index];
            out << format_double(*pt.best_beta_eff) << ',' << format_double(1.0 / *pt.best_beta_eff)
                << ',' << format_double(r.gamma) << ',' << format_double(r.beta_angle);
        } else {
            out << ",,,";
        }
        out << '\n';
    }
    if (!out)
        throw std::runtime_error("failed writing " + path.string());
}

void write_tradeoff_csv(const std::filesystem::path &path,
                        std::span<const TradeoffPoint> points,
                        std::span<const SweepRecord> records) {
    auto out = open_for_write(path);
    out << kTradeoffHeader << '\n';
    for (const auto &pt : points) {
        const auto &r = records[pt.record_index];
        out << format_double(pt.t_eff) << ',' << format_double(pt.tvd_min) << ','
            << format_double(r.gamma) << ',' << format_double(r.beta_angle) << '\n';
    }
    if (!out)
        throw std::runtime_error("failed writing " + path.string());
}

} // namespace gibbsqaoa
