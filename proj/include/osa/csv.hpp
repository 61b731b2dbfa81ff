#pragma once

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "osa/errors.hpp"
#include "osa/price_series.hpp"

namespace osa {

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(trim(field));
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

inline std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

inline double parse_price(const std::string& field, int line_no) {
    try {
        std::size_t used = 0;
        const double v = std::stod(field, &used);
        if (used != field.size()) throw std::invalid_argument("trailing garbage");
        if (!std::isfinite(v)) throw DataError("line " + std::to_string(line_no) + ": non-finite price");
        if (v <= 0.0) throw DataError("line " + std::to_string(line_no) + ": nonpositive price");
        return v;
    } catch (const DataError&) {
        throw;
    } catch (const std::exception&) {
        throw DataError("line " + std::to_string(line_no) + ": unparsable price '" + field + "'");
    }
}

inline void check_iso_date(const std::string& d, int line_no) {
    const bool ok = d.size() == 10 && d[4] == '-' && d[7] == '-' &&
                    std::all_of(d.begin(), d.end(), [](char c) {
                        return c == '-' || std::isdigit(static_cast<unsigned char>(c));
                    });
    if (!ok) throw DataError("line " + std::to_string(line_no) + ": bad ISO date '" + d + "'");
}

}  // namespace detail

// Price CSV ingestion. Two layouts, told apart by the header:
//   long  `date,ticker,close` one observation per row
//   wide  `date,<ticker1>,<ticker2>,...` one date per row
// Output is aligned on the intersection of dates over all assets; rows with
// any missing asset are dropped, never interpolated. Asset order follows
// first appearance (long) or the header (wide).
inline PriceSeries load_prices_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open price file: " + path);

    std::string line;
    if (!std::getline(in, line)) throw DataError(path + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> header = detail::split_csv_line(line);
    if (header.empty() || detail::lower(header[0]) != "date")
        throw DataError(path + ": unrecognized header, expected 'date,...'");

    const bool long_format = header.size() == 3 && detail::lower(header[1]) == "ticker" &&
                             detail::lower(header[2]) == "close";

    PriceSeries series;
    int line_no = 1;

    if (long_format) {
        // ticker -> date -> price; tickers come out lexicographic, so the
        // result is independent of row order
        std::map<std::string, std::map<std::string, double>> by_asset;
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (detail::trim(line).empty()) continue;
            const std::vector<std::string> f = detail::split_csv_line(line);
            if (f.size() != 3)
                throw DataError("line " + std::to_string(line_no) + ": expected 3 fields, got " +
                                std::to_string(f.size()));
            detail::check_iso_date(f[0], line_no);
            if (!by_asset[f[1]].emplace(f[0], detail::parse_price(f[2], line_no)).second)
                throw DataError("line " + std::to_string(line_no) + ": duplicate observation for " +
                                f[1] + " on " + f[0]);
        }
        const int n = static_cast<int>(by_asset.size());
        std::map<std::string, int> date_count;
        for (const auto& [ticker, dates] : by_asset) {
            series.assets.push_back(ticker);
            for (const auto& [date, price] : dates) ++date_count[date];
        }
        for (const auto& [date, count] : date_count) {
            if (count != n) continue;   // incomplete date, drop
            series.dates.push_back(date);
            Vec row;
            row.reserve(n);
            for (const auto& [ticker, dates] : by_asset) row.push_back(dates.at(date));
            series.rows.push_back(std::move(row));
        }
    } else {
        series.assets.assign(header.begin() + 1, header.end());
        if (series.assets.empty()) throw DataError(path + ": wide header lists no tickers");
        std::map<std::string, Vec> by_date;
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (detail::trim(line).empty()) continue;
            const std::vector<std::string> f = detail::split_csv_line(line);
            if (f.size() != header.size())
                throw DataError("line " + std::to_string(line_no) + ": expected " +
                                std::to_string(header.size()) + " fields, got " +
                                std::to_string(f.size()));
            detail::check_iso_date(f[0], line_no);
            const bool missing = std::any_of(f.begin() + 1, f.end(),
                                             [](const std::string& s) { return s.empty(); });
            if (missing) continue;   // incomplete row, drop
            Vec row(series.assets.size());
            for (std::size_t i = 1; i < f.size(); ++i) row[i - 1] = detail::parse_price(f[i], line_no);
            if (!by_date.emplace(f[0], std::move(row)).second)
                throw DataError("line " + std::to_string(line_no) + ": duplicate date " + f[0]);
        }
        for (auto& [date, row] : by_date) {
            series.dates.push_back(date);
            series.rows.push_back(std::move(row));
        }
    }

    if (series.rows.empty()) throw DataError(path + ": no complete dates after alignment");
    series.validate();
    return series;
}

inline std::string format_full(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline void write_prices_csv(const PriceSeries& series, std::ostream& out) {
    out << "date";
    for (const std::string& a : series.assets) out << ',' << a;
    out << '\n';
    for (int t = 0; t < series.n_rows(); ++t) {
        out << series.dates[t];
        for (double p : series.rows[t]) out << ',' << format_full(p);
        out << '\n';
    }
}

inline void write_prices_csv(const PriceSeries& series, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write price file: " + path);
    write_prices_csv(series, out);
    if (!out) throw DataError("write failed: " + path);
}

// Reads the `value` column of a per-round CSV (the layout the report writer
// emits), for feeding a stored portfolio value series back into the
// statistics and backtest commands.
inline Vec load_value_series_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open value file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw DataError(path + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::vector<std::string> header = detail::split_csv_line(line);
    std::size_t col = header.size();
    for (std::size_t i = 0; i < header.size(); ++i)
        if (detail::lower(header[i]) == "value") col = i;
    if (col == header.size()) throw DataError(path + ": no 'value' column in header");

    Vec values;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (detail::trim(line).empty()) continue;
        const std::vector<std::string> f = detail::split_csv_line(line);
        if (f.size() <= col)
            throw DataError("line " + std::to_string(line_no) + ": missing value column");
        try {
            values.push_back(std::stod(f[col]));
        } catch (const std::exception&) {
            throw DataError("line " + std::to_string(line_no) + ": unparsable value '" + f[col] + "'");
        }
    }
    if (values.empty()) throw DataError(path + ": no values");
    return values;
}

}  // namespace osa
