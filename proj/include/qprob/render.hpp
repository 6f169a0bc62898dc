// Copyright 2026 The qprob Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file render.hpp
 * Deterministic table rendering: aligned text, CSV and JSON.
 *
 * Text uses fixed-point decimals at the requested precision. CSV and JSON
 * write the shortest representation that parses back to the identical
 * double, so re-reading them reproduces the in-memory values exactly.
 */

#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "errors.hpp"

namespace qprob {

/// A margin cell: a value, optionally annotated with a second ("net") value,
/// rendered as "gross → net".
struct Margin {
    double value;
    std::optional<double> net;
};

struct RenderedTable {
    std::string caption;
    std::string corner; ///< header of the row-label column
    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;
    std::vector<double> cells; ///< row-major, rows x columns
    std::string row_margin_title;
    std::vector<Margin> row_margins; ///< empty, or one per row
    std::string col_margin_title;
    std::vector<Margin> col_margins; ///< empty, or one per column
    std::vector<std::string> notes;
    bool scientific = false; ///< text cells as %e (residual tables)

    double at(std::size_t r, std::size_t c) const { return cells.at(r * col_labels.size() + c); }

    void check() const {
        if (cells.size() != row_labels.size() * col_labels.size()) {
            throw StructuralError("table '" + caption + "': cell count != rows x columns");
        }
        if (!row_margins.empty() && row_margins.size() != row_labels.size()) {
            throw StructuralError("table '" + caption + "': one row margin per row");
        }
        if (!col_margins.empty() && col_margins.size() != col_labels.size()) {
            throw StructuralError("table '" + caption + "': one column margin per column");
        }
    }
};

struct Report {
    std::string title;
    std::vector<RenderedTable> tables;
    std::vector<std::string> notes;
};

enum class Format { text, csv, json };

namespace detail {

/// Code points in a UTF-8 string (display width for our labels).
inline std::size_t display_width(const std::string &s) {
    std::size_t n = 0;
    for (unsigned char c : s) n += (c & 0xC0) != 0x80;
    return n;
}

inline std::string fixed(double v, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", precision, v);
    std::string s(buf);
    // "-0.000" and friends print as zero
    if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
    return s;
}

inline std::string scientific(double v, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", std::max(precision - 3, 1), v);
    return buf;
}

inline std::string exact(double v) {
    std::array<char, 64> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

inline std::string margin_text(const Margin &m, int precision) {
    return m.net ? fixed(m.value, precision) + " → " + fixed(*m.net, precision)
                 : fixed(m.value, precision);
}

inline std::string margin_title(const std::string &title, const std::vector<Margin> &ms) {
    const bool annotated = std::any_of(ms.begin(), ms.end(), [](const Margin &m) { return m.net; });
    return annotated ? title + ": gross → net" : title;
}

inline std::string pad_left(const std::string &s, std::size_t w) {
    const auto d = display_width(s);
    return d >= w ? s : std::string(w - d, ' ') + s;
}
inline std::string pad_right(const std::string &s, std::size_t w) {
    const auto d = display_width(s);
    return d >= w ? s : s + std::string(w - d, ' ');
}

inline std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline void render_text(std::ostringstream &out, const RenderedTable &t, int precision) {
    const std::size_t ncols = t.col_labels.size();
    const bool has_rm = !t.row_margins.empty();
    const bool has_cm = !t.col_margins.empty();

    std::vector<std::vector<std::string>> grid;
    std::vector<std::string> header{t.corner};
    header.insert(header.end(), t.col_labels.begin(), t.col_labels.end());
    if (has_rm) header.push_back(margin_title(t.row_margin_title, t.row_margins));
    grid.push_back(header);
    for (std::size_t r = 0; r < t.row_labels.size(); ++r) {
        std::vector<std::string> row{t.row_labels[r]};
        for (std::size_t c = 0; c < ncols; ++c) {
            const double v = t.at(r, c);
            row.push_back(t.scientific ? scientific(v, precision) : fixed(v, precision));
        }
        if (has_rm) row.push_back(margin_text(t.row_margins[r], precision));
        grid.push_back(std::move(row));
    }
    if (has_cm) {
        std::vector<std::string> row{margin_title(t.col_margin_title, t.col_margins)};
        for (const auto &m : t.col_margins) row.push_back(margin_text(m, precision));
        if (has_rm) row.emplace_back();
        grid.push_back(std::move(row));
    }

    std::vector<std::size_t> width(header.size(), 0);
    for (const auto &row : grid) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            width[c] = std::max(width[c], display_width(row[c]));
        }
    }

    if (!t.caption.empty()) out << t.caption << '\n';
    for (std::size_t r = 0; r < grid.size(); ++r) {
        std::string line;
        for (std::size_t c = 0; c < grid[r].size(); ++c) {
            if (c > 0) line += "  ";
            // labels and headers left-aligned, numbers right-aligned
            const bool left = c == 0 || r == 0;
            line += left ? pad_right(grid[r][c], width[c]) : pad_left(grid[r][c], width[c]);
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        out << line << '\n';
    }
    for (const auto &n : t.notes) out << "note: " << n << '\n';
}

inline void render_csv(std::ostringstream &out, const RenderedTable &t) {
    const bool has_rm = !t.row_margins.empty();
    if (!t.caption.empty()) out << "# " << t.caption << '\n';
    out << csv_field(t.corner);
    for (const auto &c : t.col_labels) out << ',' << csv_field(c);
    if (has_rm) {
        out << ',' << csv_field(t.row_margin_title + " gross") << ','
            << csv_field(t.row_margin_title + " net");
    }
    out << '\n';
    for (std::size_t r = 0; r < t.row_labels.size(); ++r) {
        out << csv_field(t.row_labels[r]);
        for (std::size_t c = 0; c < t.col_labels.size(); ++c) out << ',' << exact(t.at(r, c));
        if (has_rm) {
            const auto &m = t.row_margins[r];
            out << ',' << exact(m.value) << ',' << (m.net ? exact(*m.net) : "");
        }
        out << '\n';
    }
    if (!t.col_margins.empty()) {
        out << csv_field(t.col_margin_title + " gross");
        for (const auto &m : t.col_margins) out << ',' << exact(m.value);
        if (has_rm) out << ",,";
        out << '\n';
        out << csv_field(t.col_margin_title + " net");
        for (const auto &m : t.col_margins) out << ',' << (m.net ? exact(*m.net) : "");
        if (has_rm) out << ",,";
        out << '\n';
    }
    for (const auto &n : t.notes) out << "# note: " << n << '\n';
}

inline nlohmann::json margins_json(const std::vector<Margin> &ms) {
    auto arr = nlohmann::json::array();
    for (const auto &m : ms) {
        nlohmann::json j{{"gross", m.value}};
        if (m.net) j["net"] = *m.net;
        arr.push_back(std::move(j));
    }
    return arr;
}

inline nlohmann::json table_json(const RenderedTable &t) {
    nlohmann::json j;
    j["caption"] = t.caption;
    j["corner"] = t.corner;
    j["rows"] = t.row_labels;
    j["columns"] = t.col_labels;
    auto cells = nlohmann::json::array();
    for (std::size_t r = 0; r < t.row_labels.size(); ++r) {
        auto row = nlohmann::json::array();
        for (std::size_t c = 0; c < t.col_labels.size(); ++c) row.push_back(t.at(r, c));
        cells.push_back(std::move(row));
    }
    j["cells"] = std::move(cells);
    if (!t.row_margins.empty()) {
        j["row_margin_title"] = t.row_margin_title;
        j["row_margins"] = margins_json(t.row_margins);
    }
    if (!t.col_margins.empty()) {
        j["col_margin_title"] = t.col_margin_title;
        j["col_margins"] = margins_json(t.col_margins);
    }
    j["notes"] = t.notes;
    return j;
}

} // namespace detail

inline std::string render(const Report &report, Format format, int precision = 6) {
    for (const auto &t : report.tables) t.check();
    std::ostringstream out;
    switch (format) {
    case Format::text:
        if (!report.title.empty()) out << report.title << "\n\n";
        for (std::size_t i = 0; i < report.tables.size(); ++i) {
            if (i > 0) out << '\n';
            detail::render_text(out, report.tables[i], precision);
        }
        if (!report.notes.empty() && !report.tables.empty()) out << '\n';
        for (const auto &n : report.notes) out << n << '\n';
        break;
    case Format::csv:
        if (!report.title.empty()) out << "# " << report.title << '\n';
        for (std::size_t i = 0; i < report.tables.size(); ++i) {
            if (i > 0) out << '\n';
            detail::render_csv(out, report.tables[i]);
        }
        for (const auto &n : report.notes) out << "# " << n << '\n';
        break;
    case Format::json: {
        nlohmann::json j;
        j["title"] = report.title;
        j["tables"] = nlohmann::json::array();
        for (const auto &t : report.tables) j["tables"].push_back(detail::table_json(t));
        j["notes"] = report.notes;
        out << j.dump(2) << '\n';
        break;
    }
    }
    return out.str();
}

inline std::string render(const RenderedTable &table, Format format, int precision = 6) {
    return render(Report{{}, {table}, {}}, format, precision);
}

} // namespace qprob
