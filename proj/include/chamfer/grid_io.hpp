#pragma once

// Grid and field I/O.  Binary grids come from PGM images (P2 ASCII or P5
// binary; pixel value 0 marks a seed) or from CSV of integers (0 = seed).
// Distance fields go out as exact CSV or as a PGM rescaled to 0..255 for
// visualization.

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "chamfer/distance_transform.hpp"
#include "chamfer/errors.hpp"

namespace chamfer {

namespace detail {

// Reads the next PGM header token, skipping whitespace and '#' comments.
inline std::string pnm_token(std::istream& in) {
    std::string tok;
    int ch = in.get();
    while (ch != EOF) {
        if (ch == '#') {
            while (ch != EOF && ch != '\n') ch = in.get();
        } else if (std::isspace(ch)) {
            ch = in.get();
        } else {
            break;
        }
    }
    while (ch != EOF && !std::isspace(ch)) {
        tok.push_back(char(ch));
        ch = in.get();
    }
    return tok;
}

inline int pnm_int(std::istream& in, const char* what) {
    const std::string tok = pnm_token(in);
    try {
        std::size_t used = 0;
        const int v = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError(std::string("bad PGM ") + what + ": '" + tok + "'");
    }
}

} // namespace detail

inline BinaryGrid read_pgm(std::istream& in) {
    const std::string magic = detail::pnm_token(in);
    if (magic != "P2" && magic != "P5") throw ParseError("not a PGM file (expected P2 or P5)");
    const int width = detail::pnm_int(in, "width");
    const int height = detail::pnm_int(in, "height");
    const int maxval = detail::pnm_int(in, "maxval");
    if (width < 1 || height < 1) throw ParseError("bad PGM dimensions");
    if (maxval < 1 || maxval > 65535) throw ParseError("bad PGM maxval");

    BinaryGrid g(width, height);
    const std::size_t count = std::size_t(width) * height;
    if (magic == "P2") {
        for (std::size_t i = 0; i < count; ++i) {
            const int v = detail::pnm_int(in, "pixel");
            g.seed[i] = (v == 0) ? 1 : 0;
        }
    } else {
        // Raw pixels follow the single whitespace byte consumed by pnm_int.
        const int bytes = maxval > 255 ? 2 : 1;
        std::vector<char> buf(count * std::size_t(bytes));
        in.read(buf.data(), std::streamsize(buf.size()));
        if (in.gcount() != std::streamsize(buf.size()))
            throw ParseError("truncated P5 pixel data");
        for (std::size_t i = 0; i < count; ++i) {
            int v;
            if (bytes == 1) {
                v = std::uint8_t(buf[i]);
            } else {
                v = (std::uint8_t(buf[2 * i]) << 8) | std::uint8_t(buf[2 * i + 1]);
            }
            g.seed[i] = (v == 0) ? 1 : 0;
        }
    }
    return g;
}

inline BinaryGrid read_csv_grid(std::istream& in) {
    std::vector<std::vector<int>> rows;
    std::string line;
    while (std::getline(in, line)) {
        for (char& ch : line)
            if (ch == ',' || ch == ';' || ch == '\t') ch = ' ';
        std::istringstream row(line);
        std::vector<int> vals;
        int v;
        while (row >> v) vals.push_back(v);
        std::string extra;
        if (row.clear(), row >> extra)
            throw ParseError("non-numeric cell in grid CSV: '" + extra + "'");
        if (!vals.empty()) rows.push_back(std::move(vals));
    }
    if (rows.empty()) throw ParseError("empty grid CSV");
    const std::size_t width = rows.front().size();
    for (const auto& r : rows)
        if (r.size() != width) throw ParseError("ragged rows in grid CSV");

    BinaryGrid g(int(width), int(rows.size()));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < width; ++c)
            g.seed[r * width + c] = (rows[r][c] == 0) ? 1 : 0;
    return g;
}

// Sniffs the format: PGM when the file starts with P2/P5, CSV otherwise.
inline BinaryGrid read_grid_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open grid file '" + path + "'");
    char m0 = 0, m1 = 0;
    in.get(m0);
    in.get(m1);
    in.seekg(0);
    if (m0 == 'P' && (m1 == '2' || m1 == '5')) return read_pgm(in);
    return read_csv_grid(in);
}

inline void write_field_csv(const DistanceField& f, std::ostream& out) {
    char buf[64];
    for (int r = 0; r < f.height; ++r) {
        for (int c = 0; c < f.width; ++c) {
            std::snprintf(buf, sizeof buf, "%.17g", f.at(r, c));
            if (c) out << ',';
            out << buf;
        }
        out << '\n';
    }
}

inline void write_field_csv_file(const DistanceField& f, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path + "'");
    write_field_csv(f, out);
    if (!out) throw IoError("write to '" + path + "' failed");
}

// Lossy visualization: values rescaled linearly so the field maximum maps
// to 255, written as binary P5.
inline void write_field_pgm(const DistanceField& f, std::ostream& out) {
    double maxv = 0.0;
    for (double v : f.values) maxv = std::max(maxv, v);
    out << "P5\n" << f.width << " " << f.height << "\n255\n";
    std::vector<char> row(std::size_t(f.width));
    for (int r = 0; r < f.height; ++r) {
        for (int c = 0; c < f.width; ++c) {
            const double v = maxv > 0.0 ? f.at(r, c) / maxv * 255.0 : 0.0;
            row[std::size_t(c)] = char(std::uint8_t(std::lround(v)));
        }
        out.write(row.data(), std::streamsize(row.size()));
    }
}

inline void write_field_pgm_file(const DistanceField& f, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    write_field_pgm(f, out);
    if (!out) throw IoError("write to '" + path + "' failed");
}

} // namespace chamfer
