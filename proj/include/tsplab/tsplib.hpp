#pragma once

#include <cctype>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "tsplab/common.hpp"
#include "tsplab/instances.hpp"
#include "tsplab/metrics.hpp"

// TSPLIB subset:
//   NAME, TYPE: TSP, DIMENSION, EDGE_WEIGHT_TYPE in {EXPLICIT, EUC_2D, MAN_2D},
//   EDGE_WEIGHT_FORMAT: FULL_MATRIX (explicit only), NODE_COORD_SECTION with
//   integer coordinates, EDGE_WEIGHT_SECTION with scaled integers.
//   "COMMENT: SCALE=<int>" and "COMMENT: LP=<int>" carry the scale and p.
// Graphic instances are written as their explicit hop matrix.

namespace tsplab {

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

inline std::int64_t parse_int(std::string_view token, const std::string& what) {
    std::int64_t value = 0;
    const auto* end = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(token.data(), end, value);
    if (ec != std::errc() || ptr != end) {
        throw Error(ErrorCode::Parse, what + ": expected an integer, got '" + std::string(token) + "'");
    }
    return value;
}

inline std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

}  // namespace detail

inline std::string write_tsplib(const Instance& instance) {
    std::ostringstream out;
    out << "NAME: " << instance.name() << "\n";
    out << "TYPE: TSP\n";
    out << "COMMENT: SCALE=" << instance.scale() << "\n";
    const auto p = instance.lp_exponent();
    if (p) out << "COMMENT: LP=" << *p << "\n";
    out << "DIMENSION: " << instance.size() << "\n";
    if (p) {
        out << "EDGE_WEIGHT_TYPE: " << (*p == 1 ? "MAN_2D" : "EUC_2D") << "\n";
        out << "NODE_COORD_SECTION\n";
        const auto& pts = instance.coords();
        for (std::size_t i = 0; i < pts.size(); ++i) out << i + 1 << " " << pts[i].x << " " << pts[i].y << "\n";
    } else {
        out << "EDGE_WEIGHT_TYPE: EXPLICIT\n";
        out << "EDGE_WEIGHT_FORMAT: FULL_MATRIX\n";
        out << "EDGE_WEIGHT_SECTION\n";
        const std::size_t n = instance.size();
        for (CityId i = 0; i < n; ++i) {
            for (CityId j = 0; j < n; ++j) out << (j ? " " : "") << instance.key(i, j).value;
            out << "\n";
        }
    }
    out << "EOF\n";
    return out.str();
}

inline Instance read_tsplib(const std::string& text) {
    std::map<std::string, std::string> header;
    std::int64_t scale = 1;
    std::optional<int> lp;
    std::optional<std::vector<std::string_view>> coord_tokens;
    std::optional<std::vector<std::string_view>> weight_tokens;
    std::vector<std::string_view>* section = nullptr;
    bool saw_eof = false;

    std::string_view rest(text);
    while (!rest.empty() && !saw_eof) {
        const auto nl = rest.find('\n');
        const std::string_view raw = rest.substr(0, nl);
        rest = nl == std::string_view::npos ? std::string_view{} : rest.substr(nl + 1);
        const std::string_view line = detail::trim(raw);
        if (line.empty()) continue;

        if (line == "EOF") {
            saw_eof = true;
            break;
        }
        if (line == "NODE_COORD_SECTION") {
            coord_tokens.emplace();
            section = &*coord_tokens;
            continue;
        }
        if (line == "EDGE_WEIGHT_SECTION") {
            weight_tokens.emplace();
            section = &*weight_tokens;
            continue;
        }

        std::string key;
        std::string value;
        if (section != nullptr && (std::isdigit(static_cast<unsigned char>(line[0])) || line[0] == '-')) {
            for (auto tok : detail::split_ws(line)) section->push_back(tok);
            continue;
        }
        for (std::string_view kw : {"NAME", "TYPE", "COMMENT", "DIMENSION", "EDGE_WEIGHT_TYPE", "EDGE_WEIGHT_FORMAT"}) {
            if (!line.starts_with(kw)) continue;
            std::string_view tail = line.substr(kw.size());
            if (!tail.empty() && tail[0] != ':' && tail[0] != ' ' && tail[0] != '\t') continue;
            tail = detail::trim(tail);
            if (tail.starts_with(':')) tail = detail::trim(tail.substr(1));
            key = std::string(kw);
            value = std::string(tail);
            break;
        }
        if (key.empty()) {
            throw Error(ErrorCode::Parse, "unsupported TSPLIB line or section: '" + std::string(line) + "'");
        }
        section = nullptr;

        if (key == "COMMENT") {
            if (value.starts_with("SCALE=")) {
                scale = detail::parse_int(std::string_view(value).substr(6), "COMMENT SCALE");
            } else if (value.starts_with("LP=")) {
                lp = static_cast<int>(detail::parse_int(std::string_view(value).substr(3), "COMMENT LP"));
            }
            continue;
        }
        header[key] = value;
    }

    auto require = [&](const std::string& key) -> const std::string& {
        const auto it = header.find(key);
        if (it == header.end()) throw Error(ErrorCode::Parse, "missing " + key);
        return it->second;
    };
    if (require("TYPE") != "TSP") throw Error(ErrorCode::Parse, "unsupported TYPE '" + header["TYPE"] + "'");
    const std::int64_t dim = detail::parse_int(require("DIMENSION"), "DIMENSION");
    if (dim < 1) throw Error(ErrorCode::Parse, "DIMENSION must be positive");
    const auto n = static_cast<std::size_t>(dim);
    const std::string& weight_type = require("EDGE_WEIGHT_TYPE");
    const std::string name = header.count("NAME") ? header["NAME"] : std::string("unnamed");

    if (weight_type == "EXPLICIT") {
        if (require("EDGE_WEIGHT_FORMAT") != "FULL_MATRIX") {
            throw Error(ErrorCode::Parse, "unsupported EDGE_WEIGHT_FORMAT '" + header["EDGE_WEIGHT_FORMAT"] + "'");
        }
        if (!weight_tokens) throw Error(ErrorCode::Parse, "missing EDGE_WEIGHT_SECTION");
        if (weight_tokens->size() != n * n) {
            throw Error(ErrorCode::Parse, "EDGE_WEIGHT_SECTION has " + std::to_string(weight_tokens->size()) +
                                              " entries, expected " + std::to_string(n * n));
        }
        if (!saw_eof) throw Error(ErrorCode::Parse, "missing EOF");
        DistanceMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) m(i, j) = detail::parse_int((*weight_tokens)[i * n + j], "EDGE_WEIGHT_SECTION");
        }
        try {
            return Instance::explicit_matrix(name, std::move(m), scale);
        } catch (const Error& e) {
            throw Error(ErrorCode::Parse, std::string("EDGE_WEIGHT_SECTION: ") + e.what());
        }
    }

    int p = 0;
    if (weight_type == "MAN_2D") {
        p = 1;
        if (lp && *lp != 1) throw Error(ErrorCode::Parse, "MAN_2D conflicts with COMMENT LP=" + std::to_string(*lp));
    } else if (weight_type == "EUC_2D") {
        p = lp.value_or(2);
        if (p < 2) throw Error(ErrorCode::Parse, "EUC_2D requires LP >= 2");
    } else {
        throw Error(ErrorCode::Parse, "unsupported EDGE_WEIGHT_TYPE '" + weight_type + "'");
    }
    if (!coord_tokens) throw Error(ErrorCode::Parse, "missing NODE_COORD_SECTION");
    if (coord_tokens->size() != 3 * n) {
        throw Error(ErrorCode::Parse, "NODE_COORD_SECTION has " + std::to_string(coord_tokens->size() / 3) +
                                          " complete rows, expected " + std::to_string(n));
    }
    if (!saw_eof) throw Error(ErrorCode::Parse, "missing EOF");
    std::vector<GridPoint> coords(n);
    std::vector<bool> seen(n, false);
    for (std::size_t row = 0; row < n; ++row) {
        const std::int64_t id = detail::parse_int((*coord_tokens)[3 * row], "NODE_COORD_SECTION id");
        if (id < 1 || id > dim || seen[static_cast<std::size_t>(id - 1)]) {
            throw Error(ErrorCode::Parse, "NODE_COORD_SECTION: bad or repeated node id " + std::to_string(id));
        }
        seen[static_cast<std::size_t>(id - 1)] = true;
        coords[static_cast<std::size_t>(id - 1)] = {
            detail::parse_int((*coord_tokens)[3 * row + 1], "NODE_COORD_SECTION x"),
            detail::parse_int((*coord_tokens)[3 * row + 2], "NODE_COORD_SECTION y")};
    }
    return Instance::lp(name, std::move(coords), p, scale);
}

inline std::string write_certificate(const Certificate& cert) {
    std::ostringstream out;
    out << "FAMILY " << family_tag(cert.family) << " " << cert.param << " " << cert.expected_length << "\n";
    for (const auto& e : cert.edges) out << e.u << " " << e.v << "\n";
    return out.str();
}

inline Certificate read_certificate(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    Certificate cert;
    bool have_header = false;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto tokens = detail::split_ws(line);
        if (tokens.empty()) continue;
        const std::string where = "certificate line " + std::to_string(line_no);
        if (!have_header) {
            if (tokens.size() != 4 || tokens[0] != "FAMILY") {
                throw Error(ErrorCode::Parse, where + ": expected 'FAMILY <tag> <param> <expected_length>'");
            }
            cert.family = parse_family(std::string(tokens[1]));
            cert.param = detail::parse_int(tokens[2], where);
            cert.expected_length = detail::parse_int(tokens[3], where);
            have_header = true;
            continue;
        }
        if (tokens.size() != 2) throw Error(ErrorCode::Parse, where + ": expected 'u v'");
        const std::int64_t u = detail::parse_int(tokens[0], where);
        const std::int64_t v = detail::parse_int(tokens[1], where);
        if (u < 0 || v < 0) throw Error(ErrorCode::Parse, where + ": negative city id");
        cert.edges.push_back({static_cast<CityId>(u), static_cast<CityId>(v)});
    }
    if (!have_header) throw Error(ErrorCode::Parse, "certificate is missing its FAMILY line");
    return cert;
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::Io, "cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw Error(ErrorCode::Io, "write to '" + path + "' failed");
}

}  // namespace tsplab
