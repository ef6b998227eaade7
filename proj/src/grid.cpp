#include "pathlab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <charconv>
#include <map>
#include <sstream>

namespace pathlab {

std::string to_string(Neighborhood n) {
    return n == Neighborhood::Four ? "four" : "eight";
}

Neighborhood neighborhood_from_string(std::string_view text) {
    if (text == "four" || text == "4") return Neighborhood::Four;
    if (text == "eight" || text == "8") return Neighborhood::Eight;
    throw Error(Errc::invalid_config, "neighborhood must be 'four' or 'eight'");
}

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        if (end == text.size()) break;
        pos = end + 1;
    }
    // Drop trailing blank lines so files with or without a final newline
    // parse the same way.
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    return lines;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (pos < line.size()) {
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
        std::size_t end = pos;
        while (end < line.size() && line[end] != ' ' && line[end] != '\t') ++end;
        if (end > pos) fields.push_back(line.substr(pos, end - pos));
        pos = end;
    }
    return fields;
}

std::size_t parse_size_field(std::string_view field, Errc errc, const char* what) {
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
        throw Error(errc, std::string("bad ") + what + ": '" + std::string(field) + "'");
    }
    return value;
}

double parse_double_field(std::string_view field, Errc errc, const char* what) {
    try {
        std::size_t used = 0;
        const double value = std::stod(std::string(field), &used);
        if (used != field.size()) throw std::invalid_argument(std::string(field));
        return value;
    } catch (const std::exception&) {
        throw Error(errc, std::string("bad ") + what + ": '" + std::string(field) + "'");
    }
}

} // namespace

GridMap parse_map(std::string_view text, const MapOptions& opts) {
    const auto lines = split_lines(text);
    if (lines.size() < 4) throw Error(Errc::malformed_header, "map header truncated");

    const auto type_fields = split_fields(lines[0]);
    if (type_fields.size() != 2 || type_fields[0] != "type" || type_fields[1] != "octile") {
        throw Error(Errc::malformed_header, "expected 'type octile'");
    }

    // height/width appear in either order in the wild.
    std::size_t width = 0;
    std::size_t height = 0;
    bool have_w = false;
    bool have_h = false;
    for (std::size_t i = 1; i <= 2; ++i) {
        const auto fields = split_fields(lines[i]);
        if (fields.size() != 2) throw Error(Errc::malformed_header, "bad map dimension line");
        if (fields[0] == "height" && !have_h) {
            height = parse_size_field(fields[1], Errc::malformed_header, "height");
            have_h = true;
        } else if (fields[0] == "width" && !have_w) {
            width = parse_size_field(fields[1], Errc::malformed_header, "width");
            have_w = true;
        } else {
            throw Error(Errc::malformed_header, "expected height/width lines");
        }
    }
    if (!have_w || !have_h) throw Error(Errc::malformed_header, "missing width or height");
    if (split_fields(lines[3]).size() != 1 || split_fields(lines[3])[0] != "map") {
        throw Error(Errc::malformed_header, "expected 'map' line");
    }
    if (lines.size() != 4 + height) {
        throw Error(Errc::row_length_mismatch,
                    "expected " + std::to_string(height) + " rows, got " +
                        std::to_string(lines.size() - 4));
    }

    GridMap m;
    m.width = width;
    m.height = height;
    m.neighborhood = opts.neighborhood;
    m.passable.assign(width * height, 0);

    for (std::size_t y = 0; y < height; ++y) {
        const std::string_view row = lines[4 + y];
        if (row.size() != width) {
            throw Error(Errc::row_length_mismatch,
                        "row " + std::to_string(y) + " has length " +
                            std::to_string(row.size()) + ", expected " + std::to_string(width));
        }
        for (std::size_t x = 0; x < width; ++x) {
            bool passable = false;
            switch (row[x]) {
            case '.':
            case 'G':
                passable = true;
                break;
            case 'S':
                passable = opts.swamp_passable;
                break;
            case '@':
            case 'O':
            case 'T':
            case 'W':
                passable = false;
                break;
            default:
                throw Error(Errc::unknown_glyph, std::string("unknown glyph '") + row[x] +
                                                     "' at (" + std::to_string(x) + "," +
                                                     std::to_string(y) + ")");
            }
            m.passable[y * width + x] = passable ? 1 : 0;
        }
    }
    return m;
}

std::string serialize_map(const GridMap& m) {
    std::string out = "type octile\nheight " + std::to_string(m.height) + "\nwidth " +
                      std::to_string(m.width) + "\nmap\n";
    out.reserve(out.size() + (m.width + 1) * m.height);
    for (std::size_t y = 0; y < m.height; ++y) {
        for (std::size_t x = 0; x < m.width; ++x) {
            out += m.passable[y * m.width + x] ? '.' : '@';
        }
        out += '\n';
    }
    return out;
}

GridGraph grid_to_graph(const GridMap& m) {
    GridGraph gg;
    gg.cell_to_node.assign(m.width * m.height, kNoNode);

    for (std::size_t y = 0; y < m.height; ++y) {
        for (std::size_t x = 0; x < m.width; ++x) {
            if (!m.passable[y * m.width + x]) continue;
            gg.cell_to_node[y * m.width + x] = static_cast<NodeId>(gg.node_to_cell.size());
            gg.node_to_cell.push_back(
                {static_cast<std::int32_t>(x), static_cast<std::int32_t>(y)});
        }
    }

    std::vector<Edge> edges;
    auto node = [&](std::int64_t x, std::int64_t y) -> NodeId {
        if (!m.is_passable(x, y)) return kNoNode;
        return gg.cell_to_node[static_cast<std::size_t>(y) * m.width +
                               static_cast<std::size_t>(x)];
    };

    for (std::int64_t y = 0; y < static_cast<std::int64_t>(m.height); ++y) {
        for (std::int64_t x = 0; x < static_cast<std::int64_t>(m.width); ++x) {
            const NodeId from = node(x, y);
            if (from == kNoNode) continue;
            // Each undirected edge is emitted from its lexicographically
            // first cell: right, down, and for Eight the two down diagonals.
            if (const NodeId right = node(x + 1, y); right != kNoNode) {
                edges.push_back({from, right, 1.0});
            }
            if (const NodeId down = node(x, y + 1); down != kNoNode) {
                edges.push_back({from, down, 1.0});
            }
            if (m.neighborhood == Neighborhood::Eight) {
                // Diagonals only when both orthogonal cells are open.
                if (const NodeId dr = node(x + 1, y + 1);
                    dr != kNoNode && m.is_passable(x + 1, y) && m.is_passable(x, y + 1)) {
                    edges.push_back({from, dr, kSqrt2});
                }
                if (const NodeId dl = node(x - 1, y + 1);
                    dl != kNoNode && m.is_passable(x - 1, y) && m.is_passable(x, y + 1)) {
                    edges.push_back({from, dl, kSqrt2});
                }
            }
        }
    }

    gg.graph = WeightedGraph(gg.node_to_cell.size(), edges);
    return gg;
}

Scenario parse_scenario(std::string_view text) {
    const auto lines = split_lines(text);
    if (lines.empty()) throw Error(Errc::malformed_header, "empty scenario file");

    const auto header = split_fields(lines[0]);
    if (header.size() != 2 || header[0] != "version" ||
        !(header[1] == "1" || header[1] == "1.0")) {
        throw Error(Errc::malformed_header, "expected 'version 1' scenario header");
    }

    Scenario s;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const auto f = split_fields(lines[i]);
        if (f.size() != 9) {
            throw Error(Errc::malformed_entry,
                        "scenario line " + std::to_string(i) + " has " +
                            std::to_string(f.size()) + " fields, expected 9");
        }
        ScenarioEntry e;
        e.bucket = static_cast<int>(parse_size_field(f[0], Errc::malformed_entry, "bucket"));
        e.map_name = std::string(f[1]);
        e.width = parse_size_field(f[2], Errc::malformed_entry, "width");
        e.height = parse_size_field(f[3], Errc::malformed_entry, "height");
        e.start.x = static_cast<std::int32_t>(
            parse_size_field(f[4], Errc::malformed_entry, "start x"));
        e.start.y = static_cast<std::int32_t>(
            parse_size_field(f[5], Errc::malformed_entry, "start y"));
        e.goal.x = static_cast<std::int32_t>(
            parse_size_field(f[6], Errc::malformed_entry, "goal x"));
        e.goal.y = static_cast<std::int32_t>(
            parse_size_field(f[7], Errc::malformed_entry, "goal y"));
        e.optimal_cost = parse_double_field(f[8], Errc::malformed_entry, "optimal cost");
        s.entries.push_back(std::move(e));
    }
    return s;
}

std::vector<ScenarioMismatch> validate_scenario(const GridMap& m, const GridGraph& gg,
                                                const Scenario& s, std::size_t sample_limit,
                                                double tolerance) {
    std::vector<ScenarioMismatch> mismatches;
    const std::size_t count =
        sample_limit == 0 ? s.entries.size() : std::min(sample_limit, s.entries.size());

    // One tree serves every entry that shares a start cell.
    std::map<NodeId, ShortestPathTree> trees;
    ShortestPathEngine engine;

    for (std::size_t i = 0; i < count; ++i) {
        const ScenarioEntry& e = s.entries[i];
        const NodeId start = gg.node_at(e.start.x, e.start.y, m);
        const NodeId goal = gg.node_at(e.goal.x, e.goal.y, m);
        if (start == kNoNode || goal == kNoNode) {
            mismatches.push_back({i, e.optimal_cost, std::nan("")});
            continue;
        }
        auto it = trees.find(start);
        if (it == trees.end()) {
            it = trees.emplace(start, ShortestPathTree{}).first;
            engine.compute(gg.graph, start, it->second);
        }
        const double computed = it->second.dist[goal];
        if (!(std::abs(computed - e.optimal_cost) <= tolerance)) {
            mismatches.push_back({i, e.optimal_cost, computed});
        }
    }
    return mismatches;
}

} // namespace pathlab
