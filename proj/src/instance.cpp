#include "mtvrp/instance.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

namespace mtvrp {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

std::optional<std::int64_t> to_int(std::string_view s) {
    std::int64_t v = 0;
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc{} || ptr != end) return std::nullopt;
    return v;
}

bool is_section_keyword(std::string_view s) {
    return s == "NODE_COORD_SECTION" || s == "DEMAND_SECTION" || s == "DEPOT_SECTION" || s == "EOF";
}

struct Line {
    int number;
    std::string_view text;
};

std::vector<Line> split_lines(std::string_view text) {
    std::vector<Line> lines;
    int number = 1;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        lines.push_back({number++, trim(text.substr(start, end - start))});
        start = end + 1;
    }
    return lines;
}

std::string at_line(int line, const std::string& msg) {
    return "line " + std::to_string(line) + ": " + msg;
}

}  // namespace

ParseError::ParseError(Kind kind, int line, const std::string& what)
    : std::runtime_error(line > 0 ? at_line(line, what) : what), kind_(kind), line_(line) {}

int vehicles_from_name(std::string_view name) {
    const auto pos = name.rfind("-k");
    if (pos == std::string_view::npos) return 0;
    auto v = to_int(name.substr(pos + 2));
    return v ? static_cast<int>(*v) : 0;
}

CvrpInstance parse_instance(std::string_view text) {
    using K = ParseError::Kind;
    const auto lines = split_lines(text);

    CvrpInstance inst;
    std::optional<std::int64_t> dimension;
    std::optional<std::int64_t> capacity;
    std::optional<std::string> edge_weight_type;
    bool have_name = false;
    bool have_coords = false;
    bool have_demands = false;
    std::vector<std::optional<Point>> coords;
    std::vector<std::optional<std::int64_t>> demands;

    auto need_dimension = [&](int line) -> std::size_t {
        if (!dimension) throw ParseError(K::missing_section, line, "DIMENSION must precede node sections");
        return static_cast<std::size_t>(*dimension);
    };

    std::size_t i = 0;
    // Reads `id value...` rows until the next keyword; returns the parsed rows.
    auto read_rows = [&](std::size_t width) {
        std::vector<std::pair<Line, std::vector<std::int64_t>>> rows;
        while (i < lines.size()) {
            const auto& ln = lines[i];
            if (ln.text.empty()) {
                ++i;
                continue;
            }
            const auto fields = split_ws(ln.text);
            if (is_section_keyword(fields[0]) || !to_int(fields[0])) break;
            if (fields.size() != width)
                throw ParseError(K::bad_node_line, ln.number,
                                 "expected " + std::to_string(width) + " integers, got '" + std::string(ln.text) + "'");
            std::vector<std::int64_t> values;
            for (auto f : fields) {
                auto v = to_int(f);
                if (!v) throw ParseError(K::bad_node_line, ln.number, "non-integer field '" + std::string(f) + "'");
                values.push_back(*v);
            }
            rows.push_back({ln, std::move(values)});
            ++i;
        }
        return rows;
    };
    auto section_end_line = [&]() { return i < lines.size() ? lines[i].number : lines.back().number; };

    while (i < lines.size()) {
        const auto& ln = lines[i];
        if (ln.text.empty()) {
            ++i;
            continue;
        }
        if (ln.text == "EOF") break;

        if (ln.text == "NODE_COORD_SECTION") {
            const auto n = need_dimension(ln.number);
            ++i;
            auto rows = read_rows(3);
            if (rows.size() != n)
                throw ParseError(K::dimension_mismatch, section_end_line(),
                                 "DIMENSION is " + std::to_string(n) + " but NODE_COORD_SECTION lists " +
                                     std::to_string(rows.size()) + " nodes");
            coords.assign(n, std::nullopt);
            for (const auto& [row_line, v] : rows) {
                if (v[0] < 1 || v[0] > static_cast<std::int64_t>(n) || coords[v[0] - 1])
                    throw ParseError(K::bad_node_line, row_line.number, "node id out of range or repeated");
                coords[v[0] - 1] = Point{v[1], v[2]};
            }
            have_coords = true;
            continue;
        }
        if (ln.text == "DEMAND_SECTION") {
            const auto n = need_dimension(ln.number);
            ++i;
            auto rows = read_rows(2);
            if (rows.size() != n)
                throw ParseError(K::dimension_mismatch, section_end_line(),
                                 "DIMENSION is " + std::to_string(n) + " but DEMAND_SECTION lists " +
                                     std::to_string(rows.size()) + " nodes");
            demands.assign(n, std::nullopt);
            for (const auto& [row_line, v] : rows) {
                if (v[0] < 1 || v[0] > static_cast<std::int64_t>(n) || demands[v[0] - 1])
                    throw ParseError(K::bad_node_line, row_line.number, "node id out of range or repeated");
                if (v[0] == 1 && v[1] != 0)
                    throw ParseError(K::bad_depot, row_line.number, "depot demand must be 0");
                if (v[0] != 1 && (v[1] <= 0 || (capacity && v[1] > *capacity)))
                    throw ParseError(K::bad_demand, row_line.number,
                                     "client demand must be in 1..CAPACITY, got " + std::to_string(v[1]));
                demands[v[0] - 1] = v[1];
            }
            have_demands = true;
            continue;
        }
        if (ln.text == "DEPOT_SECTION") {
            ++i;
            std::vector<std::int64_t> depots;
            int depot_line = ln.number;
            while (i < lines.size()) {
                const auto& d = lines[i];
                if (d.text.empty()) {
                    ++i;
                    continue;
                }
                auto v = to_int(d.text);
                if (!v) break;
                ++i;
                depot_line = d.number;
                if (*v == -1) break;
                depots.push_back(*v);
            }
            if (depots.size() != 1 || depots[0] != 1)
                throw ParseError(K::bad_depot, depot_line, "DEPOT_SECTION must name node 1 only");
            continue;
        }

        const auto colon = ln.text.find(':');
        if (colon == std::string_view::npos)
            throw ParseError(K::malformed_header, ln.number, "expected 'KEY : value', got '" + std::string(ln.text) + "'");
        const auto key = trim(ln.text.substr(0, colon));
        const auto value = trim(ln.text.substr(colon + 1));

        if (key == "NAME") {
            inst.name = std::string(value);
            have_name = true;
        } else if (key == "COMMENT") {
        } else if (key == "TYPE") {
            if (value != "CVRP") throw ParseError(K::malformed_header, ln.number, "TYPE must be CVRP");
        } else if (key == "DIMENSION") {
            dimension = to_int(value);
            if (!dimension || *dimension < 2)
                throw ParseError(K::malformed_header, ln.number, "DIMENSION must be an integer >= 2");
        } else if (key == "CAPACITY") {
            capacity = to_int(value);
            if (!capacity || *capacity <= 0)
                throw ParseError(K::malformed_header, ln.number, "CAPACITY must be a positive integer");
        } else if (key == "EDGE_WEIGHT_TYPE") {
            if (value != "EUC_2D")
                throw ParseError(K::unsupported_edge_weight, ln.number,
                                 "EDGE_WEIGHT_TYPE '" + std::string(value) + "' is not supported (EUC_2D only)");
            edge_weight_type = std::string(value);
        } else {
            throw ParseError(K::malformed_header, ln.number, "unknown header key '" + std::string(key) + "'");
        }
        ++i;
    }

    if (!have_name) throw ParseError(K::missing_section, 0, "missing NAME");
    if (!dimension) throw ParseError(K::missing_section, 0, "missing DIMENSION");
    if (!capacity) throw ParseError(K::missing_section, 0, "missing CAPACITY");
    if (!edge_weight_type) throw ParseError(K::missing_section, 0, "missing EDGE_WEIGHT_TYPE");
    if (!have_coords) throw ParseError(K::missing_section, 0, "missing NODE_COORD_SECTION");
    if (!have_demands) throw ParseError(K::missing_section, 0, "missing DEMAND_SECTION");

    inst.n_nodes = static_cast<int>(*dimension);
    inst.n_clients = inst.n_nodes - 1;
    inst.capacity = *capacity;
    inst.declared_vehicles = vehicles_from_name(inst.name);
    inst.coords.reserve(inst.n_nodes);
    inst.demands.reserve(inst.n_nodes);
    for (int n = 0; n < inst.n_nodes; ++n) {
        inst.coords.push_back(*coords[n]);
        // CAPACITY may follow DEMAND_SECTION in principle; re-check here.
        if (n > 0 && *demands[n] > inst.capacity)
            throw ParseError(K::bad_demand, 0, "client " + std::to_string(n) + " demand exceeds CAPACITY");
        inst.demands.push_back(*demands[n]);
    }
    return inst;
}

CvrpInstance load_instance(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open instance file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_instance(ss.str());
}

namespace {

std::int64_t euc_2d(Point a, Point b) {
    const double dx = static_cast<double>(a.x - b.x);
    const double dy = static_cast<double>(a.y - b.y);
    // nint: floor(x + 0.5), i.e. halves round up
    return static_cast<std::int64_t>(std::floor(std::sqrt(dx * dx + dy * dy) + 0.5));
}

}  // namespace

DistanceMatrix build_distance_matrix(const CvrpInstance& instance) {
    DistanceMatrix dm(instance.n_nodes);
    for (int i = 0; i < instance.n_nodes; ++i)
        for (int j = i + 1; j < instance.n_nodes; ++j) {
            const auto d = euc_2d(instance.coords[i], instance.coords[j]);
            dm.at(i, j) = d;
            dm.at(j, i) = d;
        }
    return dm;
}

DistanceMatrix build_distance_matrix_parallel(const CvrpInstance& instance) {
    const int n = instance.n_nodes;
    DistanceMatrix dm(n);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) dm.at(i, j) = euc_2d(instance.coords[i], instance.coords[j]);
    return dm;
}

std::string dump_instance(const CvrpInstance& instance) {
    std::ostringstream out;
    out << "NAME : " << instance.name << '\n'
        << "TYPE : CVRP\n"
        << "DIMENSION : " << instance.n_nodes << '\n'
        << "EDGE_WEIGHT_TYPE : EUC_2D\n"
        << "CAPACITY : " << instance.capacity << '\n'
        << "NODE_COORD_SECTION\n";
    for (int i = 0; i < instance.n_nodes; ++i)
        out << i + 1 << ' ' << instance.coords[i].x << ' ' << instance.coords[i].y << '\n';
    out << "DEMAND_SECTION\n";
    for (int i = 0; i < instance.n_nodes; ++i) out << i + 1 << ' ' << instance.demands[i] << '\n';
    out << "DEPOT_SECTION\n 1\n -1\nEOF\n";
    return out.str();
}

}  // namespace mtvrp
