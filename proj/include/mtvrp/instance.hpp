#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mtvrp {

struct Point {
    std::int64_t x = 0;
    std::int64_t y = 0;

    friend bool operator==(const Point&, const Point&) = default;
    friend auto operator<=>(const Point&, const Point&) = default;
};

/// One CVRP instance in internal indexing: depot is node 0, clients are 1..n_clients.
struct CvrpInstance {
    std::string name;
    int n_nodes = 0;
    int n_clients = 0;
    std::int64_t capacity = 0;
    std::vector<Point> coords;
    std::vector<std::int64_t> demands;
    int declared_vehicles = 0;
};

/// Thrown by parse_instance. `line` is 1-based; 0 when the problem is not tied to one line
/// (a missing section, for instance).
class ParseError : public std::runtime_error {
public:
    enum class Kind {
        malformed_header,
        missing_section,
        dimension_mismatch,
        unsupported_edge_weight,
        bad_depot,
        bad_demand,
        bad_node_line,
    };

    ParseError(Kind kind, int line, const std::string& what);

    Kind kind() const noexcept { return kind_; }
    int line() const noexcept { return line_; }

private:
    Kind kind_;
    int line_;
};

/// Symmetric integer distance matrix, stored row-major.
class DistanceMatrix {
public:
    DistanceMatrix() = default;
    explicit DistanceMatrix(int size) : size_(size), d_(static_cast<std::size_t>(size) * size, 0) {}

    int size() const noexcept { return size_; }

    std::int64_t operator()(int i, int j) const noexcept {
        return d_[static_cast<std::size_t>(i) * size_ + j];
    }
    std::int64_t& at(int i, int j) noexcept { return d_[static_cast<std::size_t>(i) * size_ + j]; }

private:
    int size_ = 0;
    std::vector<std::int64_t> d_;
};

CvrpInstance parse_instance(std::string_view text);
CvrpInstance load_instance(const std::filesystem::path& path);

/// Rounded Euclidean (TSPLIB EUC_2D, nint) arcs.
DistanceMatrix build_distance_matrix(const CvrpInstance& instance);

/// Same matrix as build_distance_matrix; rows are filled by an OpenMP loop.
DistanceMatrix build_distance_matrix_parallel(const CvrpInstance& instance);

/// Re-emits the node data in TSPLIB layout. Parsing the dump gives back the same instance.
std::string dump_instance(const CvrpInstance& instance);

/// Parses "P-n16-k8" style names: returns k, or 0 when the name carries none.
int vehicles_from_name(std::string_view name);

}  // namespace mtvrp
