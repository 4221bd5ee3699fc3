#include "mtvrp/heatmap.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace mtvrp {

namespace {

constexpr double kCell = 40.0;
constexpr double kMargin = 100.0;
constexpr double kMaxRadius = kCell * 0.45;
constexpr const char* kOrange = "#f28e2b";
constexpr const char* kGrey = "#9d9d9d";

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string render_transfer_svg(const LabeledMatrix& matrix) {
    const auto k = matrix.labels.size();
    if (matrix.values.size() != k) throw HarnessError("heatmap: matrix is not square");
    for (const auto& row : matrix.values)
        if (row.size() != k) throw HarnessError("heatmap: matrix is not square");

    std::vector<double> inter(k, 0.0);
    double peak = 0.0;
    for (std::size_t t = 0; t < k; ++t)
        for (std::size_t s = 0; s < k; ++s) {
            if (s != t) inter[t] += matrix.values[t][s];
            peak = std::max(peak, matrix.values[t][s]);
        }
    for (double v : inter) peak = std::max(peak, v);

    auto radius = [&](double v) { return peak > 0.0 && v > 0.0 ? kMaxRadius * std::sqrt(v / peak) : 0.0; };
    const double side = kMargin + kCell * static_cast<double>(k) + 10.0;

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(side) << "\" height=\"" << num(side)
        << "\" font-family=\"sans-serif\" font-size=\"10\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (std::size_t i = 0; i < k; ++i) {
        const double c = kMargin + kCell * (static_cast<double>(i) + 0.5);
        svg << "<text x=\"" << num(kMargin - 5) << "\" y=\"" << num(c + 3) << "\" text-anchor=\"end\">"
            << escape(matrix.labels[i]) << "</text>\n";
        svg << "<text transform=\"translate(" << num(c + 3) << ',' << num(kMargin - 5)
            << ") rotate(-60)\">" << escape(matrix.labels[i]) << "</text>\n";
    }
    for (std::size_t t = 0; t < k; ++t)
        for (std::size_t s = 0; s < k; ++s) {
            const double x = kMargin + kCell * static_cast<double>(s);
            const double y = kMargin + kCell * static_cast<double>(t);
            const double cx = x + kCell / 2, cy = y + kCell / 2;
            svg << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(kCell) << "\" height=\""
                << num(kCell) << "\" fill=\"none\" stroke=\"#dddddd\"/>\n";
            if (s != t) {
                if (const double r = radius(matrix.values[t][s]); r > 0.0)
                    svg << "<circle cx=\"" << num(cx) << "\" cy=\"" << num(cy) << "\" r=\"" << num(r) << "\" fill=\""
                        << kOrange << "\"/>\n";
                continue;
            }
            // left half: intra-task, right half: summed inter-task
            if (const double r = radius(matrix.values[t][t]); r > 0.0)
                svg << "<path d=\"M" << num(cx) << ',' << num(cy - r) << " A" << num(r) << ',' << num(r) << " 0 0 0 "
                    << num(cx) << ',' << num(cy + r) << " Z\" fill=\"" << kGrey << "\"/>\n";
            if (const double r = radius(inter[t]); r > 0.0)
                svg << "<path d=\"M" << num(cx) << ',' << num(cy - r) << " A" << num(r) << ',' << num(r) << " 0 0 1 "
                    << num(cx) << ',' << num(cy + r) << " Z\" fill=\"" << kOrange << "\"/>\n";
        }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace mtvrp
