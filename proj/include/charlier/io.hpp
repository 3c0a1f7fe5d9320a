#pragma once

#include <string>
#include <vector>

#include "charlier/types.hpp"

namespace charlier {

/// Shortest-of-17-significant-digits formatting (round-trip exact).
std::string format_double(double v);

/// Writes rows as CSV with a header, '\n' line endings, 17-digit floats.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

/// Minimal SVG 1.1 quick-look plot: polylines and scatter points in data
/// coordinates, mapped into a fixed viewport. No styling contract.
struct SvgPlot {
    struct Series {
        std::vector<double> x, y;
        bool scatter = false;
        std::string color = "black";
    };
    double width = 640.0, height = 480.0;
    std::vector<Series> series;

    void add_line(std::vector<double> x, std::vector<double> y,
                  std::string color = "black");
    void add_scatter(std::vector<double> x, std::vector<double> y,
                     std::string color = "black");
    void write(const std::string& path) const;
};

}  // namespace charlier
