#include "charlier/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace charlier {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    for (std::size_t i = 0; i < header.size(); ++i)
        os << (i ? "," : "") << header[i];
    os << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << (i ? "," : "") << format_double(row[i]);
        os << "\n";
    }
}

void SvgPlot::add_line(std::vector<double> x, std::vector<double> y,
                       std::string color) {
    series.push_back(Series{std::move(x), std::move(y), false, std::move(color)});
}

void SvgPlot::add_scatter(std::vector<double> x, std::vector<double> y,
                          std::string color) {
    series.push_back(Series{std::move(x), std::move(y), true, std::move(color)});
}

void SvgPlot::write(const std::string& path) const {
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const Series& s : series)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, s.y[i]);
            ymax = std::max(ymax, s.y[i]);
        }
    if (xmin > xmax) { xmin = 0.0; xmax = 1.0; ymin = 0.0; ymax = 1.0; }
    if (xmax == xmin) xmax = xmin + 1.0;
    if (ymax == ymin) ymax = ymin + 1.0;
    const double margin = 0.05;
    const auto to_px_x = [&](double v) {
        return (margin + (1.0 - 2.0 * margin) * (v - xmin) / (xmax - xmin)) * width;
    };
    const auto to_px_y = [&](double v) {
        return (1.0 - margin - (1.0 - 2.0 * margin) * (v - ymin) / (ymax - ymin)) *
               height;
    };

    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    char buf[64];
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
       << width << "\" height=\"" << height << "\">\n";
    for (const Series& s : series) {
        if (s.scatter) {
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
                std::snprintf(buf, sizeof(buf), "%.4f\" cy=\"%.4f",
                              to_px_x(s.x[i]), to_px_y(s.y[i]));
                os << "<circle cx=\"" << buf << "\" r=\"2\" fill=\"" << s.color
                   << "\"/>\n";
            }
        } else {
            os << "<polyline fill=\"none\" stroke=\"" << s.color
               << "\" points=\"";
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
                std::snprintf(buf, sizeof(buf), "%.4f,%.4f ", to_px_x(s.x[i]),
                              to_px_y(s.y[i]));
                os << buf;
            }
            os << "\"/>\n";
        }
    }
    os << "</svg>\n";
}

}  // namespace charlier
