#include "leapfrog/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace leapfrog::io {

std::string format_double(double x)
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("write_csv: cannot open " + path);
    for (std::size_t i = 0; i < header.size(); ++i)
        out << header[i] << (i + 1 < header.size() ? "," : "\n");
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << format_double(row[i]) << (i + 1 < row.size() ? "," : "\n");
    }
    if (!out)
        throw std::runtime_error("write_csv: write failed for " + path);
}

void write_svg(const std::string& path, const std::vector<Polyline>& lines,
               double pixel_size)
{
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& pl : lines) {
        for (const auto& [x, y] : pl.points) {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    }
    if (!(xmax >= xmin))
        throw std::runtime_error("write_svg: no points");
    const double mx = 0.05 * std::max(xmax - xmin, 1e-12);
    const double my = 0.05 * std::max(ymax - ymin, 1e-12);
    xmin -= mx;
    xmax += mx;
    ymin -= my;
    ymax += my;
    const double w = xmax - xmin, h = ymax - ymin;
    const double scale = pixel_size / std::max(w, h);

    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("write_svg: cannot open " + path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w * scale
        << "\" height=\"" << h * scale << "\" viewBox=\"0 0 " << w * scale << " "
        << h * scale << "\">\n";
    for (const auto& pl : lines) {
        if (pl.points.empty())
            continue;
        out << "  <path fill=\"none\" stroke=\"" << pl.color << "\" stroke-width=\""
            << pl.width << "\" d=\"";
        bool first = true;
        for (const auto& [x, y] : pl.points) {
            out << (first ? "M" : "L") << (x - xmin) * scale << " "
                << (ymax - y) * scale << " ";
            first = false;
        }
        if (pl.closed)
            out << "Z";
        out << "\"/>\n";
    }
    out << "</svg>\n";
    if (!out)
        throw std::runtime_error("write_svg: write failed for " + path);
}

} // namespace leapfrog::io
