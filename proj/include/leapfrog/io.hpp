#ifndef LEAPFROG_IO_HPP
#define LEAPFROG_IO_HPP

#include <string>
#include <vector>

namespace leapfrog::io {

/// Shortest decimal that round-trips the double (<= 17 significant digits).
std::string format_double(double x);

/// Writes a CSV file; throws std::runtime_error on I/O failure.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

struct Polyline {
    std::vector<std::pair<double, double>> points;
    std::string color = "#1f6fb2";
    double width = 1.0;
    bool closed = false;
};

/// Emits polylines as SVG paths; the viewBox is computed from the data
/// bounds plus a 5% margin, with the y axis pointing up.
void write_svg(const std::string& path, const std::vector<Polyline>& lines,
               double pixel_size = 640.0);

} // namespace leapfrog::io

#endif
