#pragma once

#include <string>
#include <vector>

namespace darksim {

// Minimal self-contained SVG output; purely diagnostic, never load-bearing.

void write_line_svg(const std::string& path, const std::vector<double>& x,
                    const std::vector<double>& y, const std::string& x_label,
                    const std::string& y_label, bool log_x = false);

// values is row-major: values[i * x.size() + j] belongs to (y[i], x[j]).
void write_heatmap_svg(const std::string& path, const std::vector<double>& x,
                       const std::vector<double>& y,
                       const std::vector<double>& values,
                       const std::string& x_label,
                       const std::string& y_label);

}  // namespace darksim
