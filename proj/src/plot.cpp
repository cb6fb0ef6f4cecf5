#include "darksim/plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "darksim/scan.hpp"

namespace darksim {
namespace {

constexpr int kWidth = 720;
constexpr int kHeight = 480;
constexpr int kMargin = 60;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

void svg_header(std::ofstream& out) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
      << kHeight << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

void svg_axes(std::ofstream& out, const std::string& x_label,
              const std::string& y_label, double x0, double x1, double y0,
              double y1) {
  out << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\""
      << kWidth - 2 * kMargin << "\" height=\"" << kHeight - 2 * kMargin
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 15
      << "\" text-anchor=\"middle\" font-size=\"14\">" << x_label
      << "</text>\n";
  out << "<text x=\"18\" y=\"" << kHeight / 2
      << "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 "
         "18 "
      << kHeight / 2 << ")\">" << y_label << "</text>\n";
  out << "<text x=\"" << kMargin << "\" y=\"" << kHeight - kMargin + 18
      << "\" font-size=\"11\">" << fmt(x0) << "</text>\n";
  out << "<text x=\"" << kWidth - kMargin << "\" y=\"" << kHeight - kMargin + 18
      << "\" text-anchor=\"end\" font-size=\"11\">" << fmt(x1) << "</text>\n";
  out << "<text x=\"" << kMargin - 5 << "\" y=\"" << kHeight - kMargin
      << "\" text-anchor=\"end\" font-size=\"11\">" << fmt(y0) << "</text>\n";
  out << "<text x=\"" << kMargin - 5 << "\" y=\"" << kMargin + 4
      << "\" text-anchor=\"end\" font-size=\"11\">" << fmt(y1) << "</text>\n";
}

}  // namespace

void write_line_svg(const std::string& path, const std::vector<double>& x,
                    const std::vector<double>& y, const std::string& x_label,
                    const std::string& y_label, bool log_x) {
  if (x.size() != y.size() || x.empty()) {
    throw std::domain_error("write_line_svg: mismatched or empty data");
  }
  std::vector<double> xs = x;
  if (log_x) {
    for (auto& v : xs) {
      if (v <= 0) throw std::domain_error("write_line_svg: log axis needs positive x");
      v = std::log10(v);
    }
  }
  double xmin = *std::min_element(xs.begin(), xs.end());
  double xmax = *std::max_element(xs.begin(), xs.end());
  std::vector<double> yf;
  for (double v : y) {
    if (std::isfinite(v)) yf.push_back(v);
  }
  if (yf.empty()) throw std::domain_error("write_line_svg: no finite samples");
  double ymin = *std::min_element(yf.begin(), yf.end());
  double ymax = *std::max_element(yf.begin(), yf.end());
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) ymax = ymin + 1;

  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  svg_header(out);
  svg_axes(out, x_label + (log_x ? " (log)" : ""), y_label,
           log_x ? std::pow(10, xmin) : xmin, log_x ? std::pow(10, xmax) : xmax,
           ymin, ymax);
  out << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" "
         "points=\"";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(y[i])) continue;
    const double px =
        kMargin + (xs[i] - xmin) / (xmax - xmin) * (kWidth - 2 * kMargin);
    const double py = kHeight - kMargin -
                      (y[i] - ymin) / (ymax - ymin) * (kHeight - 2 * kMargin);
    out << fmt(px) << "," << fmt(py) << " ";
  }
  out << "\"/>\n</svg>\n";
  if (!out) throw IoError("failed while writing '" + path + "'");
}

void write_heatmap_svg(const std::string& path, const std::vector<double>& x,
                       const std::vector<double>& y,
                       const std::vector<double>& values,
                       const std::string& x_label,
                       const std::string& y_label) {
  if (x.empty() || y.empty() || values.size() != x.size() * y.size()) {
    throw std::domain_error("write_heatmap_svg: mismatched data sizes");
  }
  std::vector<double> vf;
  for (double v : values) {
    if (std::isfinite(v)) vf.push_back(v);
  }
  if (vf.empty()) throw std::domain_error("write_heatmap_svg: no finite data");
  const double vmin = *std::min_element(vf.begin(), vf.end());
  const double vmax = *std::max_element(vf.begin(), vf.end());
  const double scale = (vmax > vmin) ? 1.0 / (vmax - vmin) : 0.0;

  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  svg_header(out);
  svg_axes(out, x_label, y_label, x.front(), x.back(), y.front(), y.back());
  const double cw = static_cast<double>(kWidth - 2 * kMargin) / x.size();
  const double ch = static_cast<double>(kHeight - 2 * kMargin) / y.size();
  for (std::size_t i = 0; i < y.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double v = values[i * x.size() + j];
      int shade = 255;
      if (std::isfinite(v)) {
        shade = static_cast<int>(255 * (1.0 - (v - vmin) * scale));
      }
      out << "<rect x=\"" << fmt(kMargin + j * cw) << "\" y=\""
          << fmt(kHeight - kMargin - (i + 1) * ch) << "\" width=\""
          << fmt(cw + 0.5) << "\" height=\"" << fmt(ch + 0.5)
          << "\" fill=\"rgb(" << shade << "," << shade << ",255)\"/>\n";
    }
  }
  out << "</svg>\n";
  if (!out) throw IoError("failed while writing '" + path + "'");
}

}  // namespace darksim
