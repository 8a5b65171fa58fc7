#include "rankzipf/report_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace rankzipf {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, end);
}

std::string to_csv(const ConvergenceReport& report) {
  std::string out = "abscissa,empirical,predicted,ratio\r\n";
  for (const auto& row : report.rows) {
    out += row.abscissa_text.empty() ? format_double(row.abscissa) : row.abscissa_text;
    out += ',';
    out += format_double(row.empirical);
    out += ',';
    out += format_double(row.predicted);
    out += ',';
    out += format_double(row.ratio);
    out += "\r\n";
  }
  return out;
}

namespace {

std::string escape_xml(const std::string& s) {
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

std::string fixed(double x, int digits = 2) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << x;
  return os.str();
}

}  // namespace

std::string to_svg(const ConvergenceReport& report, const std::string& title) {
  constexpr double kWidth = 720, kHeight = 420, kLeft = 70, kRight = 20, kTop = 40, kBottom = 50;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;

  // Rank reports use a log axis; z reports are already logarithmic in the count.
  const bool log_x = report.kind == "rank";
  auto xval = [&](double a) { return log_x ? std::log10(std::max(a, 1.0)) : a; };

  double x_lo = 0, x_hi = 1, y_lo = 1, y_hi = 1;
  if (!report.rows.empty()) {
    x_lo = xval(report.rows.front().abscissa);
    x_hi = xval(report.rows.back().abscissa);
    for (const auto& row : report.rows) {
      y_lo = std::min(y_lo, row.ratio);
      y_hi = std::max(y_hi, row.ratio);
    }
  }
  if (x_hi <= x_lo) x_hi = x_lo + 1;
  const double pad = 0.05 * std::max(y_hi - y_lo, 1e-3);
  y_lo -= pad;
  y_hi += pad;

  auto px = [&](double a) { return kLeft + (xval(a) - x_lo) / (x_hi - x_lo) * plot_w; };
  auto py = [&](double r) { return kTop + (y_hi - r) / (y_hi - y_lo) * plot_h; };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"16\">"
      << escape_xml(title) << "</text>\n"
      << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w << "\" height=\""
      << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";

  // Predicted limit: ratio == 1.
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << fixed(py(1.0)) << "\" x2=\"" << kLeft + plot_w
      << "\" y2=\"" << fixed(py(1.0)) << "\" stroke=\"#c0392b\" stroke-dasharray=\"6,4\"/>\n";

  if (!report.rows.empty()) {
    svg << "<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1.5\" points=\"";
    for (const auto& row : report.rows) svg << fixed(px(row.abscissa)) << ',' << fixed(py(row.ratio)) << ' ';
    svg << "\"/>\n";
  }

  const std::string x_label = log_x ? "log10(rank)" : "z";
  svg << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << x_label
      << "</text>\n"
      << "<text x=\"16\" y=\"" << kTop + plot_h / 2 << "\" transform=\"rotate(-90 16 " << kTop + plot_h / 2
      << ")\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">empirical / predicted</text>\n";
  for (double r : {y_lo + pad, 1.0, y_hi - pad}) {
    svg << "<text x=\"" << kLeft - 6 << "\" y=\"" << fixed(py(r) + 4) << "\" text-anchor=\"end\" "
        << "font-family=\"sans-serif\" font-size=\"11\">" << fixed(r, 4) << "</text>\n";
  }
  svg << "<text x=\"" << kLeft << "\" y=\"" << kTop + plot_h + 16 << "\" font-family=\"sans-serif\" "
      << "font-size=\"11\">" << fixed(x_lo) << "</text>\n"
      << "<text x=\"" << kLeft + plot_w << "\" y=\"" << kTop + plot_h + 16 << "\" text-anchor=\"end\" "
      << "font-family=\"sans-serif\" font-size=\"11\">" << fixed(x_hi) << "</text>\n"
      << "</svg>\n";
  return svg.str();
}

}  // namespace rankzipf
