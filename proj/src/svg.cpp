#include "arago/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "arago/csv.hpp"

namespace arago {

namespace {

constexpr double kW = 860, kH = 520;
constexpr double kLeft = 72, kRight = 24, kTop = 24, kBottom = 56;

const char* kPalette[] = {"#1b6ca8", "#c0392b", "#27ae60", "#8e44ad",
                          "#e67e22", "#16a085"};

std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

// tick step 1/2/5 x 10^k giving <= 8 ticks
double nice_step(double range) {
  const double raw = range / 6.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double frac = raw / mag;
  if (frac <= 1.0) return mag;
  if (frac <= 2.0) return 2.0 * mag;
  if (frac <= 5.0) return 5.0 * mag;
  return 10.0 * mag;
}

}  // namespace

void write_profiles_svg(std::ostream& os, const std::vector<PlotSeries>& series) {
  if (series.empty()) throw std::invalid_argument("plot: no series");
  double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
  for (const auto& s : series) {
    validate_grid(s.profile.xs);
    x0 = std::min(x0, s.profile.xs.front() * 1e6);
    x1 = std::max(x1, s.profile.xs.back() * 1e6);
    for (double v : s.profile.values) {
      y0 = std::min(y0, v);
      y1 = std::max(y1, v);
    }
  }
  if (!(x1 > x0)) throw std::invalid_argument("plot: degenerate x range");
  if (!(y1 > y0)) {
    y0 -= 0.5;
    y1 += 0.5;
  }
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad;
  y1 += pad;

  const double plot_w = kW - kLeft - kRight;
  const double plot_h = kH - kTop - kBottom;
  auto X = [&](double x) { return kLeft + (x - x0) / (x1 - x0) * plot_w; };
  auto Y = [&](double y) { return kTop + (1.0 - (y - y0) / (y1 - y0)) * plot_h; };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW
     << "\" height=\"" << kH << "\" viewBox=\"0 0 " << kW << ' ' << kH << "\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << kW << "\" height=\"" << kH
     << "\" fill=\"white\"/>\n";
  os << "<rect x=\"" << px(kLeft) << "\" y=\"" << px(kTop) << "\" width=\""
     << px(plot_w) << "\" height=\"" << px(plot_h)
     << "\" fill=\"none\" stroke=\"black\"/>\n";

  const double xs_step = nice_step(x1 - x0);
  for (double v = std::ceil(x0 / xs_step) * xs_step; v <= x1 + 1e-9 * xs_step;
       v += xs_step) {
    os << "<line x1=\"" << px(X(v)) << "\" y1=\"" << px(kTop + plot_h)
       << "\" x2=\"" << px(X(v)) << "\" y2=\"" << px(kTop + plot_h + 6)
       << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << px(X(v)) << "\" y=\"" << px(kTop + plot_h + 22)
       << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">"
       << format_double(v) << "</text>\n";
  }
  const double ys_step = nice_step(y1 - y0);
  for (double v = std::ceil(y0 / ys_step) * ys_step; v <= y1 + 1e-9 * ys_step;
       v += ys_step) {
    os << "<line x1=\"" << px(kLeft - 6) << "\" y1=\"" << px(Y(v)) << "\" x2=\""
       << px(kLeft) << "\" y2=\"" << px(Y(v)) << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << px(kLeft - 9) << "\" y=\"" << px(Y(v) + 4)
       << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"end\">"
       << format_double(v) << "</text>\n";
  }
  os << "<text x=\"" << px(kLeft + plot_w / 2) << "\" y=\"" << px(kH - 14)
     << "\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">x"
        " [um]</text>\n";
  os << "<text x=\"18\" y=\"" << px(kTop + plot_h / 2)
     << "\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\""
        " transform=\"rotate(-90 18 "
     << px(kTop + plot_h / 2) << ")\">intensity</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const auto& p = series[s].profile;
    os << "<polyline fill=\"none\" stroke=\"" << kPalette[s % 6]
       << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < p.xs.size(); ++i) {
      if (i) os << ' ';
      os << px(X(p.xs[i] * 1e6)) << ',' << px(Y(p.values[i]));
    }
    os << "\"/>\n";
  }
  for (std::size_t s = 0; s < series.size(); ++s) {
    const double ly = kTop + 18 + 20 * static_cast<double>(s);
    os << "<line x1=\"" << px(kLeft + plot_w - 150) << "\" y1=\"" << px(ly)
       << "\" x2=\"" << px(kLeft + plot_w - 120) << "\" y2=\"" << px(ly)
       << "\" stroke=\"" << kPalette[s % 6] << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << px(kLeft + plot_w - 114) << "\" y=\"" << px(ly + 4)
       << "\" font-family=\"sans-serif\" font-size=\"13\">" << series[s].label
       << "</text>\n";
  }
  os << "</svg>\n";
}

}  // namespace arago
