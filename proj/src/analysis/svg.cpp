#include "farmrisk/analysis/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace farmrisk {

namespace {

constexpr double kWidth = 640, kHeight = 420;
constexpr double kLeft = 64, kRight = 150, kTop = 36, kBottom = 52;
constexpr const char* kPalette[] = {"#1b9e77", "#d95f02", "#7570b3", "#e7298a",
                                    "#66a61e", "#e6ab02", "#a6761d", "#666666"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Axis {
  double lo = 0, hi = 1;
  bool log = false;
  double px_lo = 0, px_hi = 1;

  [[nodiscard]] double map(double v) const {
    const double t = log ? std::log10(v) : v;
    const double span = hi - lo;
    return px_lo + (span == 0 ? 0.5 : (t - lo) / span) * (px_hi - px_lo);
  }
};

Axis fit_axis(const std::vector<double>& values, bool log, double px_lo, double px_hi) {
  Axis a;
  a.log = log;
  a.px_lo = px_lo;
  a.px_hi = px_hi;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (double v : values) {
    if (!std::isfinite(v) || (log && v <= 0)) continue;
    const double t = log ? std::log10(v) : v;
    lo = std::min(lo, t);
    hi = std::max(hi, t);
  }
  if (lo > hi) lo = 0, hi = 1;
  if (lo == hi) lo -= 0.5, hi += 0.5;
  const double pad = 0.04 * (hi - lo);
  a.lo = lo - pad;
  a.hi = hi + pad;
  return a;
}

std::string frame(const PlotSpec& spec, const Axis& x, const Axis& y) {
  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" +
       num(kHeight) + "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<text x=\"" + num(kWidth / 2) + "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" +
       escape(spec.title) + "</text>\n";
  s += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" +
       num(kWidth - kLeft - kRight) + "\" height=\"" + num(kHeight - kTop - kBottom) +
       "\" fill=\"none\" stroke=\"#333\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double tx = x.lo + (x.hi - x.lo) * i / 4.0;
    const double ty = y.lo + (y.hi - y.lo) * i / 4.0;
    const double px = x.px_lo + (x.px_hi - x.px_lo) * i / 4.0;
    const double py = y.px_lo + (y.px_hi - y.px_lo) * i / 4.0;
    const double vx = x.log ? std::pow(10.0, tx) : tx;
    const double vy = y.log ? std::pow(10.0, ty) : ty;
    char lx[32], ly[32];
    std::snprintf(lx, sizeof lx, "%.3g", vx);
    std::snprintf(ly, sizeof ly, "%.3g", vy);
    s += "<text x=\"" + num(px) + "\" y=\"" + num(kHeight - kBottom + 16) +
         "\" text-anchor=\"middle\">" + lx + "</text>\n";
    s += "<text x=\"" + num(kLeft - 6) + "\" y=\"" + num(py + 4) + "\" text-anchor=\"end\">" + ly +
         "</text>\n";
  }
  s += "<text x=\"" + num(kLeft + (kWidth - kLeft - kRight) / 2) + "\" y=\"" + num(kHeight - 12) +
       "\" text-anchor=\"middle\">" + escape(spec.x_label) + "</text>\n";
  s += "<text x=\"14\" y=\"" + num(kTop + (kHeight - kTop - kBottom) / 2) +
       "\" text-anchor=\"middle\" transform=\"rotate(-90 14 " +
       num(kTop + (kHeight - kTop - kBottom) / 2) + ")\">" + escape(spec.y_label) + "</text>\n";
  return s;
}

std::string legend(const std::vector<Series>& series) {
  std::string s;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double y = kTop + 14 + 18 * static_cast<double>(i);
    s += "<rect x=\"" + num(kWidth - kRight + 12) + "\" y=\"" + num(y - 9) +
         "\" width=\"10\" height=\"10\" fill=\"" + kPalette[i % 8] + "\"/>\n";
    s += "<text x=\"" + num(kWidth - kRight + 28) + "\" y=\"" + num(y) + "\">" +
         escape(series[i].name) + "</text>\n";
  }
  return s;
}

std::pair<Axis, Axis> axes(const PlotSpec& spec, const std::vector<Series>& series) {
  std::vector<double> xs, ys;
  for (const auto& s : series) {
    xs.insert(xs.end(), s.x.begin(), s.x.end());
    ys.insert(ys.end(), s.y.begin(), s.y.end());
    ys.insert(ys.end(), s.lo.begin(), s.lo.end());
    ys.insert(ys.end(), s.hi.begin(), s.hi.end());
  }
  return {fit_axis(xs, spec.log_x, kLeft, kWidth - kRight),
          fit_axis(ys, spec.log_y, kHeight - kBottom, kTop)};
}

bool plottable(double v, bool log) { return std::isfinite(v) && (!log || v > 0); }

}  // namespace

std::string svg_scatter(const PlotSpec& spec, const std::vector<Series>& groups) {
  const auto [x, y] = axes(spec, groups);
  std::string s = frame(spec, x, y);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const auto& ser = groups[g];
    for (std::size_t i = 0; i < ser.x.size(); ++i) {
      if (!plottable(ser.x[i], x.log) || !plottable(ser.y[i], y.log)) continue;
      s += "<circle cx=\"" + num(x.map(ser.x[i])) + "\" cy=\"" + num(y.map(ser.y[i])) +
           "\" r=\"2.5\" fill=\"" + kPalette[g % 8] + "\" fill-opacity=\"0.7\"/>\n";
    }
  }
  s += legend(groups);
  return s + "</svg>\n";
}

std::string svg_lines(const PlotSpec& spec, const std::vector<Series>& series) {
  const auto [x, y] = axes(spec, series);
  std::string s = frame(spec, x, y);
  for (std::size_t g = 0; g < series.size(); ++g) {
    const auto& ser = series[g];
    const char* color = kPalette[g % 8];
    if (!ser.lo.empty() && ser.lo.size() == ser.x.size() && ser.hi.size() == ser.x.size()) {
      std::string band;
      for (std::size_t i = 0; i < ser.x.size(); ++i) {
        if (!plottable(ser.x[i], x.log) || !plottable(ser.hi[i], y.log)) continue;
        band += num(x.map(ser.x[i])) + "," + num(y.map(ser.hi[i])) + " ";
      }
      for (std::size_t i = ser.x.size(); i-- > 0;) {
        if (!plottable(ser.x[i], x.log) || !plottable(ser.lo[i], y.log)) continue;
        band += num(x.map(ser.x[i])) + "," + num(y.map(ser.lo[i])) + " ";
      }
      s += "<polygon points=\"" + band + "\" fill=\"" + color + "\" fill-opacity=\"0.15\" stroke=\"none\"/>\n";
    }
    std::string pts;
    for (std::size_t i = 0; i < ser.x.size(); ++i) {
      if (!plottable(ser.x[i], x.log) || !plottable(ser.y[i], y.log)) continue;
      pts += num(x.map(ser.x[i])) + "," + num(y.map(ser.y[i])) + " ";
    }
    s += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.6\"/>\n";
  }
  s += legend(series);
  return s + "</svg>\n";
}

std::string svg_bars(const PlotSpec& spec, const std::vector<Bar>& bars) {
  std::vector<double> vals{0.0};
  for (const auto& b : bars) vals.push_back(b.value);
  Axis x{0, static_cast<double>(std::max<std::size_t>(bars.size(), 1)), false, kLeft, kWidth - kRight};
  const Axis y = fit_axis(vals, spec.log_y, kHeight - kBottom, kTop);
  std::string s = frame(spec, x, y);
  const double slot = (x.px_hi - x.px_lo) / static_cast<double>(std::max<std::size_t>(bars.size(), 1));
  const double base = y.map(0.0);
  for (std::size_t i = 0; i < bars.size(); ++i) {
    const double top = y.map(bars[i].value);
    const double px = x.px_lo + slot * (static_cast<double>(i) + 0.15);
    s += "<rect x=\"" + num(px) + "\" y=\"" + num(std::min(top, base)) + "\" width=\"" +
         num(slot * 0.7) + "\" height=\"" + num(std::abs(base - top)) + "\" fill=\"" +
         (bars[i].highlight ? "#d95f02" : "#7f7f7f") + "\"/>\n";
    s += "<text x=\"" + num(px + slot * 0.35) + "\" y=\"" + num(kTop + 12) +
         "\" text-anchor=\"middle\" font-size=\"9\">" + escape(bars[i].label) + "</text>\n";
  }
  return s + "</svg>\n";
}

}  // namespace farmrisk
