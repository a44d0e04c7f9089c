#include "omdsim/svg_plot.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace omd {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                    "#9467bd", "#ff7f0e", "#8c564b"};
constexpr int kPaletteSize = 6;

// Pixel coordinates at fixed two decimals: compact, and the same spec always
// renders the same bytes.
std::string px(double v) {
  char buf[32];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, 2);
  return std::string(buf, res.ptr);
}

// Tick labels carry exactly the precision of the tick step, so a step of
// 0.05 prints 0.30/0.35 rather than the raw binary expansion of 7 * 0.05.
std::string tick_label(double v, int step_exponent) {
  const int precision = step_exponent < 0 ? -step_exponent : 0;
  char buf[48];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v,
                                 std::chars_format::fixed, precision);
  return std::string(buf, res.ptr);
}

std::string escape_text(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '&') out += "&amp;";
    else if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else out += c;
  }
  return out;
}

struct NiceTicks {
  double step = 1.0;
  int exponent = 0;  // decimal exponent of the step, for label precision
  std::vector<double> values;
};

NiceTicks nice_ticks(double lo, double hi, int target) {
  NiceTicks t;
  const double raw = (hi - lo) / std::max(target, 2);
  const int e = static_cast<int>(std::floor(std::log10(raw)));
  const double base = raw / std::pow(10.0, e);
  const double mult = base < 1.5 ? 1.0 : base < 3.5 ? 2.0 : base < 7.5 ? 5.0 : 10.0;
  t.step = mult * std::pow(10.0, e);
  t.exponent = mult >= 10.0 ? e + 1 : e;
  const long long k0 = static_cast<long long>(std::ceil(lo / t.step - 1e-9));
  const long long k1 = static_cast<long long>(std::floor(hi / t.step + 1e-9));
  for (long long k = k0; k <= k1; ++k) t.values.push_back(k * t.step);
  return t;
}

}  // namespace

std::string render_line_chart(const PlotSpec& spec) {
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  bool any = false;
  for (const PlotSeries& s : spec.series) {
    if (s.x.size() != s.y.size())
      throw std::invalid_argument("series '" + s.label + "' has mismatched x/y");
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      if (!any) {
        xmin = xmax = s.x[i];
        ymin = ymax = s.y[i];
        any = true;
      } else {
        xmin = std::min(xmin, s.x[i]);
        xmax = std::max(xmax, s.x[i]);
        ymin = std::min(ymin, s.y[i]);
        ymax = std::max(ymax, s.y[i]);
      }
    }
  }
  if (!any) throw std::invalid_argument("line chart has no finite data points");

  // Pad degenerate and near-degenerate ranges so every point stays interior.
  const double xpad = xmax > xmin ? 0.02 * (xmax - xmin) : std::max(1.0, std::fabs(xmin) * 0.1);
  const double ypad = ymax > ymin ? 0.05 * (ymax - ymin) : std::max(1.0, std::fabs(ymin) * 0.1);
  xmin -= xpad;
  xmax += xpad;
  ymin -= ypad;
  ymax += ypad;

  const double left = 70, right = 20, top = 44, bottom = 52;
  const double pw = spec.width - left - right;
  const double ph = spec.height - top - bottom;
  const auto sx = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
  const auto sy = [&](double y) { return top + (ymax - y) / (ymax - ymin) * ph; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width
      << "\" height=\"" << spec.height << "\" viewBox=\"0 0 " << spec.width
      << " " << spec.height << "\">\n";
  svg << "<rect width=\"" << spec.width << "\" height=\"" << spec.height
      << "\" fill=\"#ffffff\"/>\n";

  // Grid and tick labels.
  const NiceTicks xt = nice_ticks(xmin, xmax, 8);
  const NiceTicks yt = nice_ticks(ymin, ymax, 6);
  svg << "<g font-family=\"monospace\" font-size=\"11\" fill=\"#444\">\n";
  for (double v : xt.values) {
    const std::string gx = px(sx(v));
    svg << "<line x1=\"" << gx << "\" y1=\"" << px(top) << "\" x2=\"" << gx
        << "\" y2=\"" << px(top + ph) << "\" stroke=\"#e4e4e4\"/>\n";
    svg << "<text x=\"" << gx << "\" y=\"" << px(top + ph + 16)
        << "\" text-anchor=\"middle\">" << tick_label(v, xt.exponent)
        << "</text>\n";
  }
  for (double v : yt.values) {
    const std::string gy = px(sy(v));
    svg << "<line x1=\"" << px(left) << "\" y1=\"" << gy << "\" x2=\""
        << px(left + pw) << "\" y2=\"" << gy << "\" stroke=\"#e4e4e4\"/>\n";
    svg << "<text x=\"" << px(left - 6) << "\" y=\"" << px(sy(v) + 4)
        << "\" text-anchor=\"end\">" << tick_label(v, yt.exponent)
        << "</text>\n";
  }
  svg << "</g>\n";

  // Emphasized zero line when visible.
  if (ymin < 0.0 && ymax > 0.0) {
    svg << "<line x1=\"" << px(left) << "\" y1=\"" << px(sy(0.0)) << "\" x2=\""
        << px(left + pw) << "\" y2=\"" << px(sy(0.0))
        << "\" stroke=\"#999999\" stroke-width=\"1\"/>\n";
  }

  svg << "<rect x=\"" << px(left) << "\" y=\"" << px(top) << "\" width=\""
      << px(pw) << "\" height=\"" << px(ph)
      << "\" fill=\"none\" stroke=\"#333333\"/>\n";

  // Series, split into segments at non-finite samples.
  for (std::size_t si = 0; si < spec.series.size(); ++si) {
    const PlotSeries& s = spec.series[si];
    const char* color = kPalette[si % kPaletteSize];
    std::vector<std::pair<double, double>> seg;
    const auto flush = [&]() {
      if (seg.size() >= 2) {
        svg << "<polyline fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < seg.size(); ++i) {
          if (i) svg << ' ';
          svg << px(seg[i].first) << ',' << px(seg[i].second);
        }
        svg << "\"/>\n";
      } else if (seg.size() == 1) {
        svg << "<circle cx=\"" << px(seg[0].first) << "\" cy=\""
            << px(seg[0].second) << "\" r=\"2\" fill=\"" << color << "\"/>\n";
      }
      seg.clear();
    };
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
        flush();
        continue;
      }
      seg.emplace_back(sx(s.x[i]), sy(s.y[i]));
    }
    flush();
  }

  // Legend, top-right inside the plot area.
  std::size_t label_max = 0;
  for (const PlotSeries& s : spec.series) label_max = std::max(label_max, s.label.size());
  const double lw = 40.0 + 7.0 * static_cast<double>(label_max);
  const double lh = 8.0 + 18.0 * static_cast<double>(spec.series.size());
  const double lx = left + pw - lw - 8, ly = top + 8;
  svg << "<rect x=\"" << px(lx) << "\" y=\"" << px(ly) << "\" width=\""
      << px(lw) << "\" height=\"" << px(lh)
      << "\" fill=\"#ffffff\" fill-opacity=\"0.85\" stroke=\"#cccccc\"/>\n";
  svg << "<g font-family=\"monospace\" font-size=\"12\" fill=\"#222\">\n";
  for (std::size_t si = 0; si < spec.series.size(); ++si) {
    const double ry = ly + 18.0 * (static_cast<double>(si) + 1) - 4;
    svg << "<line x1=\"" << px(lx + 6) << "\" y1=\"" << px(ry - 4) << "\" x2=\""
        << px(lx + 26) << "\" y2=\"" << px(ry - 4) << "\" stroke=\""
        << kPalette[si % kPaletteSize] << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << px(lx + 32) << "\" y=\"" << px(ry) << "\">"
        << escape_text(spec.series[si].label) << "</text>\n";
  }
  svg << "</g>\n";

  // Title and axis labels.
  svg << "<g font-family=\"monospace\" fill=\"#111\">\n";
  svg << "<text x=\"" << px(left + pw / 2) << "\" y=\"24\" font-size=\"14\" "
         "text-anchor=\"middle\">"
      << escape_text(spec.title) << "</text>\n";
  svg << "<text x=\"" << px(left + pw / 2) << "\" y=\""
      << px(spec.height - 12.0) << "\" font-size=\"12\" text-anchor=\"middle\">"
      << escape_text(spec.x_label) << "</text>\n";
  svg << "<text x=\"18\" y=\"" << px(top + ph / 2)
      << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << px(top + ph / 2) << ")\">" << escape_text(spec.y_label) << "</text>\n";
  svg << "</g>\n</svg>\n";
  return svg.str();
}

}  // namespace omd
