#pragma once

#include <string>
#include <vector>

#include "omdsim/linalg.hpp"

namespace omd {

// One polyline of a chart. x and y must have equal lengths; non-finite y
// values break the line into separate segments instead of being drawn.
struct PlotSeries {
  std::string label;
  Vec x;
  Vec y;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<PlotSeries> series;
  int width = 860;
  int height = 520;
};

// Renders a self-contained SVG line chart: light grid, tick labels, axis
// titles, a legend naming every series, and an emphasized zero line when
// the y-range crosses zero. No external resources; the output bytes are a
// pure function of the spec. Throws std::invalid_argument when there is
// nothing to draw (no series, or only empty/non-finite ones).
std::string render_line_chart(const PlotSpec& spec);

}  // namespace omd
