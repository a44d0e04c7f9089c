#include <limits>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "omdsim/svg_plot.hpp"

using namespace omd;

namespace {

int count_occurrences(const std::string& haystack, const std::string& needle) {
  int n = 0;
  for (std::size_t at = haystack.find(needle); at != std::string::npos;
       at = haystack.find(needle, at + needle.size()))
    ++n;
  return n;
}

PlotSpec two_series_spec() {
  PlotSpec spec;
  spec.title = "regret over time";
  spec.x_label = "t";
  spec.y_label = "regret";
  spec.series.push_back({"player x", {1, 2, 3, 4}, {0.5, 0.1, -0.2, -0.4}});
  spec.series.push_back({"player y", {1, 2, 3, 4}, {0.3, 0.0, -0.1, -0.3}});
  return spec;
}

}  // namespace

TEST_CASE("chart contains one polyline per series plus labels") {
  const std::string svg = render_line_chart(two_series_spec());
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(count_occurrences(svg, "<polyline") == 2);
  CHECK(svg.find("player x") != std::string::npos);
  CHECK(svg.find("player y") != std::string::npos);
  CHECK(svg.find("regret over time") != std::string::npos);
}

TEST_CASE("labels are xml-escaped") {
  PlotSpec spec = two_series_spec();
  spec.series[0].label = "a<b&c";
  spec.title = "\"quoted\" title";
  const std::string svg = render_line_chart(spec);
  CHECK(svg.find("a<b&c") == std::string::npos);
  CHECK(svg.find("a&lt;b&amp;c") != std::string::npos);
  // Every ampersand left in the output starts an entity, so the document
  // stays well-formed.
  CHECK(count_occurrences(svg, "&") ==
        count_occurrences(svg, "&lt;") + count_occurrences(svg, "&gt;") +
            count_occurrences(svg, "&amp;") + count_occurrences(svg, "&quot;") +
            count_occurrences(svg, "&apos;"));
}

TEST_CASE("rendering is deterministic") {
  CHECK(render_line_chart(two_series_spec()) ==
        render_line_chart(two_series_spec()));
}

TEST_CASE("non-finite values split a series into segments") {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  PlotSpec spec;
  spec.title = "gap";
  spec.series.push_back({"gap", {1, 2, 3, 4, 5}, {1.0, 0.5, nan, 0.2, 0.1}});
  const std::string svg = render_line_chart(spec);
  CHECK(count_occurrences(svg, "<polyline") == 2);
}

TEST_CASE("charts with nothing to draw are rejected") {
  SUBCASE("no series at all") {
    PlotSpec spec;
    spec.title = "empty";
    CHECK_THROWS_AS(render_line_chart(spec), std::invalid_argument);
  }
  SUBCASE("only non-finite values") {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    PlotSpec spec;
    spec.series.push_back({"nope", {1, 2}, {nan, nan}});
    CHECK_THROWS_AS(render_line_chart(spec), std::invalid_argument);
  }
}

TEST_CASE("zero line appears exactly when the y-range crosses zero") {
  const std::string with_zero = render_line_chart(two_series_spec());
  PlotSpec positive = two_series_spec();
  for (auto& s : positive.series)
    for (double& v : s.y) v = v + 10.0;
  const std::string without_zero = render_line_chart(positive);
  // The emphasized zero line is the only element drawn in #999999.
  CHECK(with_zero.find("stroke=\"#999999\"") != std::string::npos);
  CHECK(without_zero.find("stroke=\"#999999\"") == std::string::npos);
}
