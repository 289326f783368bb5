#pragma once

#include <string>
#include <vector>

namespace bsbsim {

struct plot_series {
  std::string name;
  std::vector<double> values;
};

// One box per series inside each group (e.g. group = dataset, series = algorithm).
struct box_group {
  std::string label;
  std::vector<plot_series> series;
};

// Standalone SVGs; the plotted numbers are embedded as JSON in <metadata>.
std::string box_plot_svg(const std::string& title, const std::string& y_label, const std::vector<box_group>& groups);

// Series values are y at x = 0, 1, 2, ...
std::string line_plot_svg(const std::string& title, const std::string& x_label, const std::string& y_label,
                          const std::vector<plot_series>& series);

} // namespace bsbsim
