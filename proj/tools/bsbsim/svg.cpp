#include "bsbsim/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bsb/csv.hpp"
#include "json.hpp"

namespace bsbsim {

namespace {

constexpr double width = 900, height = 480;
constexpr double left = 70, right = 160, top = 50, bottom = 70;
const char* const palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) { return bsb::format_fixed(v, 2); }

struct y_axis {
  double lo, hi;
  double map(double v) const { return top + (height - top - bottom) * (1 - (v - lo) / (hi - lo)); }
};

y_axis make_axis(double lo, double hi) {
  if (!(hi > lo)) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double pad = (hi - lo) * 0.08;
  return {lo - pad, hi + pad};
}

void frame(std::ostringstream& os, const std::string& title, const std::string& x_label, const std::string& y_label,
           const y_axis& ax, const nlohmann::json& data) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<metadata>" << escape(data.dump()) << "</metadata>\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << escape(title)
     << "</text>\n";
  os << "<text x=\"" << (left + width - right) / 2 << "\" y=\"" << height - 12 << "\" text-anchor=\"middle\">"
     << escape(x_label) << "</text>\n";
  os << "<text transform=\"translate(16," << height / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
     << escape(y_label) << "</text>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << height - bottom
     << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << height - bottom << "\" x2=\"" << width - right << "\" y2=\""
     << height - bottom << "\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 5; ++k) {
    const double v = ax.lo + (ax.hi - ax.lo) * k / 5;
    const double y = ax.map(v);
    os << "<line x1=\"" << left - 4 << "\" y1=\"" << num(y) << "\" x2=\"" << width - right << "\" y2=\"" << num(y)
       << "\" stroke=\"#ddd\"/>\n";
    os << "<text x=\"" << left - 8 << "\" y=\"" << num(y + 4) << "\" text-anchor=\"end\">" << num(v) << "</text>\n";
  }
}

void legend(std::ostringstream& os, const std::vector<std::string>& names) {
  for (std::size_t k = 0; k < names.size(); ++k) {
    const double y = top + 18.0 * k;
    os << "<rect x=\"" << width - right + 16 << "\" y=\"" << y << "\" width=\"12\" height=\"12\" fill=\""
       << palette[k % 6] << "\"/>\n";
    os << "<text x=\"" << width - right + 34 << "\" y=\"" << y + 10 << "\">" << escape(names[k]) << "</text>\n";
  }
}

double quantile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const double pos = q * (v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = static_cast<std::size_t>(std::ceil(pos));
  return v[lo] + (v[hi] - v[lo]) * (pos - lo);
}

} // namespace

std::string box_plot_svg(const std::string& title, const std::string& y_label, const std::vector<box_group>& groups) {
  double lo = INFINITY, hi = -INFINITY;
  std::vector<std::string> names;
  nlohmann::json data = nlohmann::json::array();
  for (const auto& g : groups) {
    nlohmann::json jg{{"group", g.label}, {"series", nlohmann::json::object()}};
    for (const auto& s : g.series) {
      for (double v : s.values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      if (std::find(names.begin(), names.end(), s.name) == names.end()) names.push_back(s.name);
      jg["series"][s.name] = s.values;
    }
    data.push_back(jg);
  }
  if (!std::isfinite(lo)) lo = hi = 1.0;
  const auto ax = make_axis(lo, hi);

  std::ostringstream os;
  frame(os, title, "dataset", y_label, ax, data);
  const double plot_w = width - left - right;
  const double group_w = groups.empty() ? plot_w : plot_w / groups.size();
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    const auto& g = groups[gi];
    const double gx = left + group_w * gi;
    os << "<text x=\"" << num(gx + group_w / 2) << "\" y=\"" << height - bottom + 18
       << "\" text-anchor=\"middle\">" << escape(g.label) << "</text>\n";
    const double box_w = group_w / (names.size() + 1);
    for (const auto& s : g.series) {
      if (s.values.empty()) continue;
      const auto slot = std::find(names.begin(), names.end(), s.name) - names.begin();
      const double cx = gx + box_w * (slot + 1);
      const double w = box_w * 0.6;
      const char* color = palette[slot % 6];
      const double q1 = quantile(s.values, 0.25), q2 = quantile(s.values, 0.5), q3 = quantile(s.values, 0.75);
      const double mn = *std::min_element(s.values.begin(), s.values.end());
      const double mx = *std::max_element(s.values.begin(), s.values.end());
      os << "<g data-series=\"" << escape(s.name) << "\" data-median=\"" << bsb::format_number(q2) << "\">\n";
      os << "<line x1=\"" << num(cx) << "\" y1=\"" << num(ax.map(mn)) << "\" x2=\"" << num(cx) << "\" y2=\""
         << num(ax.map(mx)) << "\" stroke=\"" << color << "\"/>\n";
      os << "<rect x=\"" << num(cx - w / 2) << "\" y=\"" << num(ax.map(q3)) << "\" width=\"" << num(w)
         << "\" height=\"" << num(std::max(1.0, ax.map(q1) - ax.map(q3))) << "\" fill=\"" << color
         << "\" fill-opacity=\"0.35\" stroke=\"" << color << "\"/>\n";
      os << "<line x1=\"" << num(cx - w / 2) << "\" y1=\"" << num(ax.map(q2)) << "\" x2=\"" << num(cx + w / 2)
         << "\" y2=\"" << num(ax.map(q2)) << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
      os << "</g>\n";
    }
  }
  legend(os, names);
  os << "</svg>\n";
  return os.str();
}

std::string line_plot_svg(const std::string& title, const std::string& x_label, const std::string& y_label,
                          const std::vector<plot_series>& series) {
  double lo = INFINITY, hi = -INFINITY;
  std::size_t points = 0;
  nlohmann::json data = nlohmann::json::object();
  std::vector<std::string> names;
  for (const auto& s : series) {
    for (double v : s.values) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    points = std::max(points, s.values.size());
    data[s.name] = s.values;
    names.push_back(s.name);
  }
  if (!std::isfinite(lo)) lo = hi = 1.0;
  const auto ax = make_axis(lo, hi);

  std::ostringstream os;
  frame(os, title, x_label, y_label, ax, data);
  const double plot_w = width - left - right;
  const auto x_of = [&](std::size_t k) { return left + (points > 1 ? plot_w * k / (points - 1) : plot_w / 2); };
  const std::size_t step = std::max<std::size_t>(1, points / 10);
  for (std::size_t k = 0; k < points; k += step)
    os << "<text x=\"" << num(x_of(k)) << "\" y=\"" << height - bottom + 18 << "\" text-anchor=\"middle\">" << k
       << "</text>\n";
  for (std::size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    os << "<polyline fill=\"none\" stroke=\"" << palette[si % 6] << "\" stroke-width=\"2\" points=\"";
    for (std::size_t k = 0; k < s.values.size(); ++k)
      os << (k ? " " : "") << num(x_of(k)) << ',' << num(ax.map(s.values[k]));
    os << "\"/>\n";
  }
  legend(os, names);
  os << "</svg>\n";
  return os.str();
}

} // namespace bsbsim
