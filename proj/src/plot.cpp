#include "crn/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "crn/error.hpp"

namespace crn {

namespace {

constexpr double kSize = 600.0;
constexpr double kMargin = 60.0;
constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(std::string_view s) {
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

struct Point {
  double x, y;
};

std::string polyline(const std::vector<Point>& pts, std::string_view colour) {
  std::string out = "<polyline fill=\"none\" stroke=\"" + std::string(colour) + "\" stroke-width=\"1.2\" points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) out += ' ';
    out += num(pts[i].x) + "," + num(pts[i].y);
  }
  return out + "\"/>\n";
}

std::string text(Point p, std::string_view anchor, std::string_view body) {
  return "<text x=\"" + num(p.x) + "\" y=\"" + num(p.y) + "\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"" +
         std::string(anchor) + "\">" + escape(body) + "</text>\n";
}

std::string header() {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" viewBox=\"0 0 600 600\">\n"
         "<rect width=\"600\" height=\"600\" fill=\"white\"/>\n";
}

std::string simplex(const TrajectoryTable& table) {
  const auto& traj = table.trajectory;
  const Point corners[3] = {{kMargin, kSize - kMargin},
                            {kSize - kMargin, kSize - kMargin},
                            {kSize / 2, kSize - kMargin - (kSize - 2 * kMargin) * std::sqrt(3.0) / 2}};
  std::string out = header();
  out += "<polygon fill=\"none\" stroke=\"black\" stroke-width=\"1\" points=\"";
  for (int i = 0; i < 3; ++i) out += (i ? " " : "") + num(corners[i].x) + "," + num(corners[i].y);
  out += "\"/>\n";
  out += text({corners[0].x - 8, corners[0].y + 20}, "middle", table.species[0]);
  out += text({corners[1].x + 8, corners[1].y + 20}, "middle", table.species[1]);
  out += text({corners[2].x, corners[2].y - 10}, "middle", table.species[2]);

  std::vector<Point> pts;
  for (auto s : decimate(traj.states.size())) {
    const auto& x = traj.states[s];
    double total = x[0] + x[1] + x[2];
    if (!(total > 0)) continue;
    Point p{0, 0};
    for (int i = 0; i < 3; ++i) {
      p.x += x[i] / total * corners[i].x;
      p.y += x[i] / total * corners[i].y;
    }
    pts.push_back(p);
  }
  out += polyline(pts, kPalette[0]);
  if (!pts.empty())
    out += "<circle cx=\"" + num(pts.front().x) + "\" cy=\"" + num(pts.front().y) + "\" r=\"3\" fill=\"black\"/>\n";
  return out + "</svg>\n";
}

std::string time_series(const TrajectoryTable& table) {
  const auto& traj = table.trajectory;
  double t0 = traj.times.front(), t1 = traj.times.back();
  if (!(t1 > t0)) t1 = t0 + 1;
  double ymax = 0;
  for (const auto& x : traj.states)
    for (double v : x) ymax = std::max(ymax, v);
  ymax = ymax > 0 ? ymax * 1.05 : 1.0;

  const double left = kMargin, right = kSize - kMargin, top = kMargin, bottom = kSize - kMargin;
  auto map = [&](double t, double y) {
    return Point{left + (t - t0) / (t1 - t0) * (right - left), bottom - y / ymax * (bottom - top)};
  };

  std::string out = header();
  out += "<rect x=\"" + num(left) + "\" y=\"" + num(top) + "\" width=\"" + num(right - left) + "\" height=\"" +
         num(bottom - top) + "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
  out += text({left, bottom + 20}, "middle", format_number(t0));
  out += text({right, bottom + 20}, "middle", format_number(t1));
  out += text({(left + right) / 2, bottom + 40}, "middle", "t");
  out += text({left - 6, bottom + 5}, "end", "0");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", ymax);
  out += text({left - 6, top + 5}, "end", buf);

  auto idx = decimate(traj.states.size());
  for (std::size_t i = 0; i < table.species.size(); ++i) {
    std::vector<Point> pts;
    for (auto s : idx) pts.push_back(map(traj.times[s], traj.states[s][i]));
    const char* colour = kPalette[i % std::size(kPalette)];
    out += polyline(pts, colour);
    double ly = top + 18 + 18 * static_cast<double>(i);
    out += "<line x1=\"" + num(right - 90) + "\" y1=\"" + num(ly - 5) + "\" x2=\"" + num(right - 70) + "\" y2=\"" +
           num(ly - 5) + "\" stroke=\"" + colour + "\" stroke-width=\"2\"/>\n";
    out += text({right - 64, ly}, "start", table.species[i]);
  }
  return out + "</svg>\n";
}

}  // namespace

Projection parse_projection(std::string_view name) {
  if (name == "simplex") return Projection::Simplex;
  if (name == "time-series") return Projection::TimeSeries;
  throw Error(ErrorKind::InvalidArgument, "unknown projection '" + std::string(name) + "'");
}

std::vector<std::size_t> decimate(std::size_t samples, std::size_t max_points) {
  std::vector<std::size_t> idx;
  if (samples == 0) return idx;
  if (samples <= max_points || max_points < 2) {
    idx.resize(std::min(samples, std::max<std::size_t>(max_points, 1)));
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    if (samples > idx.size()) idx.back() = samples - 1;
    return idx;
  }
  for (std::size_t k = 0; k < max_points; ++k)
    idx.push_back(static_cast<std::size_t>(
        std::llround(static_cast<double>(k) * static_cast<double>(samples - 1) / static_cast<double>(max_points - 1))));
  return idx;
}

std::string render_svg(const TrajectoryTable& table, Projection projection) {
  if (table.trajectory.states.empty()) throw Error(ErrorKind::InvalidArgument, "trajectory has no samples");
  if (projection == Projection::Simplex) {
    if (table.species.size() != 3)
      throw Error(ErrorKind::DimensionMismatch,
                  "simplex projection needs exactly 3 species, got " + std::to_string(table.species.size()));
    return simplex(table);
  }
  return time_series(table);
}

}  // namespace crn
