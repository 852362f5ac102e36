#include "fanikit/svg.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace fanikit {

namespace {

using P = std::array<double, 2>;

class Canvas {
 public:
  explicit Canvas(double extent) : extent_(extent) {
    out_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size_ << "\" height=\"" << size_ << "\" viewBox=\"0 0 "
         << size_ << " " << size_ << "\">\n"
         << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
         << "<clipPath id=\"box\"><rect width=\"" << size_ << "\" height=\"" << size_ << "\"/></clipPath>\n"
         << "<g clip-path=\"url(#box)\">\n";
    line({-extent, 0}, {extent, 0}, "#ddd", 1);
    line({0, -extent}, {0, extent}, "#ddd", 1);
  }

  void polygon(const std::vector<P>& pts, const std::string& fill) {
    out_ << "<polygon fill=\"" << fill << "\" fill-opacity=\"0.35\" stroke=\"none\" points=\"";
    for (const auto& p : pts) out_ << x(p) << "," << y(p) << " ";
    out_ << "\"/>\n";
  }
  void line(P a, P b, const std::string& color, double width) {
    out_ << "<line x1=\"" << x(a) << "\" y1=\"" << y(a) << "\" x2=\"" << x(b) << "\" y2=\"" << y(b) << "\" stroke=\"" << color
         << "\" stroke-width=\"" << width << "\"/>\n";
  }
  void dot(P p, const std::string& color, double r) {
    out_ << "<circle cx=\"" << x(p) << "\" cy=\"" << y(p) << "\" r=\"" << r << "\" fill=\"" << color << "\"/>\n";
  }
  void text(P p, const std::string& s) {
    out_ << "<text x=\"" << x(p) + 4 << "\" y=\"" << y(p) - 4 << "\" font-size=\"11\" font-family=\"monospace\">" << s << "</text>\n";
  }
  std::string finish() {
    out_ << "</g>\n</svg>\n";
    return out_.str();
  }
  double far() const { return 4 * extent_; }

 private:
  double x(P p) const { return round2((p[0] + extent_) / (2 * extent_) * size_); }
  double y(P p) const { return round2((extent_ - p[1]) / (2 * extent_) * size_); }
  static double round2(double v) { return static_cast<double>(static_cast<long long>(v * 100 + (v < 0 ? -0.5 : 0.5))) / 100; }

  double extent_;
  int size_ = 480;
  std::ostringstream out_;
};

P point(const RatVector& v) { return {v[0].get_d(), v[1].get_d()}; }

double cross(P o, P a, P b) { return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]); }

std::vector<P> hull(std::vector<P> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<P> h(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i - 1]) <= 0) --k;
    h[k++] = pts[i - 1];
  }
  h.resize(k - 1);
  return h;
}

// Truncation of an unbounded region far outside the view.
std::vector<P> truncated(const VRep& v, double far) {
  std::vector<P> pts;
  std::vector<P> dirs;
  for (const auto& r : v.rays) dirs.push_back(point(r));
  for (const auto& l : v.lineality) {
    dirs.push_back(point(l));
    dirs.push_back({-point(l)[0], -point(l)[1]});
  }
  for (const auto& u : v.vertices) {
    const P p = point(u);
    pts.push_back(p);
    for (const auto& d : dirs) pts.push_back({p[0] + far * d[0], p[1] + far * d[1]});
    for (std::size_t a = 0; a < dirs.size(); ++a)
      for (std::size_t b = a + 1; b < dirs.size(); ++b)
        pts.push_back({p[0] + far * (dirs[a][0] + dirs[b][0]), p[1] + far * (dirs[a][1] + dirs[b][1])});
  }
  return hull(pts);
}

void draw_cell(Canvas& c, const VRep& v, std::size_t dim, const std::string& color, const std::string& label) {
  const auto pts = truncated(v, c.far());
  if (pts.empty()) return;
  if (dim == 0) {
    c.dot(pts.front(), color, 4);
  } else if (dim == 1) {
    c.line(pts.front(), pts.back(), color, 2.5);
  } else {
    c.polygon(pts, color);
  }
  if (!label.empty() && !v.vertices.empty()) c.text(point(v.relative_interior_point()), label);
}

void require_rank2(std::size_t n) {
  if (n != 2) throw std::invalid_argument("svg: only rank-2 pictures are supported");
}

}  // namespace

std::string svg_fan(const Fan& fan, double extent) {
  require_rank2(fan.rank());
  Canvas c(extent);
  for (std::size_t i = 0; i < fan.size(); ++i) {
    if (fan.cone_dim(i) != 2) continue;
    std::vector<P> pts{{0, 0}};
    for (auto r : fan.cones()[i]) pts.push_back({c.far() * fan.rays()[r][0].get_d(), c.far() * fan.rays()[r][1].get_d()});
    c.polygon(hull(pts), "#6a9fd4");
  }
  for (const auto& r : fan.rays()) {
    const P d{r[0].get_d(), r[1].get_d()};
    c.line({0, 0}, {c.far() * d[0], c.far() * d[1]}, "#1f4e79", 2);
    c.dot(d, "#1f4e79", 3);
  }
  c.dot({0, 0}, "black", 3);
  return c.finish();
}

std::string svg_dual_complex(const DualComplex& psi, double extent) {
  require_rank2(psi.ambient);
  Canvas c(extent);
  for (std::size_t d = 3; d-- > 0;)
    for (const auto& cell : psi.cells)
      if (cell.dim == d) draw_cell(c, cell.shape, d, d == 2 ? "#f2c14e" : d == 1 ? "#d1495b" : "#00798c", d == 0 ? cell.label : "");
  return c.finish();
}

std::string svg_tropical(const TropicalComplex& pi, const SampleCloud* cloud, double extent) {
  require_rank2(pi.ambient);
  Canvas c(extent);
  if (cloud)
    for (const auto& p : cloud->points) c.dot({p.log[0] / cloud->log_t, p.log[1] / cloud->log_t}, "#999", 1.2);
  for (std::size_t d = 2; d-- > 0;)
    for (const auto& cell : pi.cells)
      if (cell.dim == d) draw_cell(c, cell.shape, d, d == 1 ? "#d1495b" : "#00798c", "");
  return c.finish();
}

}  // namespace fanikit
