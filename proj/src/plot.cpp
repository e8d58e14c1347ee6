#include "wco/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace wco {

namespace {

constexpr const char* kFillOuter = "#d6e2f0";
constexpr const char* kFillSet = "#4a78b5";
constexpr const char* kStrokeSf = "#c0392b";
constexpr const char* kSampleIn = "#1f3f6e";
constexpr const char* kSampleUnknown = "#e69f00";

std::string f3(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '&') out += "&amp;";
    else if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else out += c;
  }
  return out;
}

struct Canvas {
  double hw;
  int size;
  double scale() const { return size / (2.0 * hw); }
  double px(double x) const { return (x + hw) * scale(); }
  double py(double y) const { return (hw - y) * scale(); }
  double reach() const { return hw * std::sqrt(2.0); }
};

struct Legend {
  bool outer = false, set = false, sf = false, in = false, unknown = false;
};

class Painter {
 public:
  Painter(const Canvas& c, double tol, int resolution) : c_(c), tol_(tol), res_(resolution) {}

  // Returns true when something lands inside the window.
  bool fill(const SpectralSet& s, const char* color, bool& used_sample_in, bool& used_unknown) {
    if (!s.is_radial()) return sample(s, used_sample_in, used_unknown);
    bool visible = false;
    const double cx = c_.px(0), cy = c_.py(0), k = c_.scale();
    for (auto [r1, r2] : s.modulus_intervals()) {
      if (!std::isfinite(r2) || r1 > c_.reach()) continue;
      visible = true;
      if (r2 <= 0.0) {
        out_ << "<circle cx=\"" << f3(cx) << "\" cy=\"" << f3(cy) << "\" r=\"2.500\" fill=\"" << color
             << "\"/>\n";
      } else if (r1 == r2) {
        circle_stroke(r1, color, 2.0);
      } else if (r1 <= 0.0) {
        out_ << "<circle cx=\"" << f3(cx) << "\" cy=\"" << f3(cy) << "\" r=\"" << f3(r2 * k) << "\" fill=\""
             << color << "\"/>\n";
      } else {
        out_ << "<path fill-rule=\"evenodd\" fill=\"" << color << "\" d=\"" << ring(r2) << ' ' << ring(r1)
             << "\"/>\n";
      }
    }
    return visible;
  }

  bool stroke_boundaries(const SpectralSet& s, const char* color, bool& used_sample_in, bool& used_unknown) {
    if (!s.is_radial()) return sample(s, used_sample_in, used_unknown);
    bool visible = false;
    for (auto [r1, r2] : s.modulus_intervals()) {
      for (double r : {r1, r2}) {
        if (!std::isfinite(r) || r > c_.reach()) continue;
        visible = true;
        if (r <= 0.0) {
          out_ << "<circle cx=\"" << f3(c_.px(0)) << "\" cy=\"" << f3(c_.py(0))
               << "\" r=\"2.500\" fill=\"" << color << "\"/>\n";
        } else {
          circle_stroke(r, color, 1.5);
        }
        if (r1 == r2) break;
      }
    }
    return visible;
  }

  std::string str() const { return out_.str(); }

 private:
  std::string ring(double r) const {
    const double cx = c_.px(0), cy = c_.py(0), R = r * c_.scale();
    return "M " + f3(cx + R) + ' ' + f3(cy) + " A " + f3(R) + ' ' + f3(R) + " 0 1 0 " + f3(cx - R) + ' ' +
           f3(cy) + " A " + f3(R) + ' ' + f3(R) + " 0 1 0 " + f3(cx + R) + ' ' + f3(cy) + " Z";
  }

  void circle_stroke(double r, const char* color, double width) {
    out_ << "<circle cx=\"" << f3(c_.px(0)) << "\" cy=\"" << f3(c_.py(0)) << "\" r=\"" << f3(r * c_.scale())
         << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << f3(width) << "\"/>\n";
  }

  bool sample(const SpectralSet& s, bool& used_in, bool& used_unknown) {
    bool visible = false;
    const int n = std::max(res_, 2);
    const double step = 2.0 * c_.hw / (n - 1);
    const double cell = std::max(1.0, 0.6 * step * c_.scale());
    for (int iy = 0; iy < n; ++iy) {
      for (int ix = 0; ix < n; ++ix) {
        const cplx z{-c_.hw + ix * step, c_.hw - iy * step};
        const Membership m = s.membership(z, tol_);
        if (m == Membership::Out) continue;
        visible = true;
        const char* color = m == Membership::In ? kSampleIn : kSampleUnknown;
        (m == Membership::In ? used_in : used_unknown) = true;
        out_ << "<rect x=\"" << f3(c_.px(z.real()) - cell / 2) << "\" y=\"" << f3(c_.py(z.imag()) - cell / 2)
             << "\" width=\"" << f3(cell) << "\" height=\"" << f3(cell) << "\" fill=\"" << color << "\"/>\n";
      }
    }
    return visible;
  }

  Canvas c_;
  double tol_;
  int res_;
  std::ostringstream out_;
};

double max_radius(const SpectralSet& s) {
  if (!s.is_radial()) return 0.0;
  double r = 0.0;
  for (auto [a, b] : s.modulus_intervals())
    if (std::isfinite(b)) r = std::max(r, b);
  return r;
}

double auto_half_width(const SpectrumReport& rep) {
  double r = std::isfinite(rep.rho) ? rep.rho : 0.0;
  for (const auto& [name, e] : rep.entries()) {
    r = std::max(r, max_radius(e->set));
    if (e->outer) r = std::max(r, max_radius(*e->outer));
  }
  if (r <= 0.0) r = 1.0;
  return 1.2 * r;
}

}  // namespace

PlotResult plot_report(const SpectrumReport& rep, const PlotOptions& opts) {
  const double hw = opts.half_width.value_or(auto_half_width(rep));
  if (!(hw > 0.0) || !std::isfinite(hw)) throw DegenerateInput("plot window half-width must be positive");
  const Canvas c{hw, opts.canvas};
  Painter p(c, opts.tol, opts.resolution);
  Legend legend;
  bool visible = false;

  const SpectrumEntry& sigma = rep.sigma;
  if (sigma.outer && sigma.status != Knowledge::Exact) {
    legend.outer = p.fill(*sigma.outer, kFillOuter, legend.in, legend.unknown) || legend.outer;
    visible = visible || legend.outer;
  }
  if (sigma.status != Knowledge::Unknown) {
    legend.set = p.fill(sigma.set, kFillSet, legend.in, legend.unknown);
    visible = visible || legend.set;
  }
  if (rep.sigma_sf.status != Knowledge::Unknown) {
    legend.sf = p.stroke_boundaries(rep.sigma_sf.set, kStrokeSf, legend.in, legend.unknown);
    visible = visible || legend.sf;
  }

  PlotResult res;
  if (!visible) res.warnings.push_back("window excludes every plotted spectrum");

  const int S = opts.canvas;
  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << S << "\" height=\"" << S
      << "\" viewBox=\"0 0 " << S << ' ' << S << "\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << S << "\" height=\"" << S << "\" fill=\"#ffffff\"/>\n"
      << "<line x1=\"0.000\" y1=\"" << f3(c.py(0)) << "\" x2=\"" << f3(S) << "\" y2=\"" << f3(c.py(0))
      << "\" stroke=\"#bbbbbb\" stroke-width=\"0.750\"/>\n"
      << "<line x1=\"" << f3(c.px(0)) << "\" y1=\"0.000\" x2=\"" << f3(c.px(0)) << "\" y2=\"" << f3(S)
      << "\" stroke=\"#bbbbbb\" stroke-width=\"0.750\"/>\n";
  if (visible) svg << p.str();
  svg << "<circle cx=\"" << f3(c.px(0)) << "\" cy=\"" << f3(c.py(0)) << "\" r=\"" << f3(c.scale())
      << "\" fill=\"none\" stroke=\"#777777\" stroke-width=\"0.750\" stroke-dasharray=\"4 3\"/>\n";

  std::vector<std::pair<const char*, std::string>> items;
  if (visible) {
    if (legend.outer) items.push_back({kFillOuter, "sigma: enclosing set"});
    if (legend.set)
      items.push_back({kFillSet, sigma.status == Knowledge::Exact ? "sigma" : "sigma: certified part"});
    if (legend.sf) items.push_back({kStrokeSf, "sigma_sf"});
    if (legend.in) items.push_back({kSampleIn, "sampled: In"});
    if (legend.unknown) items.push_back({kSampleUnknown, "sampled: Unknown"});
  }
  svg << "<text x=\"8.000\" y=\"18.000\" font-family=\"monospace\" font-size=\"12\">" << escape(rep.case_tag)
      << "  window [" << f3(-hw) << ", " << f3(hw) << "]^2</text>\n";
  double y = S - 10.0 - 16.0 * static_cast<double>(items.size());
  for (const auto& [color, label] : items) {
    y += 16.0;
    svg << "<rect x=\"8.000\" y=\"" << f3(y - 10.0) << "\" width=\"10.000\" height=\"10.000\" fill=\"" << color
        << "\"/>\n"
        << "<text x=\"24.000\" y=\"" << f3(y) << "\" font-family=\"monospace\" font-size=\"11\">"
        << escape(label) << "</text>\n";
  }
  if (!visible)
    svg << "<text x=\"8.000\" y=\"" << f3(S - 10.0)
        << "\" font-family=\"monospace\" font-size=\"11\">window excludes every plotted spectrum</text>\n";
  svg << "</svg>\n";
  res.svg = svg.str();
  return res;
}

}  // namespace wco
