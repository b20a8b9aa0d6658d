#include "nseobs/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "nseobs/io.hpp"

namespace nseobs {

namespace {
const char* kColors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                         "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
}

void LinePlot::add_series(const std::string& name, const std::vector<double>& x,
                          const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("LinePlot: series length mismatch");
  series_.push_back({name, x, y});
}

std::string LinePlot::render() const {
  const double W = 720, H = 480, ml = 80, mr = 20, mt = 40, mb = 60;
  auto tx = [&](double v) { return logx_ ? std::log10(v) : v; };
  auto ty = [&](double v) { return logy_ ? std::log10(v) : v; };

  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& s : series_)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (logx_ && !(s.x[i] > 0.0)) continue;
      if (logy_ && !(s.y[i] > 0.0)) continue;
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      xmin = std::min(xmin, tx(s.x[i]));
      xmax = std::max(xmax, tx(s.x[i]));
      ymin = std::min(ymin, ty(s.y[i]));
      ymax = std::max(ymax, ty(s.y[i]));
    }
  if (xmin > xmax) { xmin = 0; xmax = 1; }
  if (ymin > ymax) { ymin = 0; ymax = 1; }
  if (xmax - xmin < 1e-12) { xmax += 0.5; xmin -= 0.5; }
  if (ymax - ymin < 1e-12) { ymax += 0.5; ymin -= 0.5; }

  auto px = [&](double v) { return ml + (tx(v) - xmin) / (xmax - xmin) * (W - ml - mr); };
  auto py = [&](double v) { return H - mb - (ty(v) - ymin) / (ymax - ymin) * (H - mt - mb); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
     << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << title_
     << "</text>\n";
  os << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << W - ml - mr << "\" height=\""
     << H - mt - mb << "\" fill=\"none\" stroke=\"black\"/>\n";

  // axis ticks: 6 linear divisions, or decades for log axes
  auto emit_xtick = [&](double v) {
    double p = px(v);
    os << "<line x1=\"" << p << "\" y1=\"" << H - mb << "\" x2=\"" << p << "\" y2=\"" << H - mb + 5
       << "\" stroke=\"black\"/>\n";
    std::ostringstream lab;
    if (logx_) lab << "1e" << static_cast<int>(std::lround(std::log10(v)));
    else lab << v;
    os << "<text x=\"" << p << "\" y=\"" << H - mb + 20 << "\" text-anchor=\"middle\" font-size=\"11\">"
       << lab.str() << "</text>\n";
  };
  auto emit_ytick = [&](double v) {
    double p = py(v);
    os << "<line x1=\"" << ml - 5 << "\" y1=\"" << p << "\" x2=\"" << ml << "\" y2=\"" << p
       << "\" stroke=\"black\"/>\n";
    std::ostringstream lab;
    if (logy_) lab << "1e" << static_cast<int>(std::lround(std::log10(v)));
    else lab << v;
    os << "<text x=\"" << ml - 8 << "\" y=\"" << p + 4 << "\" text-anchor=\"end\" font-size=\"11\">"
       << lab.str() << "</text>\n";
  };
  if (logx_) {
    for (int d = static_cast<int>(std::ceil(xmin)); d <= static_cast<int>(std::floor(xmax)); ++d)
      emit_xtick(std::pow(10.0, d));
  } else {
    for (int i = 0; i <= 6; ++i) emit_xtick(xmin + (xmax - xmin) * i / 6.0);
  }
  if (logy_) {
    int lo = static_cast<int>(std::ceil(ymin)), hi = static_cast<int>(std::floor(ymax));
    int stride = std::max(1, (hi - lo) / 10);
    for (int d = lo; d <= hi; d += stride) emit_ytick(std::pow(10.0, d));
  } else {
    for (int i = 0; i <= 6; ++i) emit_ytick(ymin + (ymax - ymin) * i / 6.0);
  }
  os << "<text x=\"" << W / 2 << "\" y=\"" << H - 15 << "\" text-anchor=\"middle\" font-size=\"13\">"
     << xlabel_ << "</text>\n";
  os << "<text x=\"18\" y=\"" << H / 2 << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 "
     << H / 2 << ")\">" << ylabel_ << "</text>\n";

  for (std::size_t si = 0; si < series_.size(); ++si) {
    const auto& s = series_[si];
    const char* color = kColors[si % 8];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (logx_ && !(s.x[i] > 0.0)) continue;
      if (logy_ && !(s.y[i] > 0.0)) continue;
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      os << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
    }
    os << "\"/>\n";
    double lx = W - mr - 150, ly = mt + 20 + 18 * si;
    os << "<line x1=\"" << lx << "\" y1=\"" << ly - 4 << "\" x2=\"" << lx + 24 << "\" y2=\""
       << ly - 4 << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << lx + 30 << "\" y=\"" << ly << "\" font-size=\"12\">" << s.name
       << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

void LinePlot::write(const std::string& path) const { atomic_write(path, render()); }

}  // namespace nseobs
