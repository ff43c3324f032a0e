#include "necklace/report.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <limits>
#include <sstream>

namespace necklace {

namespace {

constexpr int kDigits = std::numeric_limits<double>::max_digits10;

struct Panel {
  double left, top, width, height;
};

struct Range {
  double lo, hi;
};

Range range_of(const std::vector<double> &v) {
  Range r{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (double x : v)
    if (std::isfinite(x)) {
      r.lo = std::min(r.lo, x);
      r.hi = std::max(r.hi, x);
    }
  if (!(r.lo <= r.hi))
    r = {0.0, 1.0};
  if (r.hi == r.lo)
    r.hi = r.lo + 1.0;
  return r;
}

void polyline(std::ostream &out, const Panel &p, const std::vector<double> &xs,
              const std::vector<double> &ys, Range xr, Range yr, const char *colour) {
  out << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.2\" points=\"";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(ys[i]))
      continue;
    const double x = p.left + p.width * (xs[i] - xr.lo) / (xr.hi - xr.lo);
    const double y = p.top + p.height * (1.0 - (ys[i] - yr.lo) / (yr.hi - yr.lo));
    out << x << ',' << y << ' ';
  }
  out << "\"/>\n";
}

void axes(std::ostream &out, const Panel &p, Range xr, Range yr, const std::string &label) {
  out << "<rect x=\"" << p.left << "\" y=\"" << p.top << "\" width=\"" << p.width << "\" height=\""
      << p.height << "\" fill=\"none\" stroke=\"black\"/>\n";
  auto text = [&](double x, double y, const std::string &s, const char *anchor) {
    out << "<text x=\"" << x << "\" y=\"" << y << "\" font-size=\"11\" text-anchor=\"" << anchor
        << "\">" << s << "</text>\n";
  };
  std::ostringstream v;
  v << std::setprecision(4);
  auto fmt = [&v](double x) {
    v.str("");
    v << x;
    return v.str();
  };
  text(p.left, p.top + p.height + 14, fmt(xr.lo), "start");
  text(p.left + p.width, p.top + p.height + 14, fmt(xr.hi), "end");
  text(p.left + p.width / 2, p.top + p.height + 14, "E", "middle");
  text(p.left - 4, p.top + p.height, fmt(yr.lo), "end");
  text(p.left - 4, p.top + 10, fmt(yr.hi), "end");
  text(p.left + 6, p.top + 14, label, "start");
}

} // namespace

void write_curve_csv(std::ostream &out, const SpectralCurve &curve) {
  out << "E,N_loop,N_tilde,N_tilde_se,N_total,gamma,gamma_se\n";
  out << std::setprecision(kDigits);
  for (const auto &p : curve.points)
    out << p.energy << ',' << p.n_loop << ',' << p.n_tilde << ',' << p.n_tilde_se << ','
        << p.n_total << ',' << p.gamma << ',' << p.gamma_se << '\n';
}

void write_jumps_csv(std::ostream &out, const std::vector<JumpRecord> &jumps) {
  out << "E,magnitude,atoms\n";
  out << std::setprecision(kDigits);
  for (const auto &j : jumps) {
    out << j.energy << ',' << j.magnitude << ',';
    for (std::size_t i = 0; i < j.atoms.size(); ++i)
      out << (i ? ";" : "") << j.atoms[i].length << ':' << j.atoms[i].order << ':'
          << j.atoms[i].weight;
    out << '\n';
  }
}

void write_bands_csv(std::ostream &out, const std::vector<BandRow> &rows) {
  out << "E,H,in_band\n";
  out << std::setprecision(kDigits);
  for (const auto &r : rows)
    out << r.energy << ',' << r.discriminant << ',' << (r.in_band ? 1 : 0) << '\n';
}

void write_curve_svg(std::ostream &out, const SpectralCurve &curve, const std::string &title) {
  std::vector<double> e, total, loop, gamma;
  for (const auto &p : curve.points) {
    e.push_back(p.energy);
    total.push_back(p.n_total);
    loop.push_back(p.n_loop);
    gamma.push_back(p.gamma);
  }
  const Range xr = range_of(e);
  std::vector<double> both = total;
  both.insert(both.end(), loop.begin(), loop.end());
  const Range nr = range_of(both);
  const Range gr = range_of(gamma);
  const Panel top{60, 30, 620, 220};
  const Panel bottom{60, 300, 620, 220};

  out << std::setprecision(6);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" height=\"560\" "
         "font-family=\"sans-serif\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"360\" y=\"18\" font-size=\"13\" text-anchor=\"middle\">" << title
      << "</text>\n";
  axes(out, top, xr, nr, "N (black), N_loop (grey)");
  polyline(out, top, e, loop, xr, nr, "#999999");
  polyline(out, top, e, total, xr, nr, "black");
  axes(out, bottom, xr, gr, "gamma");
  polyline(out, bottom, e, gamma, xr, gr, "#1f4e9c");
  out << "</svg>\n";
}

std::string svg_path_for(const std::string &path) {
  return std::filesystem::path(path).replace_extension(".svg").string();
}

} // namespace necklace
