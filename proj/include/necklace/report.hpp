#ifndef NECKLACE_REPORT_HPP
#define NECKLACE_REPORT_HPP

#include "necklace/ids.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace necklace {

struct BandRow {
  double energy;
  double discriminant;
  bool in_band;
};

/// Header `E,N_loop,N_tilde,N_tilde_se,N_total,gamma,gamma_se`; 17 significant digits.
void write_curve_csv(std::ostream &out, const SpectralCurve &curve);

/// Header `E,magnitude,atoms`; atoms as `s:k:p` joined by ';'.
void write_jumps_csv(std::ostream &out, const std::vector<JumpRecord> &jumps);

/// Header `E,H,in_band`.
void write_bands_csv(std::ostream &out, const std::vector<BandRow> &rows);

/// Static two-panel plot: N_total (with N_loop) over E, and gamma over E.
void write_curve_svg(std::ostream &out, const SpectralCurve &curve, const std::string &title);

/// `path` with its extension replaced by `.svg`.
std::string svg_path_for(const std::string &path);

} // namespace necklace

#endif // NECKLACE_REPORT_HPP
