#pragma once

#include <cstddef>
#include <limits>
#include <vector>

namespace hv {

enum class Limiter {
  None,        ///< unlimited reconstruction; exact on quadratics, may go negative
  Positivity,  ///< reconstruction scaled toward the cell mean only where it dips below 0
  Bounded,     ///< additionally keeps the reconstruction below `upper_bound`
};

enum class LineBoundary { ZeroExtend, Periodic };

/// Conservative semi-Lagrangian remap of cell averages under a translation.
///
/// Order 1 uses a piecewise-linear reconstruction with centred slopes, order 2
/// the piecewise-parabolic one with fourth-order edge values. The unlimited
/// parabolic remap reproduces quadratics, which makes the zeroth, first and
/// second moments of a translated line exact (up to edge truncation).
struct RemapKernel {
  int order = 2;
  Limiter limiter = Limiter::Positivity;
  double upper_bound = std::numeric_limits<double>::infinity();
  /// On zero-extended lines, rescale each remapped line by (1 + c0 + c1 x +
  /// c2 x^2) so its zeroth, first and second moments equal those of the
  /// exactly translated line minus what left the ends. Undoes the moment
  /// defect of limiting and of the truncated end stencils. Skipped for
  /// integer shifts, whenever the factor would turn negative, and under the
  /// Bounded limiter whenever it would lift a value past `upper_bound`.
  bool conserve_moments = true;
};

/// Scratch buffers reused across calls.
struct RemapWorkspace {
  std::vector<double> padded;
  std::vector<double> out;
  /// Per-lane moments of the mass pushed past the ends, in cell-index
  /// coordinates: sum m, sum m j, sum m j^2 over destination cells j.
  std::vector<double> lost0, lost1, lost2;
  std::vector<double> target;
};

/// Translates `lanes` interleaved lines in place by `shift` cells.
///
/// Element `j` of lane `l` lives at `data[j * stride + l]`; lanes are
/// contiguous. Returns the mass (sum of cell averages) pushed past the ends
/// of the lines; always 0 for periodic lines.
double remap_lines(double* data, int n, std::ptrdiff_t stride, int lanes, double shift, const RemapKernel& kernel,
                   LineBoundary boundary, RemapWorkspace& ws);

}  // namespace hv
