#include "hallvlasov/remap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hv {

namespace {

/// Parabola p(xi) = aL + xi (d + a6 (1 - xi)), xi in [0, 1], with cell mean
/// aL + d/2 + a6/6.
struct Parabola {
  double aL, aR, a6;
};

void extrema(const Parabola& p, double& lo, double& hi) {
  lo = std::min(p.aL, p.aR);
  hi = std::max(p.aL, p.aR);
  if (p.a6 != 0.0) {
    const double d = p.aR - p.aL;
    const double xi = (d + p.a6) / (2.0 * p.a6);
    if (xi > 0.0 && xi < 1.0) {
      const double v = p.aL + (d + p.a6) * (d + p.a6) / (4.0 * p.a6);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
}

/// Scales the reconstruction toward the mean so it stays in [0, upper].
void limit(Parabola& p, double mean, const RemapKernel& k) {
  if (k.limiter == Limiter::None) return;
  if (mean <= 0.0) {
    p = {mean, mean, 0.0};
    return;
  }
  double lo = 0.0, hi = 0.0;
  extrema(p, lo, hi);
  double theta = 1.0;
  if (lo < 0.0) theta = std::min(theta, mean / (mean - lo));
  if (k.limiter == Limiter::Bounded && hi > k.upper_bound) {
    theta = mean >= k.upper_bound ? 0.0 : std::min(theta, (k.upper_bound - mean) / (hi - mean));
  }
  if (theta < 1.0) {
    p.aL = mean + theta * (p.aL - mean);
    p.aR = mean + theta * (p.aR - mean);
    p.a6 *= theta;
  }
}

/// Rescales `lanes` remapped lines so their moments in x = (j - c) / h match
/// `target` (per lane, 3 entries each).
void fix_moments(double* out, int n, std::size_t lanes, const std::vector<double>& target, double upper) {
  const double c = 0.5 * (n - 1), h = 0.5 * n;
  for (std::size_t l = 0; l < lanes; ++l) {
    double s[5] = {0.0, 0.0, 0.0, 0.0, 0.0};
    for (int j = 0; j < n; ++j) {
      const double x = (j - c) / h;
      const double v = out[j * lanes + l];
      s[0] += v;
      s[1] += v * x;
      s[2] += v * x * x;
      s[3] += v * x * x * x;
      s[4] += v * x * x * x * x;
    }
    const double T0 = target[3 * l], T1 = target[3 * l + 1], T2 = target[3 * l + 2];
    const double r0 = T0 - s[0];
    const double r1 = T1 - s[1];
    const double r2 = T2 - s[2];
    if (r0 == 0.0 && r1 == 0.0 && r2 == 0.0) continue;
    // Gram system [s_{a+b}] k = r
    const double g00 = s[0], g01 = s[1], g02 = s[2], g11 = s[2], g12 = s[3], g22 = s[4];
    const double m00 = g11 * g22 - g12 * g12;
    const double m01 = g02 * g12 - g01 * g22;
    const double m02 = g01 * g12 - g02 * g11;
    const double det = g00 * m00 + g01 * m01 + g02 * m02;
    if (!(std::abs(det) > 1e-12 * std::abs(g00 * g11 * g22)) || !std::isfinite(det)) continue;
    const double m11 = g00 * g22 - g02 * g02;
    const double m12 = g01 * g02 - g00 * g12;
    const double m22 = g00 * g11 - g01 * g01;
    const double k0 = (m00 * r0 + m01 * r1 + m02 * r2) / det;
    const double k1 = (m01 * r0 + m11 * r1 + m12 * r2) / det;
    const double k2 = (m02 * r0 + m12 * r1 + m22 * r2) / det;
    bool ok = true;
    for (int j = 0; j < n && ok; ++j) {
      const double x = (j - c) / h;
      const double factor = 1.0 + k0 + x * (k1 + x * k2);
      ok = factor >= 0.0 && out[j * lanes + l] * factor <= std::max(upper, out[j * lanes + l]);
    }
    if (!ok) continue;
    for (int j = 0; j < n; ++j) {
      const double x = (j - c) / h;
      out[j * lanes + l] *= 1.0 + k0 + x * (k1 + x * k2);
    }
  }
}

}  // namespace

double remap_lines(double* data, int n, std::ptrdiff_t stride, int lanes, double shift, const RemapKernel& kernel,
                   LineBoundary boundary, RemapWorkspace& ws) {
  const std::size_t L = static_cast<std::size_t>(lanes);
  if (boundary == LineBoundary::ZeroExtend) {
    ws.lost0.assign(L, 0.0);
    ws.lost1.assign(L, 0.0);
    ws.lost2.assign(L, 0.0);
  }
  if (shift == 0.0 || n == 0) return 0.0;
  const double whole = std::floor(shift);
  const double beta = shift - whole;
  const long kshift = static_cast<long>(whole);
  const bool periodic = boundary == LineBoundary::Periodic;

  ws.padded.assign((n + 4) * L, 0.0);
  ws.out.assign(n * L, 0.0);
  double* pad = ws.padded.data();
  double* out = ws.out.data();
  for (int j = 0; j < n; ++j) std::copy_n(data + j * stride, L, pad + (j + 2) * L);
  if (periodic) {
    for (int g = 0; g < 2; ++g) {
      std::copy_n(data + ((n - 2 + g) % n + n) % n * stride, L, pad + g * L);
      std::copy_n(data + (g % n) * stride, L, pad + (n + 2 + g) * L);
    }
  }

  const bool fix = !periodic && kernel.conserve_moments && beta > 0.0;
  std::vector<double>& target = ws.target;
  if (fix) {
    // moments of the exactly translated line, centred coordinates
    const double c = 0.5 * (n - 1), h = 0.5 * n;
    target.assign(3 * L, 0.0);
    for (int j = 0; j < n; ++j) {
      const double y = (j - c + shift) / h;
      const double* row = data + j * stride;
      for (std::size_t l = 0; l < L; ++l) {
        target[3 * l] += row[l];
        target[3 * l + 1] += row[l] * y;
        target[3 * l + 2] += row[l] * y * y;
      }
    }
  }

  double lost = 0.0;
  auto drop = [&](std::size_t l, long dest, double m) {
    lost += m;
    ws.lost0[l] += m;
    ws.lost1[l] += m * dest;
    ws.lost2[l] += m * static_cast<double>(dest) * dest;
  };
  for (int j = 0; j < n; ++j) {
    const double* fm2 = pad + j * L;
    const double* fm1 = fm2 + L;
    const double* f0 = fm1 + L;
    const double* fp1 = f0 + L;
    const double* fp2 = fp1 + L;

    long t0 = j + kshift;
    long t1 = t0 + 1;
    bool in0 = true, in1 = true;
    if (periodic) {
      t0 = ((t0 % n) + n) % n;
      t1 = ((t1 % n) + n) % n;
    } else {
      in0 = t0 >= 0 && t0 < n;
      in1 = t1 >= 0 && t1 < n;
    }

    for (std::size_t l = 0; l < L; ++l) {
      const double mean = f0[l];
      double moved = 0.0;
      if (beta > 0.0) {
        Parabola p;
        if (kernel.order == 2) {
          p.aL = (7.0 * (fm1[l] + mean) - (fm2[l] + fp1[l])) / 12.0;
          p.aR = (7.0 * (mean + fp1[l]) - (fm1[l] + fp2[l])) / 12.0;
          p.a6 = 6.0 * (mean - 0.5 * (p.aL + p.aR));
        } else {
          const double slope = 0.5 * (fp1[l] - fm1[l]);
          p = {mean - 0.5 * slope, mean + 0.5 * slope, 0.0};
        }
        limit(p, mean, kernel);
        const double d = p.aR - p.aL;
        moved = beta * (p.aR - 0.5 * beta * (d - (1.0 - 2.0 * beta / 3.0) * p.a6));
        if (kernel.limiter != Limiter::None) moved = std::clamp(moved, 0.0, std::max(mean, 0.0));
      }
      const double stay = mean - moved;
      if (in0) {
        out[t0 * L + l] += stay;
      } else {
        drop(l, t0, stay);
      }
      if (in1) {
        out[t1 * L + l] += moved;
      } else {
        drop(l, t1, moved);
      }
    }
  }
  if (fix) {
    const double c = 0.5 * (n - 1), h = 0.5 * n;
    for (std::size_t l = 0; l < L; ++l) {
      const double m0 = ws.lost0[l], m1 = ws.lost1[l], m2 = ws.lost2[l];
      target[3 * l] -= m0;
      target[3 * l + 1] -= (m1 - c * m0) / h;
      target[3 * l + 2] -= (m2 - 2.0 * c * m1 + c * c * m0) / (h * h);
    }
    const double upper = kernel.limiter == Limiter::Bounded ? kernel.upper_bound : std::numeric_limits<double>::infinity();
    fix_moments(out, n, L, target, upper);
  }
  for (int j = 0; j < n; ++j) std::copy_n(out + j * L, L, data + j * stride);
  return lost;
}

}  // namespace hv
