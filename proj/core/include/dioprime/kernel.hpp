#pragma once

namespace dioprime {

/// Parameters of the smoothing kernel φ. φ is the indicator of [-a, a]
/// convolved with the density of a sum of `order()` independent uniforms on
/// [-h, h], h = b / order(). It equals 1 on |y| <= a - b, vanishes on
/// |y| >= a + b, and lies strictly between 0 and 1 in between.
///
/// The default order r makes φ C^{r-1} and matches the Fourier bound
/// min(2a, 1/(π|x|), (1/(π|x|))(r/(2π|x|b))^r) exactly. With `strict_smooth`
/// the order is r + 1, which makes φ genuinely C^r; the last bound branch
/// then reads (1/(π|x|))((r+1)/(2π|x|b))^{r+1}.
struct KernelParams {
  double a = 0.0;
  double b = 0.0;
  int r = 1;
  bool strict_smooth = false;

  int order() const { return strict_smooth ? r + 1 : r; }
  double half_width() const { return b / order(); }
  /// Throws std::invalid_argument unless 0 < b < a/4 and r >= 1.
  void validate() const;
};

/// (9ε/10, ε/10, floor(log X)). Requires eps > 0 and X >= 3.
KernelParams kernel_from_instance(double eps, double X);

/// φ(y) in [0, 1], evaluated in closed form from the Irwin–Hall distribution.
/// Supported for order() <= 40.
double phi_eval(const KernelParams& p, double y);

/// Φ(x) = ∫ e(-xy) φ(y) dy = sin(2πax)/(πx) · (sin(2πhx)/(2πhx))^order, Φ(0) = 2a.
double phi_fourier(const KernelParams& p, double x);

/// The three-branch bound on |Φ(x)|.
double phi_fourier_bound(const KernelParams& p, double x);

inline constexpr int kMaxPointwiseOrder = 40;

}  // namespace dioprime
