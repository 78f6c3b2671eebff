#include "leafpat/rng.hpp"

#include <cmath>

namespace leafpat {

namespace {
constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

constexpr double kLn2 = 0.69314718055994530941723212145818; // rounds to nearest double
constexpr double kHalfPi = 1.5707963267948966192313216916398;
} // namespace

std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t counter_bits(std::uint64_t seed, std::uint64_t counter) noexcept {
  return mix64(seed + (counter + 1) * kGamma);
}

double counter_uniform(std::uint64_t seed, std::uint64_t counter) noexcept {
  // Top 53 bits, then shift into (0, 1]: u = (bits53 + 1) * 2^-53.
  const std::uint64_t bits53 = counter_bits(seed, counter) >> 11;
  return static_cast<double>(bits53 + 1) * 0x1p-53;
}

double det_ln(double x) noexcept {
  // x = m * 2^e with m in [0.5, 1); renormalize so m is in [sqrt(1/2), sqrt(2)).
  int e = 0;
  double m = std::frexp(x, &e);
  if (m < 0.70710678118654752440) {
    m *= 2.0;
    e -= 1;
  }
  // ln m = 2 atanh(z), z = (m-1)/(m+1), |z| <= 0.1716 -> 13 odd terms suffice.
  const double z = (m - 1.0) / (m + 1.0);
  const double z2 = z * z;
  double s = 1.0 / 25.0;
  s = s * z2 + 1.0 / 23.0;
  s = s * z2 + 1.0 / 21.0;
  s = s * z2 + 1.0 / 19.0;
  s = s * z2 + 1.0 / 17.0;
  s = s * z2 + 1.0 / 15.0;
  s = s * z2 + 1.0 / 13.0;
  s = s * z2 + 1.0 / 11.0;
  s = s * z2 + 1.0 / 9.0;
  s = s * z2 + 1.0 / 7.0;
  s = s * z2 + 1.0 / 5.0;
  s = s * z2 + 1.0 / 3.0;
  s = s * z2 + 1.0;
  return static_cast<double>(e) * kLn2 + 2.0 * z * s;
}

namespace {

// cos(y) and sin(y) Taylor kernels for y = (pi/2)*r, r in [0, 1].
double cos_kernel(double r) noexcept {
  const double y = kHalfPi * r;
  const double y2 = y * y;
  double s = -1.0 / 1124000727777607680000.0; // -1/22!
  s = s * y2 + 1.0 / 2432902008176640000.0;   //  1/20!
  s = s * y2 - 1.0 / 6402373705728000.0;      // -1/18!
  s = s * y2 + 1.0 / 20922789888000.0;        //  1/16!
  s = s * y2 - 1.0 / 87178291200.0;           // -1/14!
  s = s * y2 + 1.0 / 479001600.0;             //  1/12!
  s = s * y2 - 1.0 / 3628800.0;               // -1/10!
  s = s * y2 + 1.0 / 40320.0;                 //  1/8!
  s = s * y2 - 1.0 / 720.0;                   // -1/6!
  s = s * y2 + 1.0 / 24.0;                    //  1/4!
  s = s * y2 - 1.0 / 2.0;                     // -1/2!
  return s * y2 + 1.0;
}

double sin_kernel(double r) noexcept {
  const double y = kHalfPi * r;
  const double y2 = y * y;
  double s = -1.0 / 25852016738884976640000.0; // -1/23!
  s = s * y2 + 1.0 / 51090942171709440000.0;   //  1/21!
  s = s * y2 - 1.0 / 121645100408832000.0;     // -1/19!
  s = s * y2 + 1.0 / 355687428096000.0;        //  1/17!
  s = s * y2 - 1.0 / 1307674368000.0;          // -1/15!
  s = s * y2 + 1.0 / 6227020800.0;             //  1/13!
  s = s * y2 - 1.0 / 39916800.0;               // -1/11!
  s = s * y2 + 1.0 / 362880.0;                 //  1/9!
  s = s * y2 - 1.0 / 5040.0;                   // -1/7!
  s = s * y2 + 1.0 / 120.0;                    //  1/5!
  s = s * y2 - 1.0 / 6.0;                      // -1/3!
  return (s * y2 + 1.0) * y;
}

} // namespace

double det_cos2pi(double x) noexcept {
  // 2*pi*x = (pi/2) * t with t = 4x in [0, 4); quadrant q, remainder r.
  const double t = 4.0 * x; // exact: multiply by power of two
  const int q = static_cast<int>(t);
  const double r = t - static_cast<double>(q); // exact subtraction (Sterbenz)
  switch (q & 3) {
    case 0: return cos_kernel(r);
    case 1: return -sin_kernel(r);
    case 2: return -cos_kernel(r);
    default: return sin_kernel(r);
  }
}

double det_sin2pi(double x) noexcept {
  const double t = 4.0 * x;
  const int q = static_cast<int>(t);
  const double r = t - static_cast<double>(q);
  switch (q & 3) {
    case 0: return sin_kernel(r);
    case 1: return cos_kernel(r);
    case 2: return -sin_kernel(r);
    default: return -cos_kernel(r);
  }
}

double counter_gaussian(std::uint64_t seed, std::uint64_t counter) noexcept {
  const double u1 = counter_uniform(seed, 2 * counter);
  const double u2 = counter_uniform(seed, 2 * counter + 1);
  // u2 is in (0, 1]; fold the endpoint so the angle argument lies in [0, 1).
  const double a = (u2 == 1.0) ? 0.0 : u2;
  return std::sqrt(-2.0 * det_ln(u1)) * det_cos2pi(a);
}

} // namespace leafpat
