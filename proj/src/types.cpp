#include "awlift/types.hpp"

#include <charconv>
#include <cmath>

namespace awlift {

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string format_complex(Cplx z) {
  std::string s = "(";
  s += format_double(z.real());
  if (z.imag() >= 0.0 || std::isnan(z.imag())) s += "+";
  s += format_double(z.imag());
  s += "i)";
  return s;
}

double chordal_distance(const Point3OrInf& a, const Point3OrInf& b) {
  if (a.at_infinity && b.at_infinity) return 0.0;
  if (a.at_infinity) return 2.0 / std::sqrt(1.0 + b.p.squaredNorm());
  if (b.at_infinity) return 2.0 / std::sqrt(1.0 + a.p.squaredNorm());
  return 2.0 * (a.p - b.p).norm() / std::sqrt((1.0 + a.p.squaredNorm()) * (1.0 + b.p.squaredNorm()));
}

}  // namespace awlift
