#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace awlift {

using Cplx = std::complex<double>;
using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;

std::string format_complex(Cplx z);
std::string format_double(double x);

/// Point of R^3 ∪ {∞}.  The infinity marker propagates through Möbius
/// chains and is dropped (with a count) from mesh exports.
struct Point3OrInf {
  Vec3 p = Vec3::Zero();
  bool at_infinity = false;

  static Point3OrInf infinity() { return {Vec3::Zero(), true}; }
  static Point3OrInf finite(const Vec3& v) { return {v, false}; }
  bool finite_point() const { return !at_infinity; }
};

/// Chordal metric on R^3 ∪ {∞}: d(x,y) = 2|x-y| / sqrt((1+|x|^2)(1+|y|^2)),
/// extended continuously by d(x,∞) = 2/sqrt(1+|x|^2).
double chordal_distance(const Point3OrInf& a, const Point3OrInf& b);

class SingularPointError : public std::runtime_error {
 public:
  SingularPointError(const std::string& what, Cplx where)
      : std::runtime_error(what + " at z = " + format_complex(where)), where_(where) {}
  Cplx where() const { return where_; }

 private:
  Cplx where_;
};

class DegeneratePointError : public std::runtime_error {
 public:
  DegeneratePointError(const std::string& what, Cplx where)
      : std::runtime_error(what + " at z = " + format_complex(where)), where_(where) {}
  Cplx where() const { return where_; }

 private:
  Cplx where_;
};

class UsageError : public std::invalid_argument {
 public:
  explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

class InvariantViolationError : public std::logic_error {
 public:
  explicit InvariantViolationError(const std::string& what) : std::logic_error(what) {}
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t offset, std::vector<std::string> expected);
  std::size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

}  // namespace awlift
