#include "fastice/errors.hpp"

#include <sstream>

namespace fastice {

namespace {

std::string point_message(const Vec2& p) {
  std::ostringstream os;
  os << "point (" << p.x() << ", " << p.y() << ") m lies outside the domain";
  return os.str();
}

std::string cfl_message(const std::string& face, double cfl, double suggested_dt) {
  std::ostringstream os;
  os << "advective CFL number " << cfl << " exceeds 1 on " << face << "; try dt <= "
     << suggested_dt << " s";
  return os.str();
}

}  // namespace

OutOfDomainError::OutOfDomainError(const Vec2& p) : Error(point_message(p)), point_(p) {}

PoisonedStateError::PoisonedStateError(std::string field)
    : Error("non-finite value in field '" + field + "'"), field_(std::move(field)) {}

CflError::CflError(const std::string& face, double cfl, double suggested_dt)
    : Error(cfl_message(face, cfl, suggested_dt)), cfl_(cfl), suggested_dt_(suggested_dt) {}

}  // namespace fastice
