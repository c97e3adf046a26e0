#include "trigroots/random.hpp"

#include <cmath>
#include <numbers>

namespace trigroots {

double RandomStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_normal_;
  }
  const double radius = std::sqrt(-2.0 * std::log(uniform_open_left()));
  const double angle = 2.0 * std::numbers::pi * uniform01();
  spare_normal_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

double RandomStream::sign() {
  if (sign_bits_left_ == 0) {
    sign_bits_ = engine_();
    sign_bits_left_ = 64;
  }
  const bool negative = (sign_bits_ & 1U) != 0;
  sign_bits_ >>= 1;
  --sign_bits_left_;
  return negative ? -1.0 : 1.0;
}

}  // namespace trigroots
