#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace ascount {

/// Unbounded nonnegative count. Only the operations counting needs are
/// exposed, so the value can never go negative.
class BigCount {
 public:
  BigCount() = default;
  BigCount(std::uint64_t v) : value_(v) {}  // NOLINT(google-explicit-constructor)

  static BigCount pow2(std::size_t exponent) {
    BigCount r;
    r.value_ = 1;
    r.value_ <<= exponent;
    return r;
  }

  bool is_zero() const { return value_.is_zero(); }

  BigCount& operator+=(const BigCount& o) {
    value_ += o.value_;
    return *this;
  }
  BigCount& operator*=(const BigCount& o) {
    value_ *= o.value_;
    return *this;
  }
  BigCount& shift_left(std::size_t bits) {
    value_ <<= bits;
    return *this;
  }
  friend BigCount operator+(BigCount a, const BigCount& b) { return a += b; }
  friend BigCount operator*(BigCount a, const BigCount& b) { return a *= b; }
  friend bool operator==(const BigCount& a, const BigCount& b) { return a.value_ == b.value_; }
  friend bool operator<(const BigCount& a, const BigCount& b) { return a.value_ < b.value_; }

  std::string to_string() const { return value_.str(); }
  /// Approximate heap footprint, used for cache accounting.
  std::size_t byte_size() const { return sizeof(*this) + value_.backend().size() * sizeof(boost::multiprecision::limb_type); }

 private:
  boost::multiprecision::cpp_int value_;
};

}  // namespace ascount
