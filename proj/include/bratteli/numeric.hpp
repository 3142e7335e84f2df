#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace bratteli {

// All path counting is exact. Counts can reach 2^256 and beyond under
// telescoping, so fixed-width integers are out.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const BigInt& x) { return x.str(); }

inline std::string to_string(const Rational& q) {
  std::string s = boost::multiprecision::numerator(q).str();
  if (boost::multiprecision::denominator(q) != 1)
    s += "/" + boost::multiprecision::denominator(q).str();
  return s;
}

// FNV-1a, used for stable content digests in certificates and reports.
class Digest {
 public:
  void feed(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      state_ ^= (v >> (8 * i)) & 0xffu;
      state_ *= 0x100000001b3ull;
    }
  }
  void feed(int v) { feed(static_cast<std::uint64_t>(static_cast<std::int64_t>(v))); }
  void feed(const std::string& s) {
    for (unsigned char c : s) {
      state_ ^= c;
      state_ *= 0x100000001b3ull;
    }
    feed(static_cast<std::uint64_t>(s.size()));
  }
  template <typename T>
  void feed(const std::vector<T>& v) {
    for (const T& x : v) feed(x);
    feed(static_cast<std::uint64_t>(v.size()));
  }

  std::string hex() const {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    std::uint64_t s = state_;
    for (int i = 15; i >= 0; --i) {
      out[i] = digits[s & 0xf];
      s >>= 4;
    }
    return out;
  }

 private:
  std::uint64_t state_ = 0xcbf29ce484222325ull;
};

}  // namespace bratteli
