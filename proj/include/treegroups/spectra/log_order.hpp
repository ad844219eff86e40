// Copyright 2026 The treegroups Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TREEGROUPS_SPECTRA_LOG_ORDER_HPP
#define TREEGROUPS_SPECTRA_LOG_ORDER_HPP

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "treegroups/exact.hpp"

namespace treegroups {

/// log of a positive integer kept exactly as sum_p e_p log p over primes p.
class LogOrder {
 public:
  LogOrder() = default;

  /// log n for n >= 1.
  static LogOrder of(const BigInt &n) {
    LogOrder out;
    out.add(n, 1);
    return out;
  }

  /// Adds multiplicity * log n. n is factored by trial division, so keep it
  /// modest (group orders under the enumeration cap, degrees, factorials).
  LogOrder &add(BigInt n, const BigInt &multiplicity) {
    if (n < 1) throw std::invalid_argument("log of a non-positive integer");
    if (multiplicity == 0) return *this;
    for (std::uint64_t p = 2; BigInt(p) * p <= n; ++p) {
      while (n % p == 0) {
        exponents_[p] += multiplicity;
        n /= p;
      }
    }
    if (n > 1) exponents_[n.convert_to<std::uint64_t>()] += multiplicity;
    normalize();
    return *this;
  }

  LogOrder &operator+=(const LogOrder &o) {
    for (const auto &[p, e] : o.exponents_) exponents_[p] += e;
    normalize();
    return *this;
  }

  const std::map<std::uint64_t, BigInt> &exponents() const { return exponents_; }
  bool is_zero() const { return exponents_.empty(); }

  /// Natural logarithm, evaluated in 50-digit binary floating point.
  boost::multiprecision::cpp_bin_float_50 value() const {
    boost::multiprecision::cpp_bin_float_50 sum = 0;
    for (const auto &[p, e] : exponents_)
      sum += boost::multiprecision::cpp_bin_float_50(e) * log(boost::multiprecision::cpp_bin_float_50(p));
    return sum;
  }

  /// The integer itself, or nullopt when it has more than max_bits bits.
  std::optional<BigInt> expand(unsigned max_bits = 4096) const {
    BigInt n = 1;
    for (const auto &[p, e] : exponents_) {
      if (e < 0 || e > max_bits) return std::nullopt;
      n *= ipow(BigInt(p), e.convert_to<unsigned long long>());
      if (msb(n) > max_bits) return std::nullopt;
    }
    return n;
  }

  bool operator==(const LogOrder &) const = default;

 private:
  void normalize() {
    for (auto it = exponents_.begin(); it != exponents_.end();)
      it = it->second == 0 ? exponents_.erase(it) : std::next(it);
  }

  std::map<std::uint64_t, BigInt> exponents_;
};

/// a / b as an exact rational when the two exponent vectors are proportional
/// (always the case when both are powers of one integer); nullopt otherwise.
inline std::optional<ExactFraction> exact_ratio(const LogOrder &a, const LogOrder &b) {
  if (b.is_zero()) throw std::domain_error("ratio against log 1");
  if (a.is_zero()) return ExactFraction(0);
  std::optional<ExactFraction> r;
  for (const auto &[p, eb] : b.exponents()) {
    auto it = a.exponents().find(p);
    const ExactFraction q = make_fraction(it == a.exponents().end() ? BigInt(0) : it->second, eb);
    if (r && *r != q) return std::nullopt;
    r = q;
  }
  for (const auto &[p, ea] : a.exponents())
    if (!b.exponents().count(p)) return std::nullopt;
  return r;
}

/// log|pi_n(Aut T)| = ((d^n - 1)/(d - 1)) log d!.
inline LogOrder aut_log_order(int d, int n) {
  LogOrder out;
  out.add(factorial(d), BigInt((ipow(BigInt(d), static_cast<unsigned long long>(n)) - 1) / (d - 1)));
  return out;
}

}  // namespace treegroups

#endif  // TREEGROUPS_SPECTRA_LOG_ORDER_HPP
