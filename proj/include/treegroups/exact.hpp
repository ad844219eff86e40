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

#ifndef TREEGROUPS_EXACT_HPP
#define TREEGROUPS_EXACT_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace treegroups {

using BigInt = boost::multiprecision::cpp_int;

/// Reduced rational with positive denominator.
using ExactFraction = boost::multiprecision::cpp_rational;

inline BigInt numerator_of(const ExactFraction &q) { return boost::multiprecision::numerator(q); }
inline BigInt denominator_of(const ExactFraction &q) { return boost::multiprecision::denominator(q); }

inline ExactFraction make_fraction(const BigInt &num, const BigInt &den) {
  return ExactFraction(num, den);
}

/// "num/den", always with an explicit denominator ("3/1").
inline std::string to_string(const ExactFraction &q) {
  return numerator_of(q).str() + "/" + denominator_of(q).str();
}

inline std::string to_string(const BigInt &n) { return n.str(); }

/// Parses "num/den" or a bare integer.
inline ExactFraction parse_fraction(const std::string &text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) return ExactFraction(BigInt(text));
  BigInt den(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
  return ExactFraction(BigInt(text.substr(0, slash)), den);
}

inline double to_double(const ExactFraction &q) { return q.convert_to<double>(); }

inline BigInt ipow(const BigInt &base, unsigned long long exponent) {
  return boost::multiprecision::pow(base, static_cast<unsigned>(exponent));
}

inline BigInt factorial(int n) {
  BigInt r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

}  // namespace treegroups

#endif  // TREEGROUPS_EXACT_HPP
