// Copyright 2026 The npriv Authors
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

#ifndef NPRIV_VALUE_HPP
#define NPRIV_VALUE_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "npriv/errors.hpp"

namespace npriv {

// Exact rational scalar. All set membership and cardinality counting is done
// on exact values; floating point appears only in logarithms, statistics and
// the game simulations. Expression templates are off so arithmetic results
// are plain values (std::min/max, sorting, structured bindings).
using BigInt =
    boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                  boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<
    boost::multiprecision::backends::rational_adaptor<
        boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

// A point in a range: an exact rational, a symbolic label, or a tuple of
// values (tuples arise as outputs of composed mechanisms). Values have a
// total order (rationals < symbols < tuples, each kind ordered internally)
// so every range has one canonical iteration order.
class Value {
 public:
  using Tuple = std::vector<Value>;

  Value() : v_(Rational(0)) {}
  explicit Value(Rational r) : v_(std::move(r)) {}
  explicit Value(int n) : v_(Rational(n)) {}

  static Value symbol(std::string name) { return Value(Sym{std::move(name)}); }
  static Value tuple(Tuple elems) { return Value(std::move(elems)); }

  bool is_rational() const { return std::holds_alternative<Rational>(v_); }
  bool is_symbol() const { return std::holds_alternative<Sym>(v_); }
  bool is_tuple() const { return std::holds_alternative<Tuple>(v_); }

  const Rational& as_rational() const;
  const std::string& as_symbol() const;
  const Tuple& as_tuple() const;

  std::string to_string() const;

  friend bool operator==(const Value& a, const Value& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Value& a, const Value& b) { return !(a == b); }
  friend bool operator<(const Value& a, const Value& b);

 private:
  struct Sym {
    std::string name;
    bool operator==(const Sym& o) const { return name == o.name; }
  };
  explicit Value(Sym s) : v_(std::move(s)) {}
  explicit Value(Tuple t) : v_(std::move(t)) {}

  std::variant<Rational, Sym, Tuple> v_;
};

// Renders p/q as "p/q", integers without denominator.
std::string to_string(const Rational& r);

// Parses "3", "-2", "0.25", "1e-3", "3/4" into an exact rational.
std::optional<Rational> parse_rational(const std::string& text);

// Parses a rational if the token looks numeric, otherwise a symbol.
Value parse_value(const std::string& token);

// Rational -> double, exact division of converted numerator/denominator.
double to_double(const Rational& r);

}  // namespace npriv

#endif  // NPRIV_VALUE_HPP
