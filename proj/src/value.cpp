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

#include "npriv/value.hpp"

#include <cctype>
#include <sstream>

namespace npriv {

const Rational& Value::as_rational() const {
  if (!is_rational()) throw ArgumentError("value '" + to_string() + "' is not rational");
  return std::get<Rational>(v_);
}

const std::string& Value::as_symbol() const {
  if (!is_symbol()) throw ArgumentError("value '" + to_string() + "' is not a symbol");
  return std::get<Sym>(v_).name;
}

const Value::Tuple& Value::as_tuple() const {
  if (!is_tuple()) throw ArgumentError("value '" + to_string() + "' is not a tuple");
  return std::get<Tuple>(v_);
}

std::string Value::to_string() const {
  if (is_rational()) return npriv::to_string(std::get<Rational>(v_));
  if (is_symbol()) return std::get<Sym>(v_).name;
  std::string out = "(";
  const Tuple& t = std::get<Tuple>(v_);
  for (size_t i = 0; i < t.size(); ++i) {
    if (i > 0) out += ",";
    out += t[i].to_string();
  }
  out += ")";
  return out;
}

bool operator<(const Value& a, const Value& b) {
  if (a.v_.index() != b.v_.index()) return a.v_.index() < b.v_.index();
  switch (a.v_.index()) {
    case 0:
      return std::get<Rational>(a.v_) < std::get<Rational>(b.v_);
    case 1:
      return std::get<Value::Sym>(a.v_).name < std::get<Value::Sym>(b.v_).name;
    default: {
      const auto& ta = std::get<Value::Tuple>(a.v_);
      const auto& tb = std::get<Value::Tuple>(b.v_);
      return std::lexicographical_compare(ta.begin(), ta.end(), tb.begin(), tb.end());
    }
  }
}

std::string to_string(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

namespace {

// Digits-only check used while splitting numeric tokens.
bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

BigInt pow10(int64_t k) {
  BigInt p = 1;
  for (int64_t i = 0; i < k; ++i) p *= 10;
  return p;
}

}  // namespace

std::optional<Rational> parse_rational(const std::string& text) {
  if (text.empty()) return std::nullopt;
  std::string s = text;

  // Fraction form p/q.
  if (auto slash = s.find('/'); slash != std::string::npos) {
    auto num = parse_rational(s.substr(0, slash));
    auto den = parse_rational(s.substr(slash + 1));
    if (!num || !den || *den == 0) return std::nullopt;
    return *num / *den;
  }

  bool negative = false;
  size_t pos = 0;
  if (s[pos] == '+' || s[pos] == '-') {
    negative = (s[pos] == '-');
    ++pos;
  }
  s = s.substr(pos);
  if (s.empty()) return std::nullopt;

  // Optional exponent.
  int64_t exp10 = 0;
  if (auto e = s.find_first_of("eE"); e != std::string::npos) {
    std::string mant = s.substr(0, e);
    std::string es = s.substr(e + 1);
    bool eneg = false;
    if (!es.empty() && (es[0] == '+' || es[0] == '-')) {
      eneg = (es[0] == '-');
      es = es.substr(1);
    }
    if (!all_digits(es) || es.size() > 6) return std::nullopt;
    exp10 = std::stoll(es);
    if (eneg) exp10 = -exp10;
    s = mant;
    if (s.empty()) return std::nullopt;
  }

  std::string int_part = s;
  std::string frac_part;
  if (auto dot = s.find('.'); dot != std::string::npos) {
    int_part = s.substr(0, dot);
    frac_part = s.substr(dot + 1);
    if (int_part.empty() && frac_part.empty()) return std::nullopt;
    if (int_part.empty()) int_part = "0";
  }
  if (!all_digits(int_part) || (!frac_part.empty() && !all_digits(frac_part)))
    return std::nullopt;

  BigInt numerator(int_part);
  numerator *= pow10(static_cast<int64_t>(frac_part.size()));
  if (!frac_part.empty()) numerator += BigInt(frac_part);

  Rational value(numerator, pow10(static_cast<int64_t>(frac_part.size())));
  if (exp10 >= 0)
    value *= Rational(pow10(exp10));
  else
    value /= Rational(pow10(-exp10));
  if (negative) value = -value;
  return value;
}

Value parse_value(const std::string& token) {
  if (auto r = parse_rational(token)) return Value(std::move(*r));
  return Value::symbol(token);
}

}  // namespace npriv
