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

#include "npriv/serialize.hpp"

#include <sstream>

#include "npriv/errors.hpp"

namespace npriv {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::stringstream ss(text);
  while (std::getline(ss, part, sep)) parts.push_back(part);
  return parts;
}

Rational require_rational(const std::string& token, const std::string& what) {
  auto r = parse_rational(token);
  if (!r) throw FormatError("cannot parse " + what + " '" + token + "' as a number");
  return *r;
}

Domain parse_domain(const std::string& text) {
  if (text.empty()) throw FormatError("empty domain");
  if (text.find("..") != std::string::npos) {
    std::vector<IntervalUnion::Interval> pieces;
    for (const auto& piece : split(text, '|')) {
      auto sep = piece.find("..");
      if (sep == std::string::npos)
        throw FormatError("interval '" + piece + "' must use lo..hi");
      Rational lo = require_rational(piece.substr(0, sep), "interval bound");
      Rational hi = require_rational(piece.substr(sep + 2), "interval bound");
      if (lo > hi) throw FormatError("interval '" + piece + "' has lo > hi");
      pieces.push_back({std::move(lo), std::move(hi)});
    }
    return IntervalUnion(std::move(pieces));
  }
  std::vector<Value> values;
  for (const auto& token : split(text, ',')) {
    if (token.empty()) throw FormatError("empty value in domain '" + text + "'");
    values.push_back(parse_value(token));
  }
  return FiniteRange(std::move(values));
}

}  // namespace

std::vector<Domain> parse_domains(const std::string& text) {
  if (text.empty()) throw FormatError("empty domains specification");
  std::vector<Domain> domains;
  for (const auto& part : split(text, ';')) domains.push_back(parse_domain(part));
  return domains;
}

std::string domains_to_string(const std::vector<Domain>& domains) {
  std::string out;
  for (size_t j = 0; j < domains.size(); ++j) {
    if (j > 0) out += ";";
    if (domain_is_finite(domains[j])) {
      const auto& r = std::get<FiniteRange>(domains[j]);
      for (size_t k = 0; k < r.size(); ++k) {
        if (k > 0) out += ",";
        out += r[k].to_string();
      }
    } else {
      const auto& iv = std::get<IntervalUnion>(domains[j]);
      for (size_t k = 0; k < iv.intervals().size(); ++k) {
        if (k > 0) out += "|";
        out += to_string(iv.intervals()[k].lo) + ".." + to_string(iv.intervals()[k].hi);
      }
    }
  }
  return out;
}

QuerySpec parse_query(const std::string& text) {
  if (text == "mean") return QuerySpec::mean();
  if (text == "sum") return QuerySpec::sum();
  if (text.rfind("affine:", 0) == 0) {
    std::vector<std::string> parts = split(text.substr(7), ':');
    if (parts.empty() || parts.size() > 2)
      throw FormatError("affine query must be affine:w1,w2,...[:offset]");
    std::vector<Rational> weights;
    for (const auto& token : split(parts[0], ','))
      weights.push_back(require_rational(token, "affine weight"));
    Rational offset = parts.size() == 2 ? require_rational(parts[1], "affine offset")
                                        : Rational(0);
    return QuerySpec::affine(std::move(weights), std::move(offset));
  }
  if (text.rfind("table:", 0) == 0) {
    QuerySpec::TableMap table;
    for (const auto& entry : split(text.substr(6), ';')) {
      auto arrow = entry.find("->");
      if (arrow == std::string::npos)
        throw FormatError("table entry '" + entry + "' must be x1|x2|...->y");
      std::vector<Value> key;
      for (const auto& token : split(entry.substr(0, arrow), '|'))
        key.push_back(parse_value(token));
      table[std::move(key)] = require_rational(entry.substr(arrow + 2), "table output");
    }
    return QuerySpec::table(std::move(table));
  }
  throw FormatError("unknown query '" + text + "' (mean, sum, affine:..., table:...)");
}

std::string query_to_string(const QuerySpec& query, size_t n) {
  switch (query.kind()) {
    case QuerySpec::Kind::mean:
      return "mean";
    case QuerySpec::Kind::sum:
      return "sum";
    case QuerySpec::Kind::affine: {
      std::string out = "affine:";
      auto weights = query.weights_for(n);
      for (size_t j = 0; j < weights.size(); ++j) {
        if (j > 0) out += ",";
        out += to_string(weights[j]);
      }
      return out + ":" + to_string(query.offset());
    }
    case QuerySpec::Kind::table: {
      std::string out = "table:";
      bool first = true;
      for (const auto& [key, value] : query.table_entries()) {
        if (!first) out += ";";
        first = false;
        for (size_t j = 0; j < key.size(); ++j) {
          if (j > 0) out += "|";
          out += key[j].to_string();
        }
        out += "->" + to_string(value);
      }
      return out;
    }
  }
  throw InternalError("unreachable query kind");
}

namespace {

// Splits "A|B|C" at top level, ignoring separators inside parentheses.
std::vector<std::string> split_top_level(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string part;
  int depth = 0;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == sep && depth == 0) {
      parts.push_back(part);
      part.clear();
    } else {
      part += c;
    }
  }
  parts.push_back(part);
  return parts;
}

}  // namespace

MechanismSpec parse_mechanism(
    const std::string& text,
    const std::optional<std::pair<Rational, Rational>>& default_bounds) {
  if (text == "identity") return MechanismSpec::identity();
  if (text.rfind("constant:", 0) == 0)
    return MechanismSpec::constant(parse_value(text.substr(9)));
  if (text.rfind("quantizer:", 0) == 0) {
    std::vector<std::string> parts = split(text.substr(10), ':');
    if (parts.size() != 1 && parts.size() != 3)
      throw FormatError("quantizer must be quantizer:Q or quantizer:Q:LO:HI");
    Rational q = require_rational(parts[0], "level count");
    if (denominator(q) != 1 || q < 1)
      throw FormatError("level count '" + parts[0] + "' must be a positive integer");
    Rational lo, hi;
    if (parts.size() == 3) {
      lo = require_rational(parts[1], "quantizer bound");
      hi = require_rational(parts[2], "quantizer bound");
    } else if (default_bounds) {
      lo = default_bounds->first;
      hi = default_bounds->second;
    } else {
      throw FormatError("quantizer:Q needs explicit bounds here; use quantizer:Q:LO:HI");
    }
    return MechanismSpec::quantizer(
        QuantizerSpec(numerator(q).convert_to<int64_t>(), std::move(lo), std::move(hi)));
  }
  if (text.rfind("compose(", 0) == 0 && text.back() == ')') {
    std::string body = text.substr(8, text.size() - 9);
    std::vector<MechanismSpec> children;
    for (const auto& part : split_top_level(body, '|'))
      children.push_back(parse_mechanism(part, default_bounds));
    return MechanismSpec::compose(std::move(children));
  }
  if (text.rfind("postprocess(", 0) == 0) {
    auto close = text.rfind(')');
    auto open_map = text.find('[', close);
    if (close == std::string::npos || open_map == std::string::npos || text.back() != ']')
      throw FormatError("postprocess must be postprocess(M)[in->out,...]");
    MechanismSpec inner =
        parse_mechanism(text.substr(12, close - 12), default_bounds);
    MechanismSpec::PostprocessMap relabel;
    std::string body = text.substr(open_map + 1, text.size() - open_map - 2);
    for (const auto& entry : split(body, ',')) {
      auto arrow = entry.find("->");
      if (arrow == std::string::npos)
        throw FormatError("postprocess entry '" + entry + "' must be in->out");
      relabel[parse_value(entry.substr(0, arrow))] = parse_value(entry.substr(arrow + 2));
    }
    return MechanismSpec::postprocess(std::move(inner), std::move(relabel));
  }
  throw FormatError("unknown mechanism '" + text +
                    "' (identity, constant:..., quantizer:..., compose(...), "
                    "postprocess(...)[...])");
}

JointRelation parse_relation(const std::string& text) {
  std::vector<JointRelation::Pair> pairs;
  for (const auto& token : split(text, ',')) {
    auto colon = token.find(':');
    if (colon == std::string::npos)
      throw FormatError("relation pair '" + token + "' must be x:y");
    pairs.emplace_back(parse_value(token.substr(0, colon)),
                       parse_value(token.substr(colon + 1)));
  }
  return JointRelation::from_pairs(std::move(pairs));
}

ChannelSpec parse_channel(const std::string& inputs, const std::string& outputs) {
  FiniteRange input_range(parse_value_list(inputs));
  std::map<Value, FiniteRange> output_map;
  for (const auto& entry : split(outputs, ';')) {
    auto colon = entry.find(':');
    if (colon == std::string::npos)
      throw FormatError("channel entry '" + entry + "' must be x:y1,y2,...");
    Value x = parse_value(entry.substr(0, colon));
    output_map[std::move(x)] = FiniteRange(parse_value_list(entry.substr(colon + 1)));
  }
  return ChannelSpec(std::move(input_range), std::move(output_map));
}

std::vector<Value> parse_value_list(const std::string& text) {
  std::vector<Value> values;
  if (text.empty()) return values;
  for (const auto& token : split(text, ',')) {
    if (token.empty()) throw FormatError("empty value in list '" + text + "'");
    values.push_back(parse_value(token));
  }
  return values;
}

}  // namespace npriv
