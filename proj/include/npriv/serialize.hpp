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

#ifndef NPRIV_SERIALIZE_HPP
#define NPRIV_SERIALIZE_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "npriv/dataset.hpp"
#include "npriv/info_measures.hpp"
#include "npriv/joint_relation.hpp"
#include "npriv/mechanisms.hpp"

namespace npriv {

// Domains flag grammar: semicolon-separated individuals; each one either a
// comma list of values (finite) or "lo..hi" intervals, unions joined by '|'.
//   "0,1;0,1"          two binary individuals
//   "0..1;0..0.3|0.7..1"  two continuous individuals
std::vector<Domain> parse_domains(const std::string& text);
std::string domains_to_string(const std::vector<Domain>& domains);

// Query grammar: "mean", "sum", "affine:w1,w2,...:offset",
// "table:x1|x2->y;..." with one entry per domain-box tuple.
QuerySpec parse_query(const std::string& text);
std::string query_to_string(const QuerySpec& query, size_t n);

// Mechanism grammar:
//   identity
//   constant:VALUE
//   quantizer:Q[:LO:HI]          (bounds default to `default_bounds`)
//   compose(M1|M2|...)
//   postprocess(M)[in->out,in->out,...]
MechanismSpec parse_mechanism(
    const std::string& text,
    const std::optional<std::pair<Rational, Rational>>& default_bounds = std::nullopt);

// Relation grammar: comma-separated "x:y" pairs.
JointRelation parse_relation(const std::string& text);

// Channel grammar: semicolon-separated "x:y1,y2,..." output sets.
ChannelSpec parse_channel(const std::string& inputs, const std::string& outputs);

// Comma-separated value list ("" -> empty).
std::vector<Value> parse_value_list(const std::string& text);

}  // namespace npriv

#endif  // NPRIV_SERIALIZE_HPP
