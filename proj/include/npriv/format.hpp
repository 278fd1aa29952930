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

#ifndef NPRIV_FORMAT_HPP
#define NPRIV_FORMAT_HPP

#include <cmath>
#include <cstdio>
#include <string>

namespace npriv {

// Locale-independent number rendering for reports and CSV ('.' separator,
// integral values keep one decimal so budgets read as "1.0" not "1").
inline std::string format_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[64];
  if (x == std::floor(x) && std::fabs(x) < 1e15) {
    std::snprintf(buf, sizeof(buf), "%.1f", x);
  } else {
    std::snprintf(buf, sizeof(buf), "%.12g", x);
  }
  return buf;
}

}  // namespace npriv

#endif  // NPRIV_FORMAT_HPP
