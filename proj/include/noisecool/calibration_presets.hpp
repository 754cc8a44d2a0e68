// Copyright 2026 The noisecool Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Published device calibration snapshots for the three cooling demonstrations
// (keyed by device qubit label). X and sqrt(X) errors are reported jointly.

#ifndef NOISECOOL_CALIBRATION_PRESETS_HPP
#define NOISECOOL_CALIBRATION_PRESETS_HPP

#include <string>
#include <vector>

#include "noisecool/noise.hpp"

namespace noisecool {

inline const std::vector<std::string>& calibration_preset_names() {
  static const std::vector<std::string> names{"nairobi_demo1", "lagos_demo2", "nairobi_demo3"};
  return names;
}

inline CalibrationData calibration_preset(const std::string& name) {
  CalibrationData c;
  c.name = name;
  auto q = [&](int label, double err_e4, double t1, double t2) {
    c.qubits[label] = {t1, t2, err_e4 * 1e-4, err_e4 * 1e-4};
  };
  auto e = [&](int control, int target, double err_e2, double ns) {
    c.edges[{control, target}] = {err_e2 * 1e-2, ns};
  };
  if (name == "nairobi_demo1") {
    q(4, 4.01, 101, 35.9);
    q(5, 2.69, 93.0, 79.8);
    e(4, 5, 0.836, 363);
  } else if (name == "lagos_demo2") {
    q(3, 1.43, 106, 130);
    q(5, 2.79, 103, 84.1);
    q(1, 3.80, 93.2, 111);
    q(4, 4.00, 101, 24.9);
    e(3, 5, 2.26, 960);
    e(3, 1, 0.698, 334);
    e(5, 4, 1.28, 363);
  } else if (name == "nairobi_demo3") {
    q(1, 3.66, 98.8, 120);
    q(3, 3.59, 126, 57.0);
    q(5, 2.78, 125, 21.5);
    q(0, 2.41, 113, 31.9);
    q(2, 3.84, 54.5, 110);
    q(4, 2.53, 96.5, 108);
    q(6, 2.01, 122, 220);
    e(5, 3, 1.607, 277);
    e(3, 1, 0.650, 270);
    e(1, 0, 0.927, 249);
    e(1, 2, 0.855, 427);
    e(5, 4, 0.481, 313);
    e(5, 6, 0.608, 341);
  } else {
    std::string list;
    for (const auto& n : calibration_preset_names()) list += (list.empty() ? "" : ", ") + n;
    throw ConfigError("unknown calibration preset '" + name + "' (available: " + list + ")");
  }
  c.validate();
  return c;
}

}  // namespace noisecool

#endif  // NOISECOOL_CALIBRATION_PRESETS_HPP
