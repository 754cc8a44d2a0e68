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

// Umbrella header.

#ifndef NOISECOOL_NOISECOOL_HPP
#define NOISECOOL_NOISECOOL_HPP

#include "noisecool/calibration_presets.hpp"
#include "noisecool/circuit.hpp"
#include "noisecool/common.hpp"
#include "noisecool/config.hpp"
#include "noisecool/demos.hpp"
#include "noisecool/density_matrix.hpp"
#include "noisecool/dynamics.hpp"
#include "noisecool/engine.hpp"
#include "noisecool/linalg.hpp"
#include "noisecool/lindblad_map.hpp"
#include "noisecool/model.hpp"
#include "noisecool/noise.hpp"
#include "noisecool/pauli.hpp"
#include "noisecool/superoperator.hpp"

#endif  // NOISECOOL_NOISECOOL_HPP
