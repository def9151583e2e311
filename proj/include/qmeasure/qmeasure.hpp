// Copyright 2026 The qmeasure Authors
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

#pragma once

#include "qmeasure/channels.hpp"
#include "qmeasure/compatibility.hpp"
#include "qmeasure/constraints.hpp"
#include "qmeasure/error.hpp"
#include "qmeasure/linalg.hpp"
#include "qmeasure/matrix.hpp"
#include "qmeasure/matrix_io.hpp"
#include "qmeasure/observables.hpp"
#include "qmeasure/random.hpp"
#include "qmeasure/states.hpp"
