// SPDX-License-Identifier: Apache-2.0
//
// eewf - energy-efficient zoned water-filling for massive MIMO downlink
// Copyright (C) 2026 The eewf authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef EEWF_EEWF_HPP
#define EEWF_EEWF_HPP

#include "allocation.hpp"
#include "baselines.hpp"
#include "channel.hpp"
#include "config.hpp"
#include "dual_solver.hpp"
#include "error.hpp"
#include "io.hpp"
#include "rates.hpp"
#include "schemes.hpp"
#include "sweep.hpp"
#include "waterfill.hpp"
#include "zones.hpp"

#endif
