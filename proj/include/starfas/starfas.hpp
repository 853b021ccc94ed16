// SPDX-License-Identifier: Apache-2.0
//
// starfas - outage and capacity analysis for phase-impaired STAR-RIS links
// with fluid-antenna users under rate splitting
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


#ifndef STARFAS_HPP
#define STARFAS_HPP

#include "errors.hpp"
#include "specfun.hpp"
#include "linalg.hpp"
#include "rng.hpp"
#include "parallel.hpp"
#include "qmc.hpp"
#include "model.hpp"
#include "copula.hpp"
#include "analysis.hpp"
#include "simkit.hpp"
#include "scenario_io.hpp"
#include "campaign.hpp"
#include "svg_plot.hpp"
#include "version.hpp"

#endif
