/* Copyright 2026 The ScenarioBench Authors. All Rights Reserved.
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at
    http://www.apache.org/licenses/LICENSE-2.0
Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#ifndef SCENARIOBENCH_SCENARIOBENCH_HPP_
#define SCENARIOBENCH_SCENARIOBENCH_HPP_

#include "scenariobench/config.hpp"
#include "scenariobench/distill.hpp"
#include "scenariobench/errors.hpp"
#include "scenariobench/live.hpp"
#include "scenariobench/log.hpp"
#include "scenariobench/queueing.hpp"
#include "scenariobench/report.hpp"
#include "scenariobench/rng.hpp"
#include "scenariobench/runner.hpp"
#include "scenariobench/scenario.hpp"
#include "scenariobench/scenario_io.hpp"
#include "scenariobench/sim.hpp"
#include "scenariobench/stats.hpp"
#include "scenariobench/trace.hpp"
#include "scenariobench/workload.hpp"

#endif  // SCENARIOBENCH_SCENARIOBENCH_HPP_
