/*
 Copyright 2026 The gramsched Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/
#ifndef GRAMSCHED_GRAMSCHED_HPP
#define GRAMSCHED_GRAMSCHED_HPP

#include "gramsched/bss_sparsifier.hpp"
#include "gramsched/common.hpp"
#include "gramsched/gramian_hankel.hpp"
#include "gramsched/io.hpp"
#include "gramsched/scheduler.hpp"
#include "gramsched/sweep.hpp"
#include "gramsched/system_model.hpp"
#include "gramsched/verify_metrics.hpp"

#endif  // GRAMSCHED_GRAMSCHED_HPP
