// Copyright 2026 The covnot Authors
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

#include <cstddef>
#include <functional>

namespace covnot::parallel {

/// Worker cap: COVNOT_THREADS when set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
std::size_t thread_cap();

/// Runs fn(0) .. fn(tasks - 1) on up to thread_cap() threads. Task results
/// must go to per-task slots; scheduling order is unspecified. The first
/// exception thrown by a task is rethrown after all workers join.
void for_each_task(std::size_t tasks,
                   const std::function<void(std::size_t)>& fn);

}  // namespace covnot::parallel
