// Copyright 2026 The spatialqa Authors.
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

#ifndef SPATIALQA_EXECUTION_H_
#define SPATIALQA_EXECUTION_H_

namespace spatialqa {

// Per-document loops run either on the calling thread (the reference path
// the tests compare against) or across OpenMP threads. Results are merged in
// document order, so both produce identical output.
enum class Execution { kSerial, kParallel };

// Caps OpenMP worker threads; n <= 0 restores the runtime default.
void SetMaxThreads(int n);
int MaxThreads();

}  // namespace spatialqa

#endif  // SPATIALQA_EXECUTION_H_
