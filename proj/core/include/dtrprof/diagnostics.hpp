// Copyright 2026 The dtrprof Authors.
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

#ifndef DTRPROF_DIAGNOSTICS_HPP_
#define DTRPROF_DIAGNOSTICS_HPP_

#include <functional>
#include <string>

namespace dtrprof {

using WarningSink = std::function<void(const std::string&)>;

// Emits a non-fatal warning. The default sink writes to stderr.
void warn(const std::string& message);

// Replaces the process-wide warning sink and returns the previous one.
// Passing an empty function restores the stderr sink.
WarningSink set_warning_sink(WarningSink sink);

// Installs a sink for the lifetime of the guard.
class ScopedWarningSink {
 public:
  explicit ScopedWarningSink(WarningSink sink) : previous_(set_warning_sink(std::move(sink))) {}
  ~ScopedWarningSink() { set_warning_sink(std::move(previous_)); }
  ScopedWarningSink(const ScopedWarningSink&) = delete;
  ScopedWarningSink& operator=(const ScopedWarningSink&) = delete;

 private:
  WarningSink previous_;
};

}  // namespace dtrprof

#endif  // DTRPROF_DIAGNOSTICS_HPP_
