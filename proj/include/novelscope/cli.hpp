// Copyright 2026 The Novelscope Authors.
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

// Command-line front end over Pipeline.

#pragma once

namespace novelscope {

// Exit status: 0 when every book succeeded, 1 when some book failed, 2 on
// usage errors or a failure that stops the whole phase.
int run_cli(int argc, const char* const* argv);

}  // namespace novelscope
