// Copyright 2026 The kproj Authors
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

#ifndef KPROJ_KPROJ_HPP_
#define KPROJ_KPROJ_HPP_

#include "kproj/constraints.hpp"
#include "kproj/coverage.hpp"
#include "kproj/generator.hpp"
#include "kproj/ilp.hpp"
#include "kproj/io.hpp"
#include "kproj/model.hpp"
#include "kproj/numeric.hpp"

#endif  // KPROJ_KPROJ_HPP_
