// Copyright 2026 The gapforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GAPFORGE_GAPFORGE_HPP
#define GAPFORGE_GAPFORGE_HPP

#include "gapforge/analytic.hpp"
#include "gapforge/assembly.hpp"
#include "gapforge/certificate_io.hpp"
#include "gapforge/construction.hpp"
#include "gapforge/params.hpp"
#include "gapforge/primes.hpp"
#include "gapforge/report.hpp"

#endif  // GAPFORGE_GAPFORGE_HPP
