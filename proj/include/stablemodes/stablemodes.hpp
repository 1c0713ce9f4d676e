// Copyright 2026 The stablemodes Authors.
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

#ifndef STABLEMODES_STABLEMODES_HPP_
#define STABLEMODES_STABLEMODES_HPP_

#include "stablemodes/cmlab.hpp"
#include "stablemodes/density.hpp"
#include "stablemodes/errors.hpp"
#include "stablemodes/frontier.hpp"
#include "stablemodes/kanter.hpp"
#include "stablemodes/mc.hpp"
#include "stablemodes/parallel.hpp"
#include "stablemodes/quadrature.hpp"
#include "stablemodes/specfun.hpp"
#include "stablemodes/types.hpp"

#endif  // STABLEMODES_STABLEMODES_HPP_
