/*
 * Copyright 2026 The impid Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Umbrella header for the engine. The HTTP service lives in
// impid/service.hpp and is not included here.

#ifndef IMPID_IMPID_HPP
#define IMPID_IMPID_HPP

#include "impid/compose.hpp"
#include "impid/facts.hpp"
#include "impid/glyphs.hpp"
#include "impid/lexer.hpp"
#include "impid/lint.hpp"
#include "impid/model.hpp"
#include "impid/parser.hpp"
#include "impid/pipeline.hpp"
#include "impid/profiles.hpp"
#include "impid/render.hpp"
#include "impid/serialize.hpp"
#include "impid/timestamp.hpp"
#include "impid/transforms.hpp"

#endif  // IMPID_IMPID_HPP
