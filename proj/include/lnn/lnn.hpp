// Copyright 2026 The lnn Authors
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

#ifndef LNN_LNN_HPP
#define LNN_LNN_HPP

#include "lnn/activations.hpp"
#include "lnn/bounds.hpp"
#include "lnn/errors.hpp"
#include "lnn/formula.hpp"
#include "lnn/graph.hpp"
#include "lnn/inference.hpp"
#include "lnn/knowledge_base.hpp"
#include "lnn/learner.hpp"
#include "lnn/parser.hpp"
#include "lnn/pipeline.hpp"
#include "lnn/rewriter.hpp"
#include "lnn/serialize.hpp"
#include "lnn/tape.hpp"
#include "lnn/term.hpp"
#include "lnn/theory.hpp"

#endif
