// Copyright 2026 The scriptlid Authors
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

#ifndef SCRIPTLID_SCRIPTLID_HPP
#define SCRIPTLID_SCRIPTLID_HPP

#include "scriptlid/bench.hpp"
#include "scriptlid/classifier.hpp"
#include "scriptlid/confusion.hpp"
#include "scriptlid/dataset.hpp"
#include "scriptlid/eval.hpp"
#include "scriptlid/hash.hpp"
#include "scriptlid/hier.hpp"
#include "scriptlid/linear.hpp"
#include "scriptlid/mlp.hpp"
#include "scriptlid/mnb.hpp"
#include "scriptlid/model_io.hpp"
#include "scriptlid/ngram.hpp"
#include "scriptlid/normalize.hpp"
#include "scriptlid/profile.hpp"
#include "scriptlid/rng.hpp"
#include "scriptlid/scriptmap.hpp"
#include "scriptlid/synth.hpp"
#include "scriptlid/synthlang.hpp"
#include "scriptlid/unicode.hpp"

#endif  // SCRIPTLID_SCRIPTLID_HPP
