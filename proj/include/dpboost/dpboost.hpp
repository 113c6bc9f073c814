// Copyright 2026 The dpboost Authors
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

#pragma once

#include "dpboost/accounting.hpp"
#include "dpboost/audit.hpp"
#include "dpboost/boosting.hpp"
#include "dpboost/dataset.hpp"
#include "dpboost/encoding.hpp"
#include "dpboost/errors.hpp"
#include "dpboost/eval.hpp"
#include "dpboost/hypothesis.hpp"
#include "dpboost/mechanisms.hpp"
#include "dpboost/measures.hpp"
#include "dpboost/model_io.hpp"
#include "dpboost/one_rule.hpp"
#include "dpboost/raw_data.hpp"
#include "dpboost/rng.hpp"
#include "dpboost/topdown.hpp"
