// Copyright 2026 The bbit Authors
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

#pragma once

#include "bbit/bitpack.hpp"
#include "bbit/dataio.hpp"
#include "bbit/error.hpp"
#include "bbit/estimation.hpp"
#include "bbit/expansion.hpp"
#include "bbit/experiment.hpp"
#include "bbit/kernelcheck.hpp"
#include "bbit/model_file.hpp"
#include "bbit/random.hpp"
#include "bbit/sketch.hpp"
#include "bbit/sketch_file.hpp"
#include "bbit/sketching.hpp"
#include "bbit/svm.hpp"
#include "bbit/synthetic.hpp"
