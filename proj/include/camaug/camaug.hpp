// Copyright 2026 The camaug Authors
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

#include "camaug/canvas.hpp"
#include "camaug/dataset.hpp"
#include "camaug/error.hpp"
#include "camaug/geometry.hpp"
#include "camaug/image.hpp"
#include "camaug/labels.hpp"
#include "camaug/oracle.hpp"
#include "camaug/pipeline.hpp"
#include "camaug/png_io.hpp"
#include "camaug/render.hpp"
#include "camaug/sampler.hpp"
#include "camaug/warp.hpp"
