// Copyright 2026 The zfpf Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef ZFPF_ZFPF_HPP
#define ZFPF_ZFPF_HPP

// Everything except the JSON layer (zfpf/io.hpp), which needs nlohmann/json.
#include "zfpf/csp.hpp"
#include "zfpf/errors.hpp"
#include "zfpf/family.hpp"
#include "zfpf/graph.hpp"
#include "zfpf/interpolate.hpp"
#include "zfpf/oracle.hpp"
#include "zfpf/quantum.hpp"
#include "zfpf/series.hpp"

#endif  // ZFPF_ZFPF_HPP
