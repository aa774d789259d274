// Copyright 2026 The knapqaoa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace knapqaoa {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace knapqaoa
