//---------------------------------------------------------------------------//
// Copyright (c) 2026 swstab developers
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#pragma once

namespace swstab {

inline constexpr const char* kVersion = "0.1.0";

} // namespace swstab
