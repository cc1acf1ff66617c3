// Copyright 2026 The rtrmq Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>

namespace rtrmq::cli {

/// Exit codes: 0 success, 1 internal or verification failure, 2 usage or configuration error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rtrmq::cli
