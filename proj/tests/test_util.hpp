// Copyright 2026 The hsbench Authors
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

#include <gtest/gtest.h>

#include <string>

#include "hsbench/error.hpp"

namespace hsbench::testing {

/// Runs `fn` and reports the code of the hsbench::Error it throws.
template <typename Fn>
::testing::AssertionResult throws_code(Fn &&fn, ErrorCode expected) {
    try {
        fn();
    } catch (const Error &e) {
        if (e.code() == expected) return ::testing::AssertionSuccess();
        return ::testing::AssertionFailure() << "threw " << to_string(e.code()) << ": " << e.what();
    } catch (const std::exception &e) {
        return ::testing::AssertionFailure() << "threw a foreign exception: " << e.what();
    }
    return ::testing::AssertionFailure() << "did not throw";
}

} // namespace hsbench::testing
