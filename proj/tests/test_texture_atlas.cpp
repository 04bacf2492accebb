// Copyright (c) 2026 the semistereo authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>
