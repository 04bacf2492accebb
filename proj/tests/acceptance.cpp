// Copyright (c) 2026 the semistereo authors
// SPDX-License-Identifier: Apache-2.0
#include <cstdio>
int main() { std::puts("acceptance: not yet implemented"); return 1; }
