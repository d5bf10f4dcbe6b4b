// Copyright (c) probbounds contributors.
// SPDX-License-Identifier: Apache-2.0
int identity(int x) { return x; }
