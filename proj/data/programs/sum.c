// Copyright (c) probbounds contributors.
// SPDX-License-Identifier: Apache-2.0
int (sum)(int x)
{  int y = 0;
  while (x!= 0){
     y = y + x;
     x = x - 1;}
  return y;     }
