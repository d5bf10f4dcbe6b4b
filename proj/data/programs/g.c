// Copyright (c) probbounds contributors.
// SPDX-License-Identifier: Apache-2.0
double g(double x1, x2, x3, x4, x5){
  double x; x = 0.0;
  if (x5 >= 0.5) x = x+ x1*2.0-1.0;
  x = x+ x2*2.0-1.0;
  x = x+ x3*2.0-1.0;
  x = x+ x4*2.0-1.0;
  return x;}
