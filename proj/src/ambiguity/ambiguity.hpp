// Copyright 2026 The blindid Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "core/types.hpp"

namespace blindid {

// Two input pairs and how well they agree under convolution.
struct AmbiguousPair {
  Signal x;
  Signal y;
  Signal x_alt;
  Signal y_alt;
  double residual;      // max |x*y - x'*y'|
  double collinearity;  // |<x, x'>| / (|x| |x'|), 1 when either is zero
};

// |<a, b>| / (|a| |b|); 1 if either vector is zero. Lengths must match.
double collinearity(const Signal& a, const Signal& b);

// Computes residual and collinearity. x/x_alt and y/y_alt lengths must match.
AmbiguousPair make_pair(Signal x, Signal y, Signal x_alt, Signal y_alt);

struct RotationalFamily {
  Signal x1p;
  Signal y1p;
  Signal x2p;
  Signal y2p;
  bool degenerate;  // sin(theta - phi) == 0: the two output pairs coincide up to sign
};

// x1' = x1 cos(theta) - x2 sin(theta), y1' = y1 sin(phi) - y2 cos(phi),
// x2' = x1 cos(phi) - x2 sin(phi),     y2' = y1 sin(theta) - y2 cos(theta).
// Requires x1*y1 == x2*y2 within tolerance.
RotationalFamily rotational_family(const Signal& x1, const Signal& x2, const Signal& y1,
                                   const Signal& y2, double theta, double phi,
                                   const ToleranceProfile& tol = {});

// y(j) = v(j-1) sin(phi) - v(j) cos(phi), v read as zero outside its range.
// Equal to the negated quotient reconstruction of (v, phi).
Signal y_form(const Signal& v, double phi);

// Pathological zero patterns: x = (u, 0), y = (0, v) yields (0, u), (v, 0),
// and the mirrored pattern likewise. Residual is exactly zero.
AmbiguousPair shift_ambiguity(const Signal& x, const Signal& y);

struct AttackResult {
  AmbiguousPair pair;
  double theta;  // x = reconstruct(u, theta)
  double phi;    // y = y_form(v, phi)
  Signal u;
  Signal v;
};

// Builds x' = reconstruct(u, phi), y' = y_form(v, theta) from quotient
// decompositions of x and -y. Needs even m, n >= 4 and nonzero endpoints.
// The first (x-element, y-element) combination in enumeration order with
// |cos(phi)| and |sin(phi - theta)| above 1e-6 that verifies is returned.
AttackResult attack(const Signal& x, const Signal& y, const ToleranceProfile& tol = {});

struct VerificationReport {
  double residual;
  double collinearity;
  bool certifies_unidentifiability;
};

// Recomputes both convolutions. Certifies when the residual is within
// tol.threshold(max|x*y|) and collinearity < 1 - 1e-9.
VerificationReport verify_pair(const AmbiguousPair& p, const ToleranceProfile& tol = {});

}  // namespace blindid
