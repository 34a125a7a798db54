#pragma once

#include "dnls/field.hpp"

namespace dnls {

/// (mass, momentum, energy) in one frame.
struct ConservedSet {
  double mass = 0.0;
  double momentum = 0.0;
  double energy = 0.0;
  Frame frame = Frame::Gauged;
};

// All integrals use the rectangle rule on the grid; all derivatives are
// spectral.

/// ||f||_2^2. Frame-independent.
double mass(const Field& f);

/// Gauged frame: P(v) = Im \int conj(v) v_x + (1/4) ||v||_4^4.
double momentum_gauged(const Field& v);
/// Gauged frame: E(v) = ||v_x||_2^2 - (1/16) ||v||_6^6.
double energy_gauged(const Field& v);

/// Original frame: P_D(u) = \int Im(conj(u) u_x) - (1/2)|u|^4.
double momentum_original(const Field& u);
/// Original frame: E_D(u) = \int |u_x|^2 + (3/2)|u|^2 Im(u conj(u_x)) + (1/2)|u|^6.
double energy_original(const Field& u);

/// All three functionals for the field's own frame, sharing one derivative.
ConservedSet conserved(const Field& f);

/// Im \int conj(f) f_x, the transport part of both momenta.
double transport(const Field& f);

}  // namespace dnls
