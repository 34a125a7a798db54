#pragma once

#include "dnls/field.hpp"
#include "dnls/harness/config.hpp"

namespace dnls::harness {

/// Grid from grid.L and grid.n.
Grid parse_grid(const ConfigMap& cfg, double default_L, long default_n);

/// Datum from the datum.* keys, in the frame given by datum.frame
/// (default original). Families:
///   gaussian       datum.A, datum.w, datum.x0, datum.chirp, datum.carrier
///   multi-gaussian datum.components = "A,w,x0,chirp;A,w,x0,chirp;..."
///   plane-wave     datum.A, datum.xi0 (must sit on the frequency lattice)
///   file           datum.path, an x,re,im CSV on the configured grid
Field parse_datum(const ConfigMap& cfg, const Grid& grid);

/// Moves a datum to `target` with the gauge maps when the frames differ.
Field to_frame(const Field& f, Frame target);

}  // namespace dnls::harness
