#pragma once

/// Umbrella header for the qdog library (everything except the CLI front
/// end, which pulls in the vendored CLI11 parser).

#include "convolve.hpp"
#include "edges.hpp"
#include "image.hpp"
#include "kernel.hpp"
#include "pnm.hpp"
#include "qmath.hpp"
#include "scene.hpp"
