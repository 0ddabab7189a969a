#pragma once

#include "latact/affine.hpp"
#include "latact/base_complex.hpp"
#include "latact/fixtures.hpp"
#include "latact/four_manifold.hpp"
#include "latact/io.hpp"
#include "latact/lattice.hpp"
#include "latact/matrix.hpp"
#include "latact/quadratic.hpp"
#include "latact/report.hpp"
#include "latact/smith.hpp"
#include "latact/spectral.hpp"
#include "latact/torus_data.hpp"
