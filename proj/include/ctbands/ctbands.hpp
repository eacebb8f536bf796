#pragma once

#include "ctbands/dos.hpp"
#include "ctbands/eigen.hpp"
#include "ctbands/errors.hpp"
#include "ctbands/io.hpp"
#include "ctbands/lattice.hpp"
#include "ctbands/matrix.hpp"
#include "ctbands/models.hpp"
#include "ctbands/parallel.hpp"
#include "ctbands/spectra.hpp"
