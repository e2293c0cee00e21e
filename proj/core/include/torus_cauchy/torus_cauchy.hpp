#pragma once

#include "torus_cauchy/classifier.hpp"
#include "torus_cauchy/error.hpp"
#include "torus_cauchy/gauge.hpp"
#include "torus_cauchy/io.hpp"
#include "torus_cauchy/log_complex.hpp"
#include "torus_cauchy/oracle.hpp"
#include "torus_cauchy/presets.hpp"
#include "torus_cauchy/spectral_field.hpp"
#include "torus_cauchy/symbol.hpp"
#include "torus_cauchy/time_coeffs.hpp"
#include "torus_cauchy/witness.hpp"
