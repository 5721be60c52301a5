#pragma once

#include "spdcone/eigen_extreme.hpp"
#include "spdcone/error.hpp"
#include "spdcone/geodesics.hpp"
#include "spdcone/lanczos.hpp"
#include "spdcone/matrix_market.hpp"
#include "spdcone/mean.hpp"
#include "spdcone/metrics.hpp"
#include "spdcone/options.hpp"
#include "spdcone/random.hpp"
#include "spdcone/spd_matrix.hpp"
#include "spdcone/sym_matrix.hpp"
