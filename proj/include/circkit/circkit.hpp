#pragma once

#include "circkit/circulant.hpp"
#include "circkit/coeff_oracle.hpp"
#include "circkit/errors.hpp"
#include "circkit/fast_permanent.hpp"
#include "circkit/gt_systems.hpp"
#include "circkit/interpolate.hpp"
#include "circkit/json_io.hpp"
#include "circkit/mod_arith.hpp"
#include "circkit/poly.hpp"
#include "circkit/verify.hpp"
