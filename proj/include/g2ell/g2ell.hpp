#pragma once

// Umbrella header.

#include "g2ell/core.hpp"
#include "g2ell/numerics.hpp"
#include "g2ell/curves.hpp"
#include "g2ell/periods.hpp"
#include "g2ell/theta.hpp"
#include "g2ell/sigma.hpp"
#include "g2ell/sampling.hpp"
#include "g2ell/reduction.hpp"
#include "g2ell/verify.hpp"
