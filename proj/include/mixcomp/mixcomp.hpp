#pragma once

// Umbrella header: the whole library in one include.

#include "mixcomp/core.hpp"
#include "mixcomp/orders.hpp"
#include "mixcomp/chains.hpp"
#include "mixcomp/spectral.hpp"
#include "mixcomp/mixing.hpp"
#include "mixcomp/duality.hpp"
#include "mixcomp/structures.hpp"
#include "mixcomp/chainspec.hpp"
#include "mixcomp/verify.hpp"
