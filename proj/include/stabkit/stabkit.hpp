#pragma once

#include "stabkit/cascade/cascade.hpp"
#include "stabkit/error.hpp"
#include "stabkit/exact/complex_rational.hpp"
#include "stabkit/exact/polynomial.hpp"
#include "stabkit/exact/rational.hpp"
#include "stabkit/exact/ray.hpp"
#include "stabkit/grr/hilbert.hpp"
#include "stabkit/grr/todd.hpp"
#include "stabkit/hn/abel.hpp"
#include "stabkit/hn/poset.hpp"
#include "stabkit/hn/slope.hpp"
#include "stabkit/hn/slope_equivalence.hpp"
#include "stabkit/presets.hpp"
#include "stabkit/ring/bigraded_ring.hpp"
#include "stabkit/ring/presets.hpp"
