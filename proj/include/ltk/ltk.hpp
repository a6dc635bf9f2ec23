#pragma once

#include "ltk/types.hpp"
#include "ltk/random.hpp"
#include "ltk/minkowski.hpp"
#include "ltk/lorentz_group.hpp"
#include "ltk/quotient.hpp"
#include "ltk/sampling.hpp"
#include "ltk/kaehler.hpp"
#include "ltk/orbit_connect.hpp"
#include "ltk/io.hpp"
#include "ltk/suites.hpp"
