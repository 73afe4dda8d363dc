#pragma once

#include "gla/scalar.hpp"
#include "gla/linalg.hpp"
#include "gla/exterior.hpp"
#include "gla/multimap.hpp"
#include "gla/derivation.hpp"
#include "gla/schouten.hpp"
#include "gla/quadratic.hpp"
#include "gla/cohomology.hpp"
#include "gla/json_io.hpp"
#include "gla/random.hpp"
