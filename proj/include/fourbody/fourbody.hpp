#pragma once

#include "fourbody/errors.hpp"
#include "fourbody/geometry.hpp"
#include "fourbody/limits.hpp"
#include "fourbody/model.hpp"
#include "fourbody/orbits.hpp"
#include "fourbody/record.hpp"
#include "fourbody/roots.hpp"
#include "fourbody/solver.hpp"
#include "fourbody/symmetry.hpp"
