#pragma once

#include "islands/bounds.hpp"
#include "islands/canonical.hpp"
#include "islands/enumeration.hpp"
#include "islands/errors.hpp"
#include "islands/exact_geom.hpp"
#include "islands/experiments.hpp"
#include "islands/horton.hpp"
#include "islands/point.hpp"
#include "islands/pointset.hpp"
#include "islands/rational.hpp"
#include "islands/sampler.hpp"
