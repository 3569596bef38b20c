// Umbrella header.
#pragma once

#include "lgcone/checks.hpp"
#include "lgcone/cone.hpp"
#include "lgcone/hyperi.hpp"
#include "lgcone/invariants.hpp"
#include "lgcone/io.hpp"
#include "lgcone/model.hpp"
#include "lgcone/monomial.hpp"
#include "lgcone/parallel.hpp"
#include "lgcone/pipelines.hpp"
#include "lgcone/rational.hpp"
#include "lgcone/series.hpp"
#include "lgcone/state_vector.hpp"
