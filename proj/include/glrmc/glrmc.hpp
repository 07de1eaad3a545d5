#pragma once

#include "glrmc/assumption.hpp"
#include "glrmc/bounds.hpp"
#include "glrmc/error.hpp"
#include "glrmc/feasibility.hpp"
#include "glrmc/field_matrix.hpp"
#include "glrmc/index_set.hpp"
#include "glrmc/matching.hpp"
#include "glrmc/oracle.hpp"
#include "glrmc/pattern.hpp"
#include "glrmc/rng.hpp"
#include "glrmc/sampler.hpp"
