#pragma once

#include "ring.hpp"
#include "diagram.hpp"
#include "builder.hpp"
#include "bracket.hpp"
#include "conway.hpp"
#include "statesum.hpp"
#include "catalog.hpp"
#include "tangles.hpp"
#include "moves.hpp"
#include "random.hpp"
