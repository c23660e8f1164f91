#pragma once

#include "guarded/cliquered.hpp"
#include "guarded/comonad.hpp"
#include "guarded/decomposition.hpp"
#include "guarded/error.hpp"
#include "guarded/games.hpp"
#include "guarded/guards.hpp"
#include "guarded/hypergraph.hpp"
#include "guarded/io.hpp"
#include "guarded/openmaps.hpp"
#include "guarded/plays.hpp"
#include "guarded/structures.hpp"
