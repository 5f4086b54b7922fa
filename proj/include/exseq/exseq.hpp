#pragma once

#include "exseq/arith.hpp"
#include "exseq/lattice.hpp"
#include "exseq/numclass.hpp"
#include "exseq/mutation.hpp"
#include "exseq/toric_system.hpp"
#include "exseq/fan.hpp"
#include "exseq/toric_geometry.hpp"
#include "exseq/gale_fan.hpp"
#include "exseq/markov.hpp"
#include "exseq/reduction.hpp"
#include "exseq/io.hpp"
#include "exseq/svg.hpp"
