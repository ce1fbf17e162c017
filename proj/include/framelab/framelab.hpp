#pragma once

#include "framelab/builtins.hpp"
#include "framelab/decompositions.hpp"
#include "framelab/duals.hpp"
#include "framelab/errors.hpp"
#include "framelab/expansion.hpp"
#include "framelab/frame_engine.hpp"
#include "framelab/frame_io.hpp"
#include "framelab/matrix.hpp"
#include "framelab/opnorm.hpp"
#include "framelab/reports.hpp"
#include "framelab/reproduce.hpp"
#include "framelab/scalar.hpp"
#include "framelab/sequence_space.hpp"
#include "framelab/sequences.hpp"
#include "framelab/transform.hpp"
