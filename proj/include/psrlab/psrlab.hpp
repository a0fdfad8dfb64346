#pragma once

#include "psrlab/audit.hpp"
#include "psrlab/embedding.hpp"
#include "psrlab/error.hpp"
#include "psrlab/families.hpp"
#include "psrlab/graph.hpp"
#include "psrlab/planarity.hpp"
#include "psrlab/plane_graph.hpp"
#include "psrlab/plane_io.hpp"
#include "psrlab/psr.hpp"
#include "psrlab/rational.hpp"
#include "psrlab/saturation.hpp"
#include "psrlab/skeleton.hpp"
