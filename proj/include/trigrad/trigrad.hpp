#pragma once

#include "trigrad/rational.hpp"
#include "trigrad/polynomial.hpp"
#include "trigrad/laurent.hpp"
#include "trigrad/braid.hpp"
#include "trigrad/koszul.hpp"
#include "trigrad/linalg.hpp"
#include "trigrad/factor_complex.hpp"
#include "trigrad/homology.hpp"
#include "trigrad/parallel.hpp"
#include "trigrad/cube.hpp"
#include "trigrad/graphs.hpp"
#include "trigrad/homfly.hpp"
#include "trigrad/report.hpp"
