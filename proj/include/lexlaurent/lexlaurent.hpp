#pragma once

#include "algebraic.hpp"
#include "calculus.hpp"
#include "cli.hpp"
#include "cone.hpp"
#include "errors.hpp"
#include "flagfile.hpp"
#include "format.hpp"
#include "lattice.hpp"
#include "numeric.hpp"
#include "parse.hpp"
#include "rational.hpp"
#include "series.hpp"
