#ifndef REINHARDT_REINHARDT_HPP
#define REINHARDT_REINHARDT_HPP

#include <reinhardt/construct.hpp>
#include <reinhardt/convex.hpp>
#include <reinhardt/decompose.hpp>
#include <reinhardt/error.hpp>
#include <reinhardt/family.hpp>
#include <reinhardt/grid.hpp>
#include <reinhardt/hadamard.hpp>
#include <reinhardt/index.hpp>
#include <reinhardt/oracle.hpp>
#include <reinhardt/sampled_function.hpp>
#include <reinhardt/series.hpp>

#endif
