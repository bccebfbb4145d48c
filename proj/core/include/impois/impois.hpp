#pragma once

// Lower and upper expectations for counting processes with an interval rate.

#include "impois/error.hpp"
#include "impois/function_spec.hpp"
#include "impois/generator.hpp"
#include "impois/imprecise.hpp"
#include "impois/oracle.hpp"
#include "impois/poisson.hpp"
#include "impois/semigroup.hpp"
