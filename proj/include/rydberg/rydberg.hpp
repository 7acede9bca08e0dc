#pragma once

#include "errors.hpp"
#include "rootfind.hpp"
#include "specfun.hpp"
#include "quadrature.hpp"
#include "hydrogenic.hpp"
#include "norms.hpp"
#include "asymptotics.hpp"
#include "entropy.hpp"
#include "format.hpp"
