#pragma once

#include "plcc/errors.hpp"
#include "plcc/marginals.hpp"
#include "plcc/normal.hpp"
#include "plcc/dist_copulas.hpp"
#include "plcc/levy_copulas.hpp"
#include "plcc/random.hpp"
#include "plcc/vine.hpp"
#include "plcc/simulate.hpp"
#include "plcc/estimate.hpp"
