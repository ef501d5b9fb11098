#pragma once

#include "correlations.hpp"
#include "dynamics.hpp"
#include "errors.hpp"
#include "io.hpp"
#include "matqm.hpp"
#include "model.hpp"
#include "parallel.hpp"
#include "witness.hpp"
