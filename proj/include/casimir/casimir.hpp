#pragma once

#include "casimir/balance.hpp"
#include "casimir/constants.hpp"
#include "casimir/hole.hpp"
#include "casimir/numerics.hpp"
#include "casimir/pressures.hpp"
#include "casimir/shell.hpp"
#include "casimir/trajectory.hpp"
