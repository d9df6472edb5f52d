#pragma once

#include "gtight/errors.hpp"
#include "gtight/extended_nat.hpp"
#include "gtight/groupoid.hpp"
#include "gtight/operator_model.hpp"
#include "gtight/representations.hpp"
#include "gtight/semilattice.hpp"
#include "gtight/suites.hpp"
#include "gtight/word.hpp"
