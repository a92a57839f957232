#pragma once

#include "supertrop/bipotent.hpp"
#include "supertrop/errors.hpp"
#include "supertrop/expression.hpp"
#include "supertrop/finite_lab.hpp"
#include "supertrop/kapranov.hpp"
#include "supertrop/polynomial.hpp"
#include "supertrop/rational.hpp"
#include "supertrop/sampling.hpp"
#include "supertrop/supertropical.hpp"
#include "supertrop/supervaluation.hpp"
#include "supertrop/svg.hpp"
#include "supertrop/valuation.hpp"
