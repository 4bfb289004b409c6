#pragma once

// Stiefel-Whitney heights of simplicial deleted products, the w^(k)
// characteristic-class calculus, and exact PL coincidence oracles.

#include "swheight/char_class.hpp"
#include "swheight/cohomology.hpp"
#include "swheight/corpus.hpp"
#include "swheight/delta_complex.hpp"
#include "swheight/errors.hpp"
#include "swheight/gf2.hpp"
#include "swheight/obstruction.hpp"
#include "swheight/pl_oracle.hpp"
#include "swheight/rational.hpp"
#include "swheight/report.hpp"
#include "swheight/retraction.hpp"
#include "swheight/simplicial_complex.hpp"
