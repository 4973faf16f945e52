#pragma once

#include "field.hpp"
#include "matrix.hpp"
#include "monomial.hpp"
#include "lattice.hpp"
#include "homology.hpp"
#include "resolution.hpp"
#include "betti.hpp"
#include "classify.hpp"
#include "ln.hpp"
#include "random.hpp"
#include "theorems.hpp"
#include "io.hpp"
