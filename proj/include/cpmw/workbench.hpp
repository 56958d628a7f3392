// Umbrella header.
#pragma once

#include "cpmw/basis_search.hpp"
#include "cpmw/choi.hpp"
#include "cpmw/complex_matrix.hpp"
#include "cpmw/conditions.hpp"
#include "cpmw/errors.hpp"
#include "cpmw/gram_schmidt.hpp"
#include "cpmw/groupoid.hpp"
#include "cpmw/hermitian_eig.hpp"
#include "cpmw/matrix_basis.hpp"
#include "cpmw/metrology.hpp"
#include "cpmw/rel.hpp"
#include "cpmw/rel_enumerate.hpp"
#include "cpmw/rng.hpp"
#include "cpmw/serialization.hpp"
#include "cpmw/superoperator.hpp"
