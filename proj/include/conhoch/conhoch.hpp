#pragma once

#include "conhoch/algebra.hpp"
#include "conhoch/cohomology.hpp"
#include "conhoch/differential.hpp"
#include "conhoch/diffops.hpp"
#include "conhoch/errors.hpp"
#include "conhoch/functions.hpp"
#include "conhoch/linalg.hpp"
#include "conhoch/membership.hpp"
#include "conhoch/model.hpp"
#include "conhoch/parallel.hpp"
#include "conhoch/poly.hpp"
#include "conhoch/rational.hpp"
#include "conhoch/starprod.hpp"
