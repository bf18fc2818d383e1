#pragma once

// Multiplication on the overlapping three-map self-similar family: exact
// rational primitives, covers, product certification, parameter-region
// classification, and constructive product decompositions.

#include "kmul/blue_lemma.hpp"
#include "kmul/classify.hpp"
#include "kmul/decompose.hpp"
#include "kmul/ifs.hpp"
#include "kmul/interval.hpp"
#include "kmul/product.hpp"
#include "kmul/random.hpp"
#include "kmul/rational.hpp"
#include "kmul/roots.hpp"
#include "kmul/scan.hpp"
#include "kmul/serialize.hpp"
