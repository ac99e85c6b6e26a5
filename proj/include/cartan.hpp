#pragma once

#include "cartan/abelian.hpp"
#include "cartan/cartan_diag.hpp"
#include "cartan/constructions.hpp"
#include "cartan/cyclotomic.hpp"
#include "cartan/equivalence.hpp"
#include "cartan/errors.hpp"
#include "cartan/groupoid.hpp"
#include "cartan/instance_io.hpp"
#include "cartan/integer_matrix.hpp"
#include "cartan/normalizer.hpp"
#include "cartan/root_of_unity.hpp"
#include "cartan/rotation.hpp"
#include "cartan/twist.hpp"
#include "cartan/twisted_dual.hpp"
#include "cartan/weyl.hpp"
