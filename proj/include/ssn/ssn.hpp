#pragma once

#include "ssn/arith.hpp"
#include "ssn/catalog.hpp"
#include "ssn/classifier.hpp"
#include "ssn/errors.hpp"
#include "ssn/expr.hpp"
#include "ssn/network.hpp"
#include "ssn/sfs.hpp"
#include "ssn/surgery.hpp"
#include "ssn/torus_knot.hpp"
#include "ssn/twist.hpp"
#include "ssn/verifiers.hpp"
