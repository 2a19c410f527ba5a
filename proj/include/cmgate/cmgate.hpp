#pragma once

#include "bipoly.hpp"
#include "classpoly.hpp"
#include "config.hpp"
#include "ecurve.hpp"
#include "endoring.hpp"
#include "error.hpp"
#include "ffield.hpp"
#include "gates.hpp"
#include "modpoly.hpp"
#include "numtheory.hpp"
#include "ordertools.hpp"
#include "parse.hpp"
#include "poly.hpp"
#include "report.hpp"
