#pragma once

#include "polycollatz/checkpoint.hpp"
#include "polycollatz/collatz.hpp"
#include "polycollatz/enumeration.hpp"
#include "polycollatz/error.hpp"
#include "polycollatz/families.hpp"
#include "polycollatz/matthews.hpp"
#include "polycollatz/parallel.hpp"
#include "polycollatz/poly.hpp"
#include "polycollatz/search.hpp"
#include "polycollatz/trace_io.hpp"
#include "polycollatz/word.hpp"
