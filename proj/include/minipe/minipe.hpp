#pragma once

#include "minipe/ast.hpp"
#include "minipe/commands.hpp"
#include "minipe/dfa.hpp"
#include "minipe/errors.hpp"
#include "minipe/fuel.hpp"
#include "minipe/interpreter.hpp"
#include "minipe/naive_peval.hpp"
#include "minipe/postopt.hpp"
#include "minipe/specializer.hpp"
#include "minipe/syntax.hpp"
#include "minipe/value.hpp"
