#pragma once

#include "cliffq/dsl/ast.hpp"
#include "cliffq/dsl/check.hpp"
#include "cliffq/dsl/evaluate.hpp"
#include "cliffq/dsl/infer.hpp"
#include "cliffq/dsl/parser.hpp"
