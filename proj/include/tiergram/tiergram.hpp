// Copyright 2026 The tiergram Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TIERGRAM_TIERGRAM_HPP
#define TIERGRAM_TIERGRAM_HPP

#include "tiergram/cfg.hpp"
#include "tiergram/error.hpp"
#include "tiergram/grammar.hpp"
#include "tiergram/grammar_io.hpp"
#include "tiergram/lexer.hpp"
#include "tiergram/membership.hpp"
#include "tiergram/parser.hpp"
#include "tiergram/regular.hpp"
#include "tiergram/tree.hpp"

#endif  // TIERGRAM_TIERGRAM_HPP
