#pragma once

// Typed regular expressions: regexes whose parse-tree type is computed from
// the pattern itself, compiled to a routine-labelled Moore machine and run
// in lock-step with thread merging, so matching and parsing are linear in
// the input for a fixed pattern.

#include "tyre/bench.hpp"
#include "tyre/compile.hpp"
#include "tyre/cond.hpp"
#include "tyre/core.hpp"
#include "tyre/error.hpp"
#include "tyre/group.hpp"
#include "tyre/json.hpp"
#include "tyre/literal.hpp"
#include "tyre/machine.hpp"
#include "tyre/run.hpp"
#include "tyre/shape.hpp"
#include "tyre/value.hpp"

namespace tyre {

/// Compiles a regex literal ready for matching; literal errors throw
/// malformed_literal.
inline compiled r(std::string_view literal, bool checked = false) {
    return compiled(compile_literal(literal).second, checked);
}

}  // namespace tyre
