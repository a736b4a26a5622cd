#pragma once

#include "alink/group.hpp"

namespace alink::detail {

/// Shortlex-least element of {gamma^n g delta^m : n, m in Z}. Either of
/// gamma, delta may be the identity.
Word min_double_coset(const Group& group, const Word& g, const Word& gamma, const Word& delta);

/// Shortlex-least conjugate of g.
Word min_conjugate(const Group& group, const Word& g);

}  // namespace alink::detail
