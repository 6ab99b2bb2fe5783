#pragma once

#include <string>
#include <vector>

#include "elimkit/formula.hpp"

namespace elimkit {

/// Expands `all(X, F)` into the conjunction and `ex(X, F)` into the
/// disjunction of F[X:=c] over the domain constants. Throws PreconditionError
/// when a quantifier meets an empty domain or a variable is left unbound.
Formula expand_quantifiers(const Formula& f, const std::vector<std::string>& domain);

}  // namespace elimkit
