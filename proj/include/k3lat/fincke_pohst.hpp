#pragma once

// Exact short-vector enumeration on negative definite forms, used for the
// per-level searches of the wall and root enumerators.

#include "k3lat/matq.hpp"

namespace k3lat {

// All integer x with x^T A x + 2 b^T x + c = t, for A symmetric negative
// definite over Q.  Lexicographically sorted.  The optional node budget
// bounds the number of search-tree nodes visited; when it is hit the partial
// result is returned and *complete is set false.
std::vector<ZVec> enumerate_quadric(const QMat& A, const QVec& b, const Q& c, const Q& t,
                                    long node_budget = -1, bool* complete = nullptr);

// All integer x with x^T A x = t (A negative definite).
std::vector<ZVec> enumerate_norm(const QMat& A, const Q& t);

}  // namespace k3lat
