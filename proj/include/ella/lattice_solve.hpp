#ifndef ELLA_LATTICE_SOLVE_HPP
#define ELLA_LATTICE_SOLVE_HPP

#include <vector>

#include "ella/intmat.hpp"
#include "ella/qpair.hpp"

namespace ella {

// Solution set of  sum_i t_i a_ij = z_j  on E^k for a k x l coefficient
// block of rank l.  For l == k these are the (|det a|)^2 intersection
// points; for l < k each base point carries the common (k-l) x k integer
// direction block, i.e. the solutions are parallel (k-l)-subtori.
struct esolutions {
    std::vector<std::vector<epoint>> points; // sorted lexicographically
    intmat directions;                       // (k-l) x k, rows span the tangent block
};

esolutions solve_on_e(const intmat& a, const std::vector<epoint>& z);

} // namespace ella

#endif
