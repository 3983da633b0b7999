#pragma once

// Pointed rational polyhedral cones with exact double-description
// conversion, hyperplane splitting and facial tests.  Rays are kept
// primitive and lexicographically sorted; `normals`, when nonempty, is a
// complete (possibly redundant) list of inward halfspace functionals.

#include "k3lat/matz.hpp"

namespace k3lat {

struct Cone {
    int dim = 0;
    std::vector<ZVec> rays;
    std::vector<ZVec> normals;
};

// cone generated by the given rays; a dual halfspace description is attached
// automatically in the simplicial full-dimensional case
Cone cone_from_rays(int dim, const std::vector<ZVec>& rays);

// {x : n.x >= 0 for every listed n} via incremental double description;
// requires the normals to span (so the cone is pointed)
Cone cone_from_halfspaces(int dim, const std::vector<ZVec>& normals);

// split a described cone along f.x = 0 into its f>=0 and f<=0 parts
std::pair<Cone, Cone> split_cone(const Cone& C, const ZVec& f);

int cone_dim(const Cone& C);
ZVec interior_point(const Cone& C);

// signs of the functional f on the rays of C (-1, 0, +1 entries)
std::vector<int> ray_signs(const ZVec& f, const Cone& C);

// does {f = 0} meet the relative interior (open) or the cone minus the
// origin (closed)?  Pure sign tests on the ray values.
bool meets_open(const std::vector<int>& signs);
bool meets_closed(const std::vector<int>& signs);

// is {f = 0} a supporting hyperplane touching C in a facet?
bool is_facet(const Cone& C, const ZVec& f);

}  // namespace k3lat
