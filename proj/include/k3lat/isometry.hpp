#pragma once

#include "k3lat/sublattice.hpp"

#include <optional>
#include <utility>

namespace k3lat {

// Isometries are integer matrices acting on column coordinate vectors: x -> m x.

bool is_isometry(const Lattice& L, const ZMat& m);
bool is_involution(const Lattice& L, const ZMat& m);

// Reflection r_v(x) = x - 2(x,v)/(v,v) v.  Throws when v is isotropic or the
// map fails to be integral on L; try_reflection reports failure as nullopt.
ZMat reflection(const Lattice& L, const ZVec& v);
std::optional<ZMat> try_reflection(const Lattice& L, const ZVec& v);
QMat reflection_q(const QMat& gram, const QVec& v);

// Saturated eigenlattices ker(m - id) and ker(m + id).
Sublattice fixed_lattice(const Lattice& L, const ZMat& m);
Sublattice coinvariant_lattice(const Lattice& L, const ZMat& m);

// Action induced on the discriminant group; column i holds the decomposition
// of the image of the i-th canonical generator.
struct DiscAction {
    ZVec invariants;
    ZMat matrix;
    bool operator==(const DiscAction&) const = default;
};
DiscAction discriminant_action(const DiscriminantGroup& A, const ZMat& m);
bool is_stable(const Lattice& L, const ZMat& m);
bool is_disc_pm(const Lattice& L, const ZMat& m);

// Real spinor norm under the convention that O+ is the stabilizer of the
// orientation of a maximal positive-definite subspace.  Two independent
// implementations: a Cartan-Dieudonne reflection product and an orientation
// determinant; real_spinor_norm uses the orientation route.
int spinor_norm_reflect(const Lattice& L, const ZMat& m);
int spinor_norm_orient(const Lattice& L, const ZMat& m);
int real_spinor_norm(const Lattice& L, const ZMat& m);
bool in_O_plus(const Lattice& L, const ZMat& m);

// Rational Cartan-Dieudonne decomposition: vectors whose reflections compose
// to m.  Exposed for the property tests.
std::vector<QVec> cartan_dieudonne(const QMat& gram, const QMat& m);

// Monodromy membership for the rank-23 lattice of the n-series: O+ together
// with discriminant action +-id.  Throws when L does not carry that Gram.
bool in_monodromy(const Lattice& L, const ZMat& m, int n);

// The involution acting as +1 on M and -1 on its complement, when integral.
std::optional<ZMat> involution_from_sublattice(const Sublattice& M);

struct AdmissibleReport {
    bool primitive = false;
    bool hyperbolic = false;
    bool integral = false;
    bool monodromy = false;
    bool admissible = false;
    std::string failed_clause;  // empty when admissible
    std::optional<ZMat> involution;
};
AdmissibleReport is_admissible(const Sublattice& M, int n);

// Extension of phi (+) psi across the glue group.  When the images of the
// glue generators under the induced discriminant actions fail to match, the
// certificate records the offending generator and both decompositions.
struct ExtendCertificate {
    std::string reason;  // "image_escapes_glue" or "psi_mismatch"
    int generator = -1;
    ZVec required;
    ZVec actual;
};
struct ExtendResult {
    bool exists = false;
    ZMat matrix;
    ExtendCertificate certificate;
};
ExtendResult extend_isometry(const GlueData& g, const ZMat& phi, const ZMat& psi);

// The unique rational map restricting to phi and psi, with no integrality
// decision taken; kept separate so tests can compare the two routes.
QMat glued_rational_matrix(const GlueData& g, const ZMat& phi, const ZMat& psi);

// Extension of a stable isometry of S by the identity on the complement.
ZMat extend_stable(const Sublattice& S, const ZMat& sigma);

// Integral eigen-representatives delta + iota(delta), delta - iota(delta).
std::pair<ZVec, ZVec> gamma_representatives(const Lattice& L, const ZVec& delta,
                                            const ZMat& iota);

}  // namespace k3lat
