/** \file    model.h
    \brief   A validated presentation together with its polytope and vertex list
*/
#pragma once
#include "toric/lattice.h"
#include "toric/polytope.h"

namespace toric {

/** Immutable bundle of a presentation, its moment polyhedron and its vertices.
    Built once and shared by the reduction, kahler and coords routines.
*/
class ToricModel {
public:
    explicit ToricModel(const ToricPresentation& pres, double tol = polytope::DEFAULT_TOL) :
        pres(pres), hs(pres.B, pres.kappa), verts(polytope::enumerate_vertices(hs, tol)) {}

    const ToricPresentation& presentation() const { return pres; }
    const polytope::HalfSpaceSet& halfspaces() const { return hs; }
    const std::vector<VertexRecord>& vertices() const { return verts; }
    std::size_t d() const { return pres.d(); }
    std::size_t n() const { return pres.n(); }

private:
    ToricPresentation pres;
    polytope::HalfSpaceSet hs;
    std::vector<VertexRecord> verts;
};

}  // namespace toric
