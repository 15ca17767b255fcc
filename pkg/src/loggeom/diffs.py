"""Log differentials, indecomposables, the log diagonal, replete abelianization.

The module of log differentials is presented directly from the explicit
formula: ring differentials and dlog generators modulo Jacobian rows,
monoid-relation rows, and the gluing d(alpha(m)) = alpha(m) dlog(m).  The
replete abelianization runs the whole pipeline instead: tensor up, replete
the monoid along the fold, tensor the monoid algebras, and take
indecomposables of the resulting augmented algebra.  Agreement of the two
is an acceptance property, not an assumption.
"""

from __future__ import annotations

from dataclasses import dataclass

from .logrings import PreLogMap, PreLogRing, identity_prelog_map
from .monoids import MonoidMap, direct_sum, monoid_algebra, monoid_algebra_map, repletion
from .polys import poly_derivative
from .rings import (
    INT, ModulePresentation, RingMap, RingPresentation, coefficient_map,
    tensor_over,
)


@dataclass(frozen=True)
class AugmentedAlgebra:
    """An algebra with a section: unit A -> C and augmentation C -> A."""

    base: RingPresentation
    algebra: RingPresentation
    unit: RingMap
    augmentation: RingMap

    def __post_init__(self):
        if self.unit.domain != self.base or self.unit.codomain != self.algebra:
            raise ValueError("unit map endpoints are wrong")
        if self.augmentation.domain != self.algebra or \
           self.augmentation.codomain != self.base:
            raise ValueError("augmentation endpoints are wrong")
        if not self.augmentation.compose(self.unit).is_identity_like():
            raise ValueError("augmentation does not split the unit")


def indecomposables(aug: AugmentedAlgebra) -> ModulePresentation:
    """I/I^2 for I = ker(augmentation), as a module over the base.

    One generator per algebra variable; rows are the augmented Jacobians
    of the algebra's ideal generators and of the unit images (the latter
    force the classes of base elements to vanish).
    """
    a, c = aug.base, aug.algebra
    car = c.carrier()
    rows = []
    for g in c.ideal_polys():
        rows.append([aug.augmentation.apply(poly_derivative(g, i, car))
                     for i in range(c.nvars)])
    for j in range(a.nvars):
        img = dict(aug.unit.images[j])
        rows.append([aug.augmentation.apply(poly_derivative(img, i, car))
                     for i in range(c.nvars)])
    return ModulePresentation.make(a, [f"e_{v}" for v in c.vars], rows)


def log_differentials(x: PreLogRing, base: PreLogMap | None = None) -> ModulePresentation:
    """Module of log differentials, relative to an optional base map.

    Generators: d<var> per ring variable and dlog_<gen> per monoid
    generator.  Relations: Jacobian rows of the ring ideal; integer rows
    from monoid relations; d(alpha(m)) - alpha(m) dlog(m) per generator;
    and, relatively, vanishing of base differentials and base dlogs.
    """
    if base is not None and base.codomain != x:
        raise ValueError("base map must land in the pre-log ring")
    a = x.ring
    m = x.monoid
    car = a.carrier()
    width = a.nvars + m.ngens
    rows = []

    def ring_row(partials, dlog_part):
        return [a.nf(p) for p in partials] + [a.nf(q) for q in dlog_part]

    for g in a.ideal_polys():
        rows.append(ring_row([poly_derivative(g, i, car) for i in range(a.nvars)],
                             [a.zero()] * m.ngens))
    for u, v in m.relations:
        dlogs = [a.const(u[j] - v[j]) for j in range(m.ngens)]
        rows.append(ring_row([a.zero()] * a.nvars, dlogs))
    for j in range(m.ngens):
        alpha = dict(x.alpha[j])
        dlogs = [a.zero()] * m.ngens
        dlogs[j] = a.neg(alpha)
        rows.append(ring_row([poly_derivative(alpha, i, car) for i in range(a.nvars)],
                             dlogs))
    if base is not None:
        r = base.domain.ring
        for j in range(r.nvars):
            img = base.ring_map.apply(r.var(r.vars[j]))
            rows.append(ring_row([poly_derivative(img, i, car) for i in range(a.nvars)],
                                 [a.zero()] * m.ngens))
        for j in range(base.domain.monoid.ngens):
            word = base.monoid_map.images[j]
            dlogs = [a.const(word[t]) for t in range(m.ngens)]
            rows.append(ring_row([a.zero()] * a.nvars, dlogs))
    names = [f"d{v}" for v in a.vars] + [f"dlog_{g}" for g in m.generators]
    return ModulePresentation.make(a, names, rows)


def replete_augmented_algebra(f: PreLogMap) -> AugmentedAlgebra:
    """(A tensor B)^rep -> A for f: (B, N) -> (A, M), repleted along the fold.

    The monoid M + N is repleted with respect to (id, f) : M + N -> M,
    split by the inclusion of M; the ring is base-changed along the
    corresponding map of monoid algebras.
    """
    xa, xb = f.codomain, f.domain
    a, b = xa.ring, xb.ring
    m, n = xa.monoid, xb.monoid
    mn, i_m, i_n = direct_sum(m, n)
    fold = MonoidMap(mn, m, tuple(
        [tuple(1 if t == j else 0 for t in range(m.ngens)) for j in range(m.ngens)]
        + [f.monoid_map.images[j] for j in range(n.ngens)]))
    rep = repletion(fold, section=i_m)

    base_coeff_ring = RingPresentation.make(b.coeff, [], [])
    ab, into_a, into_b = tensor_over(coefficient_map(base_coeff_ring, a),
                                     coefficient_map(base_coeff_ring, b))
    zmn = monoid_algebra(mn, INT)
    zrep = monoid_algebra(rep.monoid, INT)
    alg_c = monoid_algebra_map(rep.from_domain, zmn, zrep)
    alpha_images = []
    for j in range(m.ngens):
        alpha_images.append(into_a.apply(dict(xa.alpha[j])))
    for j in range(n.ngens):
        alpha_images.append(into_b.apply(dict(xb.alpha[j])))
    to_ab = RingMap.make(zmn, ab, alpha_images)
    big, from_ab, from_zrep = tensor_over(to_ab, alg_c)

    # augmentation: multiply the two ring factors, evaluate rep generators
    # through the pullback projection and the structure map
    images = []
    for j in range(a.nvars):
        images.append(a.var(a.vars[j]))
    for j in range(b.nvars):
        images.append(f.ring_map.apply(b.var(b.vars[j])))
    for k in range(rep.monoid.ngens):
        word = rep.to_codomain.images[k]
        images.append(xa.alpha_of(word))
    augmentation = RingMap.make(big, a, images)
    unit_images = [from_ab.apply(into_a.apply(a.var(v))) for v in a.vars]
    unit = RingMap.make(a, big, unit_images)
    return AugmentedAlgebra(a, big, unit, augmentation)


def log_diagonal(x: PreLogRing) -> AugmentedAlgebra:
    """The repleted multiplication map (A tensor A)^rep -> A."""
    return replete_augmented_algebra(identity_prelog_map(x))


def replete_abelianization(f: PreLogMap) -> ModulePresentation:
    """Indecomposables of the repleted base change: an A-module."""
    return indecomposables(replete_augmented_algebra(f))

