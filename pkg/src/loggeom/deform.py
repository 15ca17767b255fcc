"""Split square-zero extensions, log derivations, strictness classification.

The monoid part of a split square-zero extension is deliberately not
materialized as a presentation: the additive monoid of the module is not
finitely generated in general.  Derivations are handled linearly instead,
as pairs (D, delta) subject to the Leibniz, additivity, and
compatibility constraints, enumerated exactly over finite prime-field
algebras.
"""

from __future__ import annotations

from dataclasses import dataclass

from .logrings import PreLogMap, PreLogRing, is_strict
from .monoids import IncompleteComputation, Undetermined
from .polys import LEX, Poly, freeze_poly, poly_derivative
from . import polys
from .rings import FiniteModule, ModulePresentation, RingMap, RingPresentation


@dataclass(frozen=True)
class SquareZeroExtensionData:
    """A presented surjection with square-zero kernel."""

    total: RingPresentation
    projection: RingMap
    kernel_gens: tuple[tuple, ...]

    def __post_init__(self):
        if self.projection.domain != self.total:
            raise ValueError("projection must start at the total ring")
        kg = tuple(freeze_poly(self.total.nf(dict(p))) for p in self.kernel_gens)
        object.__setattr__(self, "kernel_gens", kg)


def _graph_ring(proj: RingMap):
    """k[codomain vars, domain vars] / (I_cod + graph), lex-eliminating the
    codomain block."""
    dom, cod = proj.domain, proj.codomain
    nd, nc = dom.nvars, cod.nvars
    car = cod.carrier()
    gens = []
    for g in cod.ideal_polys():
        gens.append({e + (0,) * nd: c for e, c in g.items()})
    for j in range(nd):
        img = proj.apply(dom.var(dom.vars[j]))
        lifted = {e + (0,) * nd: c for e, c in img.items()}
        var = {(0,) * nc + tuple(1 if t == j else 0 for t in range(nd)): car.one()}
        gens.append(polys.poly_sub(var, lifted, car))
    names = [f"y{i}" for i in range(nc)] + [f"z{i}" for i in range(nd)]
    return RingPresentation.make(cod.coeff, names, gens)


def _kernel_ideal_gens(proj: RingMap) -> list[Poly]:
    """Generators of ker(projection) by eliminating the codomain block."""
    graph = _graph_ring(proj)
    nc = proj.codomain.nvars
    basis = graph.working_basis(LEX)
    out = []
    for g in basis:
        if all(all(x == 0 for x in e[:nc]) for e in g):
            out.append({e[nc:]: c for e, c in g.items()})
    return out


def is_square_zero_ring_ext(data: SquareZeroExtensionData) -> bool:
    """Validate surjectivity, kernel generation, and I^2 = 0."""
    proj = data.projection
    total, target = data.total, proj.codomain
    for p in data.kernel_gens:
        if not target.is_zero_elem(proj.apply(dict(p))):
            return False
    kg = [dict(p) for p in data.kernel_gens]
    for i, p in enumerate(kg):
        for q in kg[i:]:
            if not total.is_zero_elem(total.mul(p, q)):
                return False
    graph = _graph_ring(proj)
    nc = target.nvars
    nd = total.nvars
    # surjectivity: each codomain variable rewrites into the domain block
    for i in range(nc):
        y = {tuple(1 if t == i else 0 for t in range(nc + nd)): target.carrier().one()}
        r = graph.nf(y, LEX)
        if any(any(x != 0 for x in e[:nc]) for e in r):
            return False
    # kernel generation: the eliminated ideal lies in (kernel gens) + I_total
    extended = data.total.extend_ideal(kg)
    for g in _kernel_ideal_gens(proj):
        if not extended.is_zero_elem(g):
            return False
    return True


@dataclass(frozen=True)
class FormalSplitSquareZero:
    """A + J with module generators as nilpotent variables.

    The monoid part stays formal: the structure rule is
    (m, j) |-> (alpha(m), alpha(m) j), applied linearly where needed.
    """

    base: PreLogRing
    module: ModulePresentation
    ring: RingPresentation
    projection: RingMap
    section: RingMap
    eps_vars: tuple[str, ...]


def split_square_zero(x: PreLogRing, j: ModulePresentation) -> FormalSplitSquareZero:
    if j.ring != x.ring:
        raise ValueError("module must live over the pre-log ring's ring")
    a = x.ring
    taken = set(a.vars)
    eps = []
    for g in j.gens:
        cand = f"e_{g}"
        k = 2
        while cand in taken:
            cand = f"e_{g}_{k}"
            k += 1
        taken.add(cand)
        eps.append(cand)
    names = list(a.vars) + eps
    n_a, n_e = a.nvars, len(eps)
    car = a.carrier()

    def lift(p: Poly) -> Poly:
        return {e + (0,) * n_e: c for e, c in p.items()}

    gens = [lift(g) for g in a.ideal_polys()]
    for row in j.relation_matrix():
        acc: Poly = {}
        for i, entry in enumerate(row):
            evar = {(0,) * n_a + tuple(1 if t == i else 0 for t in range(n_e)): car.one()}
            acc = polys.poly_add(acc, polys.poly_mul(lift(entry), evar, car), car)
        gens.append(acc)
    for i in range(n_e):
        for k in range(i, n_e):
            e = [0] * (n_a + n_e)
            e[n_a + i] += 1
            e[n_a + k] += 1
            gens.append({tuple(e): car.one()})
    ring = RingPresentation.make(a.coeff, names, gens)
    proj = RingMap.make(ring, a, [a.var(v) for v in a.vars] + [a.zero()] * n_e)
    sect = RingMap.make(a, ring, [ring.var(v) for v in a.vars])
    return FormalSplitSquareZero(x, j, ring, proj, sect, tuple(eps))


@dataclass(frozen=True)
class LogDerivation:
    """(D, delta): ring-generator images and monoid-generator images in J."""

    ring_images: tuple[tuple[int, ...], ...]
    monoid_images: tuple[tuple[int, ...], ...]


def log_derivations(x: PreLogRing, j: ModulePresentation,
                    base: PreLogMap | None = None) -> list[LogDerivation]:
    """All log derivations of (A, M) into J, by exhaustive enumeration.

    Requires a finite prime-field algebra.  A derivation is a pair of a
    ring derivation D (Leibniz over the ideal) and an additive monoid map
    delta with D(alpha(m)) = alpha(m) delta(m); relative derivations also
    kill the base.
    """
    a = x.ring
    if a.coeff.kind != "fp":
        raise Undetermined("derivation enumeration needs a finite prime-field algebra")
    fm = FiniteModule(j)
    car = a.carrier()
    elements = [tuple(v) for v in fm.elements()]

    def as_polys(vec):
        out = []
        for gi in range(fm.ngens):
            p: Poly = {}
            for bi, e in enumerate(fm.basis):
                c = vec[gi * fm.dim_ring + bi]
                if c:
                    p[e] = c
            out.append(p)
        return out

    def scale_add(acc, coeff_poly, vec):
        # acc += coeff_poly * vec, componentwise over module generators
        target = as_polys(vec)
        for gi in range(fm.ngens):
            prod = a.mul(coeff_poly, target[gi])
            acc[gi] = a.add(acc[gi], prod)
        return acc

    def is_zero_vec(acc):
        flat = fm.vector_of(acc)
        return not any(flat)

    found = []
    ring_choices = _tuples(elements, a.nvars)
    mono_choices = _tuples(elements, x.monoid.ngens)
    for ring_imgs in ring_choices:
        # Leibniz on ideal generators
        ok = True
        for g in a.ideal_polys():
            acc = [a.zero() for _ in range(fm.ngens)]
            for i in range(a.nvars):
                acc = scale_add(acc, poly_derivative(g, i, car), ring_imgs[i])
            if not is_zero_vec(acc):
                ok = False
                break
        if ok and base is not None:
            r = base.domain.ring
            for t in range(r.nvars):
                img = base.ring_map.apply(r.var(r.vars[t]))
                acc = [a.zero() for _ in range(fm.ngens)]
                for i in range(a.nvars):
                    acc = scale_add(acc, poly_derivative(img, i, car), ring_imgs[i])
                if not is_zero_vec(acc):
                    ok = False
                    break
        if not ok:
            continue
        for mono_imgs in mono_choices:
            good = True
            for u, v in x.monoid.relations:
                acc = [a.zero() for _ in range(fm.ngens)]
                for t in range(x.monoid.ngens):
                    c = u[t] - v[t]
                    if c:
                        acc = scale_add(acc, a.const(c), mono_imgs[t])
                if not is_zero_vec(acc):
                    good = False
                    break
            if good and base is not None:
                for t in range(base.domain.monoid.ngens):
                    word = base.monoid_map.images[t]
                    acc = [a.zero() for _ in range(fm.ngens)]
                    for s, c in enumerate(word):
                        if c:
                            acc = scale_add(acc, a.const(c), mono_imgs[s])
                    if not is_zero_vec(acc):
                        good = False
                        break
            if good:
                for t in range(x.monoid.ngens):
                    alpha = dict(x.alpha[t])
                    acc = [a.zero() for _ in range(fm.ngens)]
                    for i in range(a.nvars):
                        acc = scale_add(acc, poly_derivative(alpha, i, car), ring_imgs[i])
                    # subtract alpha(m) * delta(m)
                    neg = [a.zero() for _ in range(fm.ngens)]
                    neg = scale_add(neg, alpha, mono_imgs[t])
                    for gi in range(fm.ngens):
                        acc[gi] = a.sub(acc[gi], neg[gi])
                    if not is_zero_vec(acc):
                        good = False
                        break
            if good:
                found.append(LogDerivation(tuple(ring_imgs), tuple(mono_imgs)))
    return found


def _tuples(pool, n):
    out = [()]
    for _ in range(n):
        out = [t + (p,) for t in out for p in pool]
    return out


def classify_log_square_zero(f: PreLogMap, bound: int | None = None) -> str:
    """Theorem-level verdict: {log-square-zero | not | undetermined}.

    The underlying ring map must be a square-zero extension (kernel
    computed by elimination); the verdict is then strictness.
    """
    kernel = _kernel_ideal_gens(f.ring_map)
    data = SquareZeroExtensionData(
        f.ring_map.domain, f.ring_map,
        tuple(freeze_poly(g) for g in kernel))
    if not is_square_zero_ring_ext(data):
        raise ValueError("underlying ring map is not a square-zero extension")
    try:
        return "log-square-zero" if is_strict(f, bound=bound) else "not"
    except (Undetermined, IncompleteComputation):
        return "undetermined"


def derivation_str(d: LogDerivation, x: PreLogRing, j: ModulePresentation) -> str:
    parts = []
    for v, img in zip(x.ring.vars, d.ring_images):
        parts.append(f"D({v})=({','.join(str(c) for c in img)})")
    for g, img in zip(x.monoid.generators, d.monoid_images):
        parts.append(f"delta({g})=({','.join(str(c) for c in img)})")
    return "; ".join(parts) or "trivial"
