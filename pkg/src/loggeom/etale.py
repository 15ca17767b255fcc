"""Charted log-etale verification, root adjunction, base change.

The chart criterion has two halves.  The ring half forms
B = R tensor_{Z[P]} Z[M] and presents the induced map B -> A; when the
presentation prunes to a square system the determinant-of-Jacobian test
decides etale-ness exactly, otherwise only unramifiedness (vanishing
relative differentials) is certified.  The group half asks that
P^gp -> M^gp is injective with every invariant factor of its cokernel
invertible in A.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import intlin
from .logrings import PreLogMap, PreLogRing
from .monoids import MonoidMap, MonoidPresentation, monoid_algebra, monoid_algebra_map, pushout_monoid
from .polys import Poly, poly_derivative
from .rings import (
    INT, RingMap, RingPresentation, _poly_det, is_unit, is_zero_module,
    kahler_differentials, poly_str, tensor_over,
)
from .diffs import log_differentials


@dataclass(frozen=True)
class ChartReport:
    etale_status: str             # etale | unramified-only | fail | unknown
    etale_evidence: str
    group_status: str             # pass | fail
    injective: bool
    invariant_factors: tuple[int, ...]
    overall: bool
    diagnostics: tuple[str, ...] = field(default=())

    def to_payload(self) -> dict:
        return {
            "etale_status": self.etale_status,
            "etale_evidence": self.etale_evidence,
            "group_status": self.group_status,
            "gp_injective": self.injective,
            "cokernel_invariant_factors": list(self.invariant_factors),
            "overall": self.overall,
            "diagnostics": list(self.diagnostics),
        }


def chart_ring(chart: PreLogMap):
    """B = R tensor_{Z[P]} Z[M] with the induced map B -> A."""
    r = chart.domain.ring
    a = chart.codomain.ring
    zp = monoid_algebra(chart.domain.monoid, INT)
    zm = monoid_algebra(chart.codomain.monoid, INT)
    to_r = RingMap.make(zp, r, [dict(p) for p in chart.domain.alpha])
    to_zm = monoid_algebra_map(chart.monoid_map, zp, zm)
    b, from_r, from_zm = tensor_over(to_r, to_zm)
    images = [chart.ring_map.apply(r.var(v)) for v in r.vars]
    images += [chart.codomain.alpha_of(
        tuple(1 if t == j else 0 for t in range(chart.codomain.monoid.ngens)))
        for j in range(chart.codomain.monoid.ngens)]
    b_to_a = RingMap.make(b, a, images)
    return b, b_to_a


def _const_is_unit(coeff, c) -> bool:
    scalars = RingPresentation.make(coeff, [], [])
    return is_unit(scalars.const(c), scalars)[0]


def _unit_multiple(g: Poly, h: Poly, ring: RingPresentation) -> bool:
    """Whether g = u*h for a unit constant u of the coefficient domain."""
    if set(g) != set(h) or not g:
        return g == h
    car = ring.carrier()
    ratio = None
    for e in g:
        if car.is_zero(h[e]):
            return False
        if ring.coeff.is_field:
            r = car.div(g[e], h[e])
        else:
            from fractions import Fraction
            r = Fraction(g[e]) / Fraction(h[e])
        if ratio is None:
            ratio = r
        elif ratio != r:
            return False
    try:
        return _const_is_unit(ring.coeff, ring.coeff.validate_coeff(ratio))
    except ValueError:
        return False


def _pruned_system(b_to_a: RingMap):
    """Prune the graph presentation of A over B down to a square system.

    A is presented over B by A's ideal generators plus the graph
    relations b - phi(b).  Sound moves, iterated to a fixed point:
    eliminate a variable that is literally the image of a B-variable;
    eliminate a variable occurring linearly with a unit constant
    coefficient in an A-ideal generator (textual substitution); drop
    A-ideal generators that are literally images of B-ideal generators;
    drop graph relations whose two sides already agree in B.  Returns
    (new_vars, relation rows) for a square remainder, None otherwise.
    """
    from .polys import poly_substitute
    b, a = b_to_a.domain, b_to_a.codomain
    car = a.carrier()
    eliminated: set[int] = set()
    graph: list[tuple[int, Poly]] = []  # (B-var index, image polynomial)
    for j in range(b.nvars):
        graph.append((j, b_to_a.apply(b.var(b.vars[j]))))
    rels = [dict(g) for g in a.ideal_polys()]
    b_images = [b_to_a.apply(g) for g in b.ideal_polys()]

    def substitute_everywhere(v, value):
        images = [a.var(a.vars[i]) if i != v else value for i in range(a.nvars)]
        sub = lambda p: poly_substitute(p, images, car, a.nvars)
        for idx in range(len(rels)):
            rels[idx] = sub(rels[idx])
        for idx in range(len(b_images)):
            b_images[idx] = sub(b_images[idx])
        for idx in range(len(graph)):
            jj, img = graph[idx]
            graph[idx] = (jj, sub(img))

    changed = True
    while changed:
        changed = False
        for idx, (j, img) in enumerate(graph):
            items = list(img.items())
            if len(items) == 1 and sum(items[0][0]) == 1 \
                    and items[0][1] == car.one():
                v = items[0][0].index(1)
                if v not in eliminated:
                    eliminated.add(v)
                    graph.pop(idx)
                    changed = True
                    break
        if changed:
            continue
        for idx, g in enumerate(rels):
            pivot = None
            for e, c in g.items():
                if sum(e) == 1 and e.index(1) not in eliminated \
                        and max(ee[e.index(1)] for ee in g) == 1 \
                        and sum(ee[e.index(1)] for ee in g if ee != e) == 0 \
                        and _const_is_unit(a.coeff, c):
                    pivot = (e.index(1), c)
                    break
            if pivot is None:
                continue
            v, c = pivot
            rest = {e: cc for e, cc in g.items() if e[v] == 0}
            if a.coeff.is_field:
                scale = car.div(car.neg(car.one()), c)
                value = {e: car.mul(cc, scale) for e, cc in rest.items()}
            else:
                inv = 1 if c == -1 else -1 if c == 1 else None
                if inv is None:
                    from fractions import Fraction
                    value = {e: car.normalize(Fraction(-1, 1) * cc / c)
                             for e, cc in rest.items()}
                else:
                    value = {e: car.mul(cc, car.from_int(inv)) for e, cc in rest.items()}
            eliminated.add(v)
            rels.pop(idx)
            substitute_everywhere(v, value)
            changed = True
            break
        if changed:
            continue
        for idx, g in enumerate(rels):
            hit = None
            for i, img in enumerate(b_images):
                if img is not None and _unit_multiple(g, img, a):
                    hit = i
                    break
            if hit is not None:
                b_images[hit] = None
                rels.pop(idx)
                changed = True
                break
        if changed:
            continue
        for idx, (j, img) in enumerate(graph):
            if any(any(e) for e in img):
                continue
            const = img.get((0,) * a.nvars, car.zero())
            try:
                lhs = b.sub(b.var(b.vars[j]), b.const(const))
            except (ValueError, ZeroDivisionError):
                continue
            if b.is_zero_elem(lhs):
                graph.pop(idx)
                changed = True
                break
    rows = rels + [img for _, img in graph]
    new_vars = [i for i in range(a.nvars) if i not in eliminated]
    if len(rows) != len(new_vars):
        return None
    return new_vars, rows


def check_charted_log_etale(chart: PreLogMap) -> ChartReport:
    """The two chart conditions, with verdicts instead of errors."""
    a = chart.codomain.ring
    diagnostics = []
    b, b_to_a = chart_ring(chart)
    pruned = _pruned_system(b_to_a)
    if pruned is not None:
        new_vars, rels = pruned
        car = a.carrier()
        jac = [[a.nf(poly_derivative(g, v, car)) for v in new_vars] for g in rels]
        det = a.nf(_poly_det(jac, a))
        ok, witness = is_unit(det, a)
        if ok:
            status = "etale"
            evidence = (f"square system of size {len(rels)}; det(J) = "
                        f"{poly_str(det, a.vars)}, inverse {poly_str(witness, a.vars)}")
        else:
            status = "fail"
            evidence = (f"square system of size {len(rels)}; det(J) = "
                        f"{poly_str(det, a.vars)} is not a unit")
            diagnostics.append(f"Jacobian determinant {poly_str(det, a.vars)} is not a unit")
    else:
        omega = kahler_differentials(a, b_to_a)
        if is_zero_module(omega):
            status = "unramified-only"
            evidence = "relative differentials vanish; flatness not certified"
            diagnostics.append("presentation is not square; etale-ness undecided")
        else:
            status = "fail"
            evidence = "relative differentials do not vanish"
            diagnostics.append("induced ring map is ramified")
    gp = chart.monoid_map.gp_map()
    ker, _ = intlin.kernel(gp)
    injective = ker.is_zero()
    coker, _ = intlin.cokernel(gp)
    factors = tuple(coker.torsion) + (0,) * coker.rank
    group_ok = injective
    if not injective:
        diagnostics.append(f"gp-level kernel {ker} is nonzero")
    for d in factors:
        ok, _ = is_unit(a.const(d), a)
        if not ok:
            group_ok = False
            diagnostics.append(f"invariant factor {d} is not a unit of the target ring")
    group_status = "pass" if group_ok else "fail"
    overall = status == "etale" and group_status == "pass"
    return ChartReport(status, evidence, group_status, injective, factors,
                       overall, tuple(diagnostics))


def adjoin_root(x: PreLogRing, n: int):
    """Adjoin an n-th root of the monoid generator: R' = R[u]/(u^n - alpha(x)).

    Requires a free rank-1 monoid.  Returns (new pre-log ring, chart map).
    """
    if n < 1:
        raise ValueError("root degree must be >= 1")
    if x.monoid.ngens != 1 or x.monoid.relations:
        raise ValueError("root adjunction needs a free rank-1 monoid")
    gen = x.monoid.generators[0]
    r = x.ring
    zp = monoid_algebra(x.monoid, INT)
    root_name = f"{gen}_rt{n}"
    zu = RingPresentation.make(INT, [root_name], [])
    to_r = RingMap.make(zp, r, [dict(x.alpha[0])])
    to_zu = RingMap.make(zp, zu, [{(n,): 1}])
    rprime, from_r, from_zu = tensor_over(to_r, to_zu)
    new_monoid = MonoidPresentation((root_name,), ())
    new_alpha = [from_zu.apply(zu.var(root_name))]
    target = PreLogRing.make(rprime, new_monoid, new_alpha)
    chart = PreLogMap(x, target, from_r, MonoidMap(x.monoid, new_monoid, ((n,),)))
    return target, chart


def log_unramified_check(f: PreLogMap) -> bool:
    """Vanishing of relative log differentials (necessary for log etale)."""
    return is_zero_module(log_differentials(f.codomain, base=f))


def base_change(structure: PreLogMap, along: PreLogMap):
    """Base change of X over (R, P) along (R, P) -> (R', P').

    Returns (result, from X, from (R', P')), with the pushout monoid and
    tensored ring.
    """
    if structure.domain != along.domain:
        raise ValueError("base change requires a common base pre-log ring")
    x = structure.codomain
    rp = along.codomain
    ring, from_a, from_rp = tensor_over(structure.ring_map, along.ring_map)
    mono, m_from, p_from = pushout_monoid(structure.monoid_map, along.monoid_map)
    alpha = []
    for j in range(x.monoid.ngens):
        alpha.append(from_a.apply(dict(x.alpha[j])))
    for j in range(rp.monoid.ngens):
        alpha.append(from_rp.apply(dict(rp.alpha[j])))
    result = PreLogRing.make(ring, mono, alpha)
    lx = PreLogMap(x, result, from_a, m_from)
    lrp = PreLogMap(rp, result, from_rp, p_from)
    return result, lx, lrp
