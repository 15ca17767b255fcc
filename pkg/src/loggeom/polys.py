"""Multivariate polynomial arithmetic and Groebner bases, exactly.

Polynomials are dicts mapping exponent tuples to nonzero coefficients.
Coefficients live in one of three arithmetic modes: the rationals
(Fraction), a prime field (ints mod p), or the integers.  Over fields the
engine runs Buchberger with full reduction and produces the reduced
basis; over the integers it computes a strong Groebner basis (S- and
G-polynomials, D-reduction), which makes membership of ideals over Z
decidable and supports elimination with a lex order.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


Exp = tuple[int, ...]
Poly = dict  # Exp -> coefficient


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, s, t) with s*a + t*b = g = gcd(a, b), g >= 0.

    When a | b the cofactors are (1, 0) up to sign, so G-pairs between
    comparable leading coefficients can be skipped.
    """
    if a != 0 and b % a == 0:
        return (abs(a), 1 if a > 0 else -1, 0)
    if b != 0 and a % b == 0:
        return (abs(b), 0, 1 if b > 0 else -1)
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return g, x, y


class Rationals:
    is_field = True
    char = 0
    name = "rat"

    def from_int(self, n):
        return Fraction(n)

    def normalize(self, c):
        return Fraction(c)

    def is_zero(self, c):
        return c == 0

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def div(self, a, b):
        return Fraction(a) / b

    def one(self):
        return Fraction(1)

    def zero(self):
        return Fraction(0)

    def coeff_str(self, c):
        return str(c)

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("rat")

    def __repr__(self):
        return "QQ"


class PrimeField:
    is_field = True
    name = "fp"

    def __init__(self, p: int):
        if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.char = p

    def from_int(self, n):
        return n % self.p

    def normalize(self, c):
        return int(c) % self.p

    def is_zero(self, c):
        return c % self.p == 0

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def div(self, a, b):
        return (a * pow(b, -1, self.p)) % self.p

    def one(self):
        return 1

    def zero(self):
        return 0

    def coeff_str(self, c):
        return str(c % self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("fp", self.p))

    def __repr__(self):
        return f"GF({self.p})"


class IntegerRing:
    is_field = False
    char = 0
    name = "int"

    def from_int(self, n):
        return int(n)

    def normalize(self, c):
        if isinstance(c, Fraction):
            if c.denominator != 1:
                raise ValueError("non-integral coefficient over Z")
            return int(c)
        return int(c)

    def is_zero(self, c):
        return c == 0

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def one(self):
        return 1

    def zero(self):
        return 0

    def coeff_str(self, c):
        return str(c)

    def __eq__(self, other):
        return isinstance(other, IntegerRing)

    def __hash__(self):
        return hash("int")

    def __repr__(self):
        return "ZZ"


QQ = Rationals()
ZZ = IntegerRing()


# ---------------------------------------------------------------------------
# monomial orders

class MonomialOrder:
    def __init__(self, name: str):
        if name not in ("degrevlex", "lex"):
            raise ValueError(f"unknown monomial order {name!r}")
        self.name = name

    def key(self, exp: Exp):
        if self.name == "lex":
            return exp
        return (sum(exp), tuple(-e for e in reversed(exp)))

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and other.name == self.name

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return self.name


DEGREVLEX = MonomialOrder("degrevlex")
LEX = MonomialOrder("lex")


# ---------------------------------------------------------------------------
# raw polynomial arithmetic

def poly_zero() -> Poly:
    return {}

def poly_const(c, dom, nvars: int = 0) -> Poly:
    return {} if dom.is_zero(c) else {(0,) * nvars: c}


def poly_var(i: int, nvars: int, dom) -> Poly:
    exp = tuple(1 if j == i else 0 for j in range(nvars))
    return {exp: dom.one()}


def poly_add(f: Poly, g: Poly, dom) -> Poly:
    out = dict(f)
    for e, c in g.items():
        s = dom.add(out.get(e, dom.zero()), c)
        if dom.is_zero(s):
            out.pop(e, None)
        else:
            out[e] = s
    return out


def poly_neg(f: Poly, dom) -> Poly:
    return {e: dom.neg(c) for e, c in f.items()}


def poly_sub(f: Poly, g: Poly, dom) -> Poly:
    return poly_add(f, poly_neg(g, dom), dom)


def poly_scale(f: Poly, c, dom) -> Poly:
    if dom.is_zero(c):
        return {}
    return {e: dom.mul(v, c) for e, v in f.items()}


def exp_add(a: Exp, b: Exp) -> Exp:
    return tuple(x + y for x, y in zip(a, b))


def exp_sub(a: Exp, b: Exp) -> Exp:
    return tuple(x - y for x, y in zip(a, b))


def exp_divides(a: Exp, b: Exp) -> bool:
    return all(x <= y for x, y in zip(a, b))


def exp_lcm(a: Exp, b: Exp) -> Exp:
    return tuple(max(x, y) for x, y in zip(a, b))


def poly_term_mul(f: Poly, exp: Exp, c, dom) -> Poly:
    if dom.is_zero(c):
        return {}
    return {exp_add(e, exp): dom.mul(v, c) for e, v in f.items()}


def poly_mul(f: Poly, g: Poly, dom) -> Poly:
    out: Poly = {}
    for e1, c1 in f.items():
        for e2, c2 in g.items():
            e = exp_add(e1, e2)
            s = dom.add(out.get(e, dom.zero()), dom.mul(c1, c2))
            if dom.is_zero(s):
                out.pop(e, None)
            else:
                out[e] = s
    return out


def poly_pow(f: Poly, n: int, dom, nvars: int) -> Poly:
    out = poly_const(dom.one(), dom, nvars)
    for _ in range(n):
        out = poly_mul(out, f, dom)
    return out


def poly_derivative(f: Poly, i: int, dom) -> Poly:
    out: Poly = {}
    for e, c in f.items():
        if e[i] == 0:
            continue
        d = dom.mul(c, dom.from_int(e[i]))
        if dom.is_zero(d):
            continue
        ne = tuple(x - 1 if j == i else x for j, x in enumerate(e))
        s = dom.add(out.get(ne, dom.zero()), d)
        if dom.is_zero(s):
            out.pop(ne, None)
        else:
            out[ne] = s
    return out


def poly_substitute(f: Poly, images: list[Poly], dom_dst, nvars_dst: int,
                    coeff_map=None) -> Poly:
    """Evaluate f at the given variable images (polynomials over dom_dst)."""
    if coeff_map is None:
        coeff_map = dom_dst.normalize
    out: Poly = {}
    for e, c in f.items():
        term = poly_const(coeff_map(c), dom_dst, nvars_dst)
        for i, k in enumerate(e):
            if k:
                term = poly_mul(term, poly_pow(images[i], k, dom_dst, nvars_dst), dom_dst)
        out = poly_add(out, term, dom_dst)
    return out


def leading_term(f: Poly, order: MonomialOrder):
    if not f:
        raise ValueError("zero polynomial has no leading term")
    e = max(f, key=order.key)
    return e, f[e]


def freeze_poly(f: Poly) -> tuple:
    return tuple(sorted(f.items()))


# ---------------------------------------------------------------------------
# reduction

def _sorted_monomials(f: Poly, order: MonomialOrder):
    return sorted(f, key=order.key, reverse=True)


def nf(f: Poly, basis: list[Poly], order: MonomialOrder, dom) -> Poly:
    r, _ = nf_with_cofactors(f, basis, order, dom, track=False)
    return r


def nf_with_cofactors(f: Poly, basis: list[Poly], order: MonomialOrder, dom,
                      track: bool = True):
    """Normal form of f against basis; optionally the reduction cofactors.

    Returns (r, cof) with f = sum(cof[i] * basis[i]) + r.  Over a field no
    monomial of r is divisible by a basis leading monomial; over Z the
    D-reduction leaves remainders smaller than the applicable leading
    coefficients, and r == 0 iff f lies in the ideal whenever the basis
    is a strong Groebner basis.
    """
    lts = [leading_term(g, order) for g in basis]
    cof = [poly_zero() for _ in basis] if track else None
    work = dict(f)
    result: Poly = {}
    while work:
        m = max(work, key=order.key)
        c = work.pop(m)
        applicable = [i for i, (le, _) in enumerate(lts) if exp_divides(le, m)]
        if not applicable:
            result[m] = c
            continue
        if dom.is_field:
            i = applicable[0]
            le, lc = lts[i]
            q = dom.div(c, lc)
            shift = exp_sub(m, le)
            tail = dict(basis[i])
            del tail[le]
            work = poly_sub(work, poly_term_mul(tail, shift, q, dom), dom)
            if track:
                cof[i] = poly_add(cof[i], {shift: q}, dom)
            continue
        # integer D-reduction
        exact = None
        for i in applicable:
            if c % lts[i][1] == 0:
                exact = i
                break
        if exact is not None:
            i = exact
            le, lc = lts[i]
            q = c // lc
            shift = exp_sub(m, le)
            tail = dict(basis[i])
            del tail[le]
            work = poly_sub(work, poly_term_mul(tail, shift, q, dom), dom)
            if track:
                cof[i] = poly_add(cof[i], {shift: q}, dom)
            continue
        i = min(applicable, key=lambda k: (abs(lts[k][1]), k))
        le, lc = lts[i]
        q = c // lc  # floor: remainder has the sign of lc
        r = c - q * lc
        if q == 0:
            result[m] = c
            continue
        shift = exp_sub(m, le)
        tail = dict(basis[i])
        del tail[le]
        work = poly_sub(work, poly_term_mul(tail, shift, q, dom), dom)
        if track:
            cof[i] = poly_add(cof[i], {shift: q}, dom)
        if r:
            result[m] = r
    return result, cof


def spoly(f: Poly, g: Poly, order: MonomialOrder, dom) -> Poly:
    (ef, cf) = leading_term(f, order)
    (eg, cg) = leading_term(g, order)
    el = exp_lcm(ef, eg)
    if dom.is_field:
        a = dom.div(dom.one(), cf)
        b = dom.div(dom.one(), cg)
    else:
        l = cf // gcd(cf, cg) * cg
        a = l // cf
        b = l // cg
    return poly_sub(poly_term_mul(f, exp_sub(el, ef), a, dom),
                    poly_term_mul(g, exp_sub(el, eg), b, dom), dom)


def gpoly(f: Poly, g: Poly, order: MonomialOrder) -> Poly | None:
    """G-polynomial over Z; None when one leading coefficient divides the other."""
    (ef, cf) = leading_term(f, order)
    (eg, cg) = leading_term(g, order)
    if cf % cg == 0 or cg % cf == 0:
        return None
    el = exp_lcm(ef, eg)
    _, s, t = xgcd(cf, cg)
    return poly_add(poly_term_mul(f, exp_sub(el, ef), s, ZZ),
                    poly_term_mul(g, exp_sub(el, eg), t, ZZ), ZZ)


def _normalize_gen(f: Poly, order: MonomialOrder, dom) -> Poly:
    if not f:
        return f
    _, c = leading_term(f, order)
    if dom.is_field:
        return poly_scale(f, dom.div(dom.one(), c), dom)
    if c < 0:
        return poly_neg(f, dom)
    return f


def groebner(gens: list[Poly], order: MonomialOrder, dom) -> list[Poly]:
    """Groebner basis of the ideal: reduced over a field, strong over Z."""
    basis, _ = groebner_with_cofactors(gens, order, dom, track=False)
    return basis


def groebner_with_cofactors(gens: list[Poly], order: MonomialOrder, dom,
                            track: bool = True):
    """Groebner basis together with cofactors over the input generators.

    Returns (basis, cof) with basis[k] = sum(cof[k][i] * gens[i]).
    """
    n = len(gens)
    basis: list[Poly] = []
    cofs: list[list[Poly]] = []
    for i, g in enumerate(gens):
        if not g:
            continue
        gn = _normalize_gen(g, order, dom)
        nvars = len(next(iter(g)))
        basis.append(gn)
        if track:
            scale = _norm_scale(g, gn, order, dom)
            cofs.append([poly_const(scale, dom, nvars) if j == i else poly_zero()
                         for j in range(n)])
    pairs = [(i, j, "s") for i in range(len(basis)) for j in range(i)]
    if not dom.is_field:
        pairs += [(i, j, "g") for i in range(len(basis)) for j in range(i)]
    pairs.sort(key=_pair_sort_key(basis, order))
    while pairs:
        i, j, kind = pairs.pop(0)
        f, g = basis[i], basis[j]
        if kind == "s":
            if dom.is_field and _coprime_lm(f, g, order):
                continue
            h = spoly(f, g, order, dom)
            hc = _combine_cof(cofs, i, j, f, g, order, dom, "s") if track else None
        else:
            h = gpoly(f, g, order)
            if h is None:
                continue
            hc = _combine_cof(cofs, i, j, f, g, order, dom, "g") if track else None
        r, red = nf_with_cofactors(h, basis, order, dom, track=track)
        if not r:
            continue
        rn = _normalize_gen(r, order, dom)
        if track:
            total = [poly_zero() for _ in range(n)]
            for t in range(n):
                total[t] = hc[t]
                for b in range(len(basis)):
                    total[t] = poly_sub(total[t], poly_mul(red[b], cofs[b][t], dom), dom)
            scale = _norm_scale(r, rn, order, dom)
            total = [poly_scale(t, scale, dom) for t in total]
            cofs.append(total)
        k = len(basis)
        basis.append(rn)
        newpairs = [(k, j2, "s") for j2 in range(k)]
        if not dom.is_field:
            newpairs += [(k, j2, "g") for j2 in range(k)]
        pairs.extend(newpairs)
        pairs.sort(key=_pair_sort_key(basis, order))
    return _autoreduce(basis, cofs if track else None, order, dom, track)


def _norm_scale(g, gn, order, dom):
    _, c = leading_term(g, order)
    if dom.is_field:
        return dom.div(dom.one(), c)
    return dom.from_int(-1) if c < 0 else dom.one()


def _coprime_lm(f, g, order):
    ef, _ = leading_term(f, order)
    eg, _ = leading_term(g, order)
    return all(a == 0 or b == 0 for a, b in zip(ef, eg))


def _pair_sort_key(basis, order):
    def key(pair):
        i, j, kind = pair
        el = exp_lcm(leading_term(basis[i], order)[0], leading_term(basis[j], order)[0])
        return (order.key(el), kind, i, j)
    return key


def _combine_cof(cofs, i, j, f, g, order, dom, kind):
    (ef, cf) = leading_term(f, order)
    (eg, cg) = leading_term(g, order)
    el = exp_lcm(ef, eg)
    if kind == "s":
        if dom.is_field:
            a, b = dom.div(dom.one(), cf), dom.neg(dom.div(dom.one(), cg))
        else:
            l = cf // gcd(cf, cg) * cg
            a, b = l // cf, -(l // cg)
    else:
        _, s, t = xgcd(cf, cg)
        a, b = s, t
    sa, sb = exp_sub(el, ef), exp_sub(el, eg)
    n = len(cofs[0])
    out = []
    for t_ in range(n):
        term = poly_add(poly_term_mul(cofs[i][t_], sa, a, dom),
                        poly_term_mul(cofs[j][t_], sb, b, dom), dom)
        out.append(term)
    return out


def _autoreduce(basis, cofs, order, dom, track):
    # minimalize: walk by increasing leading term, keep an element only if
    # no already-kept leading term (D-)divides its own
    def lt_key(i):
        le, lc = leading_term(basis[i], order)
        return (order.key(le), abs(lc) if not dom.is_field else 0, freeze_poly(basis[i]))

    keep = []
    for i in sorted(range(len(basis)), key=lt_key):
        le, lc = leading_term(basis[i], order)
        covered = False
        for j in keep:
            lh, ch = leading_term(basis[j], order)
            if exp_divides(lh, le) and (dom.is_field or lc % ch == 0):
                covered = True
                break
        if not covered:
            keep.append(i)
    keep.sort()
    basis2 = [basis[i] for i in keep]
    cofs2 = [cofs[i] for i in keep] if track else None
    out = []
    outc = []
    for i, g in enumerate(basis2):
        others = [basis2[j] for j in range(len(basis2)) if j != i]
        if not others:
            out.append(g)
            if track:
                outc.append(cofs2[i])
            continue
        r, red = nf_with_cofactors(g, others, order, dom, track=track)
        if not r:
            continue
        rn = _normalize_gen(r, order, dom)
        if track:
            idxs = [j for j in range(len(basis2)) if j != i]
            total = list(cofs2[i])
            for b, jj in enumerate(idxs):
                for t in range(len(total)):
                    total[t] = poly_sub(total[t], poly_mul(red[b], cofs2[jj][t], dom), dom)
            scale = _norm_scale(r, rn, order, dom)
            outc.append([poly_scale(t, scale, dom) for t in total])
        out.append(rn)
    idx = sorted(range(len(out)), key=lambda i: order.key(leading_term(out[i], order)[0]))
    out = [out[i] for i in idx]
    if track:
        outc = [outc[i] for i in idx]
    return out, (outc if track else None)
