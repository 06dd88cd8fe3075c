"""Hadamard-pair elimination on compiled path systems.

A path variable ``alpha`` that never reaches an output wire and only enters
the phase through a sign term ``(-1)^(alpha f)`` can be summed out:
``sum_alpha (-1)^(alpha f) = 2 [f = 0]``.  Solving ``f = 0`` for a path
variable ``beta`` of ``f`` and substituting removes both variables, and the
factor 2 exactly cancels the change of the ``1/sqrt(2)^h`` prefactor.  This
is the path-sum form of ``H H = I``.

Variables are keyed ``("x", k)`` for path variables and ``("a", i)`` for
input bits; a monomial is a frozenset of at most two keys (the empty set is
the constant 1).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import FrozenSet, Iterable

from .sop import ONE, AffineForm, PathSystem, PhasePoly

Var = tuple[str, int]
Monomial = FrozenSet[Var]


def _bits(mask: int):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def form_terms(f: AffineForm) -> list[Monomial]:
    terms = [frozenset({("x", k)}) for k in _bits(f.x_mask)]
    terms += [frozenset({("a", i)}) for i in _bits(f.a_mask)]
    if f.const:
        terms.append(frozenset())
    return terms


def terms_form(terms: Iterable[Monomial]) -> AffineForm:
    f = AffineForm()
    for t in terms:
        if not t:
            f = f ^ ONE
        else:
            ((kind, i),) = t
            f = f ^ (AffineForm.path(i) if kind == "x" else AffineForm.input(i))
    return f


@dataclass(frozen=True)
class SignPoly:
    """Multilinear polynomial of degree at most 2 over GF(2)."""

    monomials: FrozenSet[Monomial] = frozenset()

    def __xor__(self, other: SignPoly) -> SignPoly:
        return SignPoly(self.monomials ^ other.monomials)

    def __call__(self, x: int, a: int) -> int:
        def val(v):
            kind, i = v
            return ((x if kind == "x" else a) >> i) & 1

        return sum(all(val(v) for v in m) for m in self.monomials) & 1

    @classmethod
    def product(cls, p: AffineForm, q: AffineForm) -> SignPoly:
        acc: set[Monomial] = set()
        for s in form_terms(p):
            for t in form_terms(q):
                acc ^= {s | t}
        return cls(frozenset(acc))

    @classmethod
    def linear(cls, f: AffineForm) -> SignPoly:
        return cls(frozenset(form_terms(f)))

    def substitute(self, var: Var, f: AffineForm) -> SignPoly:
        """Replace ``var`` by the affine form ``f``."""
        acc = set(m for m in self.monomials if var not in m)
        for m in self.monomials:
            if var in m:
                rest = m - {var}
                for t in form_terms(f):
                    acc ^= {rest | t}
        return SignPoly(frozenset(acc))

    def sorted(self) -> list[tuple[Var, ...]]:
        return sorted(tuple(sorted(m)) for m in self.monomials)


def expand_sign_poly(ps: PathSystem) -> SignPoly:
    """All phase contributions of weight pi as one polynomial."""
    sp = SignPoly()
    for p, q in ps.phase.quad:
        sp ^= SignPoly.product(p, q)
    for c, f in ps.phase.linear:
        if c % 8 == 4:
            sp ^= SignPoly.linear(f)
    return sp


@dataclass(frozen=True)
class Candidate:
    alpha: int
    beta: int
    f: AffineForm  # alpha's cofactor in the sign polynomial


def _cofactor(sp: SignPoly, alpha: int) -> AffineForm | None:
    """``f`` with ``sp = alpha f + g``, or ``None`` if ``alpha`` does not occur."""
    var = ("x", alpha)
    parts = [m - {var} for m in sp.monomials if var in m]
    return terms_form(parts) if parts else None


def _free_variables(ps: PathSystem) -> list[int]:
    """Path variables with a zero column and no non-sign phase term."""
    used = 0
    for r in ps.rows:
        used |= r.x_mask
    for c, f in ps.phase.linear:
        if c % 4:
            used |= f.x_mask
    return [k for k in range(ps.h) if not (used >> k) & 1]


def find_candidate(ps: PathSystem, sp: SignPoly | None = None) -> Candidate | None:
    if sp is None:
        sp = expand_sign_poly(ps)
    for alpha in _free_variables(ps):
        f = _cofactor(sp, alpha)
        if f is None or not f.x_mask:
            continue
        beta = (f.x_mask & -f.x_mask).bit_length() - 1
        return Candidate(alpha, beta, f)
    return None


def _vanishing_variable(ps: PathSystem, sp: SignPoly) -> int | None:
    """A free variable with cofactor ``1``: the sum over it is zero."""
    for alpha in _free_variables(ps):
        if _cofactor(sp, alpha) == ONE:
            return alpha
    return None


def _canonical_linear(linear) -> tuple[tuple[int, AffineForm], ...]:
    """Merge linear terms by mask; ``c (L + 1) = c - c L`` moves constants out."""
    acc: dict[tuple[int, int], int] = {}
    shift = 0
    for c, f in linear:
        c %= 8
        if f.const:
            shift += c
            c = -c
        key = (f.x_mask, f.a_mask)
        if key != (0, 0):
            acc[key] = (acc.get(key, 0) + c) % 8
    out = [(c, AffineForm(xm, am, 0)) for (xm, am), c in sorted(acc.items()) if c]
    if shift % 8:
        out.append((shift % 8, ONE))
    return tuple(out)


def _substitute_form(f: AffineForm, k: int, g: AffineForm) -> AffineForm:
    if (f.x_mask >> k) & 1:
        return AffineForm(f.x_mask ^ (1 << k), f.a_mask, f.const) ^ g
    return f


def _drop_bits(mask: int, dead: tuple[int, int]) -> int:
    out, j = 0, 0
    for i in range(mask.bit_length()):
        if i in dead:
            continue
        if (mask >> i) & 1:
            out |= 1 << j
        j += 1
    return out


def _reindex(f: AffineForm, dead: tuple[int, int]) -> AffineForm:
    return AffineForm(_drop_bits(f.x_mask, dead), f.a_mask, f.const)


def _phase_from(linear, sp: SignPoly) -> PhasePoly:
    lin = list(linear)
    quad = []
    for m in sp.sorted():
        if len(m) == 2:
            quad.append((terms_form([frozenset({m[0]})]), terms_form([frozenset({m[1]})])))
        else:
            lin.append((4, terms_form([frozenset(m)])))
    return PhasePoly(tuple(lin), tuple(quad))


def eliminate_once(ps: PathSystem, cand: Candidate, sp: SignPoly) -> PathSystem:
    alpha, beta = cand.alpha, cand.beta
    g = cand.f ^ AffineForm.path(beta)  # f = 0  <=>  beta = g
    sp = SignPoly(frozenset(m for m in sp.monomials if ("x", alpha) not in m))
    sp = sp.substitute(("x", beta), g)
    dead = (alpha, beta)

    def fix(f: AffineForm) -> AffineForm:
        return _reindex(_substitute_form(f, beta, g), dead)

    sp = SignPoly(frozenset(frozenset(_rekey(v, dead) for v in m) for m in sp.monomials))
    rows = tuple(fix(r) for r in ps.rows)
    linear = [(c, fix(f)) for c, f in ps.phase.linear if c % 8 != 4]
    return PathSystem(ps.n, ps.h - 2, rows, _phase_from(_canonical_linear(linear), sp), ps.scale_log2)


def _rekey(v: Var, dead: tuple[int, int]) -> Var:
    kind, i = v
    if kind != "x":
        return v
    return ("x", i - sum(d < i for d in dead))


def eliminate_pairs(ps: PathSystem) -> PathSystem:
    """Remove Hadamard pairs until no candidate remains; amplitudes are unchanged.

    A system without candidates is returned as is.
    """
    work = replace(ps, phase=PhasePoly(_canonical_linear(ps.phase.linear), ps.phase.quad))
    changed = False
    while not work.null:
        sp = expand_sign_poly(work)
        if _vanishing_variable(work, sp) is not None:
            return replace(work, null=True)
        cand = find_candidate(work, sp)
        if cand is None:
            break
        work = eliminate_once(work, cand, sp)
        changed = True
    return work if changed else ps
