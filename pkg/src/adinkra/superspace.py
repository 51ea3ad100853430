"""Exact superspace engine over one time dimension and n odd directions.

Everything is computed exactly: coefficients live in the phase group
{+1, +i, -1, -i} with integer multiplicity (a summand list may repeat a term,
so 2i*x is two copies of +i*x), theta monomials are subset bitmasks stored to
the left of component fields, and operators are formal words in D_c, Q_c and
d_tau.  With the conventions

    D_c = d/d(theta^c) + i theta^c d_tau
    Q_c = i d/d(theta^c) + theta^c d_tau

one gets {D_a, D_b} = {Q_a, Q_b} = 2i delta_ab d_tau and {Q_a, D_b} = 0,
which the test-suite verifies symbolically rather than assuming.

The second half of the module turns a height-and-parity decorated graph into
component transformation rules and checks the supersymmetry algebra closes on
them: for every component X, [delta(eps1), delta(eps2)] X must equal
2i (eps1 . eps2) dX/dtau.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .core import BOSON, FERMION, Adinkra, AdinkraError
from .cube import SCALAR, SPINOR, cube_statistics, cube_topology, hgt0, standard_parity

__all__ = [
    "Phase",
    "ONE",
    "I_PHASE",
    "MINUS_ONE",
    "MINUS_I",
    "FieldSymbol",
    "SuperfieldExpr",
    "SuperOp",
    "D",
    "Q",
    "DTAU",
    "anticommutator",
    "apply_op",
    "generic_superfield",
    "component_name",
    "project",
    "check_identity",
    "identity_residual",
    "adinkra_of_superfield",
    "RuleTerm",
    "RuleSet",
    "transformation_rules",
    "closure_violations",
]


@dataclass(frozen=True, order=True)
class Phase:
    """A fourth root of unity, stored as the exponent of i (mod 4)."""

    k: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "k", self.k % 4)

    def __mul__(self, other: "Phase") -> "Phase":
        return Phase(self.k + other.k)

    def __neg__(self) -> "Phase":
        return Phase(self.k + 2)

    def inverse(self) -> "Phase":
        return Phase(-self.k)

    def __str__(self) -> str:
        return {0: "+1", 1: "+i", 2: "-1", 3: "-i"}[self.k]


ONE = Phase(0)
I_PHASE = Phase(1)
MINUS_ONE = Phase(2)
MINUS_I = Phase(3)

# Gaussian-integer coefficient (a + b i) as a pair; phase action permutes it.
Gauss = tuple[int, int]


def _gauss_times_phase(g: Gauss, p: Phase) -> Gauss:
    a, b = g
    return [(a, b), (-b, a), (-a, -b), (b, -a)][p.k]


def _gauss_to_summands(g: Gauss):
    a, b = g
    out = []
    if a:
        out.extend([ONE if a > 0 else MINUS_ONE] * abs(a))
    if b:
        out.extend([I_PHASE if b > 0 else MINUS_I] * abs(b))
    return out


@dataclass(frozen=True, order=True)
class FieldSymbol:
    """A named component field, possibly time-differentiated."""

    name: str
    derivative_order: int = 0
    statistics: str = BOSON

    def dot(self, k: int = 1) -> "FieldSymbol":
        return FieldSymbol(self.name, self.derivative_order + k, self.statistics)

    def __str__(self) -> str:
        return self.name + "'" * self.derivative_order


def _flip(statistics: str) -> str:
    return FERMION if statistics == BOSON else BOSON


Summand = tuple[Phase, FieldSymbol]
Term = tuple[int, tuple[Summand, ...]]


@dataclass(frozen=True)
class SuperfieldExpr:
    """A finite theta expansion: monomial bitmask -> phase-weighted field sum.

    Terms are kept canonical (ascending monomial, summands sorted, exact
    cancellation of opposite phases) and homogeneous: every field's statistics
    must equal the expression's overall statistics flipped by the monomial
    degree.  statistics is the Grassmann parity of the whole expression.
    """

    n_colors: int
    statistics: str
    terms: tuple[Term, ...]

    def __post_init__(self) -> None:
        if self.statistics not in (BOSON, FERMION):
            raise AdinkraError(f"unknown statistics {self.statistics!r}")
        for mask, summands in self.terms:
            if not 0 <= mask < 1 << self.n_colors:
                raise AdinkraError(f"theta monomial {mask:#b} outside color range")
            want = self.statistics if hgt0(mask) % 2 == 0 else _flip(self.statistics)
            for _, sym in summands:
                if sym.statistics != want:
                    raise AdinkraError(
                        f"field {sym} at monomial {mask:#b} should be a {want}"
                    )

    def is_zero(self) -> bool:
        return not self.terms

    def component(self, mask: int) -> tuple[Summand, ...]:
        for m, summands in self.terms:
            if m == mask:
                return summands
        return ()

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for mask, summands in self.terms:
            theta = "".join(f"th{c + 1}" for c in range(self.n_colors) if mask >> c & 1)
            for phase, sym in summands:
                bits.append(f"{phase}*{theta + '*' if theta else ''}{sym}")
        return " ".join(bits)


def _canon(n_colors: int, statistics: str, gauss: Mapping[tuple[int, FieldSymbol], Gauss]) -> SuperfieldExpr:
    terms: dict[int, list[Summand]] = {}
    for (mask, sym), g in gauss.items():
        for phase in _gauss_to_summands(g):
            terms.setdefault(mask, []).append((phase, sym))
    canon = tuple(
        (mask, tuple(sorted(terms[mask], key=lambda s: (s[1], s[0]))))
        for mask in sorted(terms)
    )
    return SuperfieldExpr(n_colors, statistics, canon)


def _gauss_of(expr: SuperfieldExpr) -> dict[tuple[int, FieldSymbol], Gauss]:
    out: dict[tuple[int, FieldSymbol], Gauss] = {}
    for mask, summands in expr.terms:
        for phase, sym in summands:
            a, b = out.get((mask, sym), (0, 0))
            da, db = _gauss_times_phase((1, 0), phase)
            out[(mask, sym)] = (a + da, b + db)
    return {k: g for k, g in out.items() if g != (0, 0)}


def expr_add(e1: SuperfieldExpr, e2: SuperfieldExpr) -> SuperfieldExpr:
    if e1.n_colors != e2.n_colors:
        raise AdinkraError("cannot add expressions with different color counts")
    if e1.is_zero():
        return e2
    if e2.is_zero():
        return e1
    if e1.statistics != e2.statistics:
        raise AdinkraError("cannot add a boson expression to a fermion expression")
    g = _gauss_of(e1)
    for k, (a, b) in _gauss_of(e2).items():
        x, y = g.get(k, (0, 0))
        v = (x + a, y + b)
        if v == (0, 0):
            g.pop(k, None)
        else:
            g[k] = v
    return _canon(e1.n_colors, e1.statistics, g)


def expr_sub(e1: SuperfieldExpr, e2: SuperfieldExpr) -> SuperfieldExpr:
    return expr_add(e1, expr_scale(e2, MINUS_ONE))


def expr_scale(expr: SuperfieldExpr, phase: Phase) -> SuperfieldExpr:
    g = {k: _gauss_times_phase(v, phase) for k, v in _gauss_of(expr).items()}
    return _canon(expr.n_colors, expr.statistics, g)


def _check_color(expr: SuperfieldExpr, color: int) -> None:
    if not 1 <= color <= expr.n_colors:
        raise AdinkraError(f"color {color} outside 1..{expr.n_colors}")


def theta_times(expr: SuperfieldExpr, color: int) -> SuperfieldExpr:
    """Left-multiply by theta^color; kills terms already containing it."""
    _check_color(expr, color)
    bit = 1 << (color - 1)
    below = bit - 1
    g: dict[tuple[int, FieldSymbol], Gauss] = {}
    for (mask, sym), v in _gauss_of(expr).items():
        if mask & bit:
            continue
        sign = MINUS_ONE if hgt0(mask & below) % 2 else ONE
        g[(mask | bit, sym)] = _gauss_times_phase(v, sign)
    return _canon(expr.n_colors, _flip(expr.statistics), g)


def deriv_theta(expr: SuperfieldExpr, color: int) -> SuperfieldExpr:
    """Left Grassmann derivative in theta^color."""
    _check_color(expr, color)
    bit = 1 << (color - 1)
    below = bit - 1
    g: dict[tuple[int, FieldSymbol], Gauss] = {}
    for (mask, sym), v in _gauss_of(expr).items():
        if not mask & bit:
            continue
        sign = MINUS_ONE if hgt0(mask & below) % 2 else ONE
        g[(mask ^ bit, sym)] = _gauss_times_phase(v, sign)
    return _canon(expr.n_colors, _flip(expr.statistics), g)


def dtau_expr(expr: SuperfieldExpr, k: int = 1) -> SuperfieldExpr:
    g = {(mask, sym.dot(k)): v for (mask, sym), v in _gauss_of(expr).items()}
    return _canon(expr.n_colors, expr.statistics, g)


# -- formal operators ------------------------------------------------------

Atom = tuple
Word = tuple[Atom, ...]


@dataclass(frozen=True)
class SuperOp:
    """A phase-weighted formal word combination over {D_c, Q_c, d_tau}."""

    terms: tuple[tuple[Phase, Word], ...]

    @classmethod
    def zero(cls) -> "SuperOp":
        return cls(())

    @classmethod
    def identity(cls) -> "SuperOp":
        return cls(((ONE, ()),))

    def __mul__(self, other: "SuperOp") -> "SuperOp":
        return _op_canon(
            [(p1 * p2, w1 + w2) for p1, w1 in self.terms for p2, w2 in other.terms]
        )

    def __add__(self, other: "SuperOp") -> "SuperOp":
        return _op_canon(list(self.terms) + list(other.terms))

    def __sub__(self, other: "SuperOp") -> "SuperOp":
        return self + (-other)

    def __neg__(self) -> "SuperOp":
        return self.scaled(MINUS_ONE)

    def scaled(self, phase: Phase) -> "SuperOp":
        return _op_canon([(phase * p, w) for p, w in self.terms])

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        def word_str(w: Word) -> str:
            return "".join(
                f"{a[0]}{a[1]}" if a[0] in ("D", "Q") else "dt" for a in w
            ) or "1"
        return " ".join(f"{p}*{word_str(w)}" for p, w in self.terms)


def _op_canon(raw: Iterable[tuple[Phase, Word]]) -> SuperOp:
    g: dict[Word, Gauss] = {}
    for phase, word in raw:
        a, b = g.get(word, (0, 0))
        da, db = _gauss_times_phase((1, 0), phase)
        g[word] = (a + da, b + db)
    terms = []
    for word in sorted(g):
        for phase in _gauss_to_summands(g[word]):
            terms.append((phase, word))
    return SuperOp(tuple(terms))


def D(color: int) -> SuperOp:
    return SuperOp(((ONE, (("D", color),)),))


def Q(color: int) -> SuperOp:
    return SuperOp(((ONE, (("Q", color),)),))


DTAU = SuperOp(((ONE, (("dt",),)),))


def anticommutator(a: SuperOp, b: SuperOp) -> SuperOp:
    return a * b + b * a


def apply_op(op: SuperOp, expr: SuperfieldExpr) -> SuperfieldExpr:
    """Apply a formal operator to an expression, rightmost word atom first."""
    total = SuperfieldExpr(expr.n_colors, _op_output_stat(op, expr.statistics), ())
    for phase, word in op.terms:
        cur = expr_scale(expr, phase)
        for atom in reversed(word):
            if atom[0] == "D":
                c = atom[1]
                cur = expr_add(
                    deriv_theta(cur, c), expr_scale(theta_times(dtau_expr(cur), c), I_PHASE)
                )
            elif atom[0] == "Q":
                c = atom[1]
                cur = expr_add(
                    expr_scale(deriv_theta(cur, c), I_PHASE), theta_times(dtau_expr(cur), c)
                )
            elif atom[0] == "dt":
                cur = dtau_expr(cur)
            else:  # pragma: no cover
                raise AdinkraError(f"unknown operator atom {atom!r}")
        total = expr_add(total, cur)
    return total


def _op_output_stat(op: SuperOp, statistics: str) -> str:
    # all words in a canonical combination must agree on Grassmann parity
    flips = {sum(1 for a in w if a[0] in ("D", "Q")) % 2 for _, w in op.terms}
    if len(flips) > 1:
        raise AdinkraError("operator mixes Grassmann parities")
    flip = next(iter(flips), 0)
    return _flip(statistics) if flip else statistics


# -- generic superfields and components ------------------------------------


def component_name(prefix: str, mask: int) -> str:
    return prefix + "".join(str(c + 1) for c in range(mask.bit_length()) if mask >> c & 1)


def generic_superfield(n_colors: int, kind: str = SCALAR, prefix: str = "U") -> SuperfieldExpr:
    """A fresh superfield with one independent component per theta monomial.

    Component phases follow the convention i^floor((k + s)/2) at theta degree
    k, with s = 1 for the scalar kind and s = 0 for the spinor kind.  This
    reproduces the familiar low-N expansions, e.g. for two colors the scalar
    reads  U + i th1 U1 + i th2 U2 + i th1 th2 U12.
    """
    if kind not in (SCALAR, SPINOR):
        raise AdinkraError(f"superfield kind must be scalar or spinor, got {kind!r}")
    overall = BOSON if kind == SCALAR else FERMION
    s = 1 if kind == SCALAR else 0
    g: dict[tuple[int, FieldSymbol], Gauss] = {}
    for mask in range(1 << n_colors):
        k = hgt0(mask)
        stat = overall if k % 2 == 0 else _flip(overall)
        sym = FieldSymbol(component_name(prefix, mask), 0, stat)
        g[(mask, sym)] = _gauss_times_phase((1, 0), Phase((k + s) // 2))
    return _canon(n_colors, overall, g)


def descending_product(colors: Sequence[int]) -> SuperOp:
    """D_{c_k} ... D_{c_1} for ascending input colors c_1 < ... < c_k."""
    op = SuperOp.identity()
    for c in colors:  # ascending colors applied first = rightmost
        op = D(c) * op
    return op


def project(expr: SuperfieldExpr, mask: int) -> tuple[Summand, ...]:
    """Component extraction: apply the descending D product, then set theta = 0.

    For distinct colors the D's anticommute exactly, so the descending product
    equals the antisymmetrized one and the projection returns exactly the
    stored coefficient of the theta monomial.
    """
    if not 0 <= mask < 1 << expr.n_colors:
        raise AdinkraError(f"subset {mask:#b} outside color range")
    colors = [c + 1 for c in range(expr.n_colors) if mask >> c & 1]
    return apply_op(descending_product(colors), expr).component(0)


def identity_residual(lhs: SuperOp, rhs: SuperOp, n_colors: int) -> dict[str, SuperfieldExpr]:
    """Difference of both operators applied to a generic scalar and spinor."""
    out = {}
    for kind in (SCALAR, SPINOR):
        e = generic_superfield(n_colors, kind)
        out[kind] = expr_sub(apply_op(lhs, e), apply_op(rhs, e))
    return out


def check_identity(lhs: SuperOp, rhs: SuperOp, n_colors: int) -> bool:
    """Operator identity test on generic superfields of both kinds."""
    return all(r.is_zero() for r in identity_residual(lhs, rhs, n_colors).values())


def adinkra_of_superfield(n_colors: int, kind: str = SCALAR) -> Adinkra:
    """The cube Adinkra of an unconstrained superfield: height = subset size.

    Equivalently the one-hooked hanging from the all-colors vertex at height
    n, with the standard cube parity attached.
    """
    topo = cube_topology(n_colors, kind)
    heights = {v: hgt0(v) for v in topo.vertex_ids}
    return Adinkra.from_maps(topo, heights, standard_parity(topo))


# -- component transformation rules and closure -----------------------------


@dataclass(frozen=True)
class RuleTerm:
    """One summand of delta(eps) applied to a component: phase * eps^color * field.

    source is the vertex whose field appears; dotted marks a time derivative.
    """

    phase: Phase
    color: int
    source: int
    dotted: bool


@dataclass(frozen=True)
class RuleSet:
    """Supersymmetry variation rules read off an Adinkra, one entry per vertex."""

    adinkra: Adinkra
    names: tuple[tuple[int, str], ...]
    rules: tuple[tuple[int, tuple[RuleTerm, ...]], ...]

    def rule_map(self) -> dict[int, tuple[RuleTerm, ...]]:
        return dict(self.rules)

    def name_map(self) -> dict[int, str]:
        return dict(self.names)


def transformation_rules(adinkra: Adinkra, names: Mapping[int, str] | None = None) -> RuleSet:
    """Emit the component variation rules encoded by heights and parity.

    Per edge of color c with parity p, lower vertex v and upper vertex w:
    when v is a boson,  delta v gains i(-1)^p eps^c w  and  delta w gains
    (-1)^p eps^c v';  when v is a fermion,  delta v gains (-1)^p eps^c w  and
    delta w gains i(-1)^p eps^c v'.
    """
    t = adinkra.topology
    if names is None:
        names = {
            v: ("phi" if t.statistics_of(v) == BOSON else "psi") + str(v)
            for v in t.vertex_ids
        }
    rules: dict[int, list[RuleTerm]] = {v: [] for v in t.vertex_ids}
    for (u, v, color), p in zip(t.edges, adinkra.parity):
        lo, hi = (u, v) if adinkra.height_of(u) < adinkra.height_of(v) else (v, u)
        sign = MINUS_ONE if p else ONE
        if t.statistics_of(lo) == BOSON:
            rules[lo].append(RuleTerm(I_PHASE * sign, color, hi, False))
            rules[hi].append(RuleTerm(sign, color, lo, True))
        else:
            rules[lo].append(RuleTerm(sign, color, hi, False))
            rules[hi].append(RuleTerm(I_PHASE * sign, color, lo, True))
    return RuleSet(
        adinkra,
        tuple(sorted(names.items())),
        tuple((v, tuple(sorted(rules[v], key=lambda r: r.color))) for v in t.vertex_ids),
    )


# epsilon-algebra terms: (sorted (label, color) monomial, vertex, dots) -> Gauss
EpsTerm = tuple[tuple[tuple[int, int], ...], int, int]


def _apply_delta(
    label: int, rules: Mapping[int, tuple[RuleTerm, ...]], terms: Mapping[EpsTerm, Gauss]
) -> dict[EpsTerm, Gauss]:
    out: dict[EpsTerm, Gauss] = {}
    for (mono, vertex, dots), g in terms.items():
        # the variation's odd generator anticommutes past the monomial
        base = MINUS_ONE if len(mono) % 2 else ONE
        for rt in rules[vertex]:
            sym = (label, rt.color)
            if sym in mono:
                continue
            # new symbol appends at the right, then bubbles left into place
            crossings = sum(1 for s in mono if s > sym)
            phase = base * rt.phase * (MINUS_ONE if crossings % 2 else ONE)
            key = (
                tuple(sorted(mono + (sym,))),
                rt.source,
                dots + (1 if rt.dotted else 0),
            )
            a, b = out.get(key, (0, 0))
            da, db = _gauss_times_phase(g, phase)
            v = (a + da, b + db)
            if v == (0, 0):
                out.pop(key, None)
            else:
                out[key] = v
    return out


def closure_violations(ruleset: RuleSet) -> list[str]:
    """Check [delta(eps1), delta(eps2)] = 2i (eps1 . eps2) d_tau on every field.

    Returns one message per failing component; empty means the algebra closes.
    """
    t = ruleset.adinkra.topology
    rules = ruleset.rule_map()
    names = ruleset.name_map()
    bad = []
    for x in t.vertex_ids:
        start: dict[EpsTerm, Gauss] = {((), x, 0): (1, 0)}
        one_two = _apply_delta(1, rules, _apply_delta(2, rules, start))
        two_one = _apply_delta(2, rules, _apply_delta(1, rules, start))
        comm: dict[EpsTerm, Gauss] = dict(one_two)
        for key, (a, b) in two_one.items():
            x0, y0 = comm.get(key, (0, 0))
            v = (x0 - a, y0 - b)
            if v == (0, 0):
                comm.pop(key, None)
            else:
                comm[key] = v
        expected: dict[EpsTerm, Gauss] = {
            (((1, c), (2, c)), x, 1): (0, 2) for c in range(1, t.n_colors + 1)
        }
        if comm != expected:
            bad.append(f"closure fails on component {names.get(x, x)} (vertex {x})")
    return bad
