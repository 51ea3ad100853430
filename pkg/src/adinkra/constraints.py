"""Derivative batteries: images, kernels, and constraint systems of D-maps.

A source spec is a battery of derivative dressings applied to one
unconstrained superfield: entries (I_alpha, l_alpha) stand for the superfields
F_alpha = d_tau^l_alpha D_{I_alpha} U.  The battery determines

* a kernel order per component (how many time derivatives annihilate it),
* an image Adinkra (heights hgt0 + 2 mu on the color cube), and
* a redundant system of first-order constraints tying the F_alpha together,
  with phases computed by the symbolic engine rather than guessed.

identify() inverts the construction: given a cube Adinkra it recovers a
battery presenting it, by lowering onto the all-colors vertex and counting
how often each source vertex descends.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .core import BOSON, Adinkra, AdinkraError
from .cube import SCALAR, SPINOR, cube_signature, dist0, hgt0, subset_label
from .mutation import lowering_sequence_to_one_hooked, sources
from .superspace import (
    D,
    Phase,
    SuperOp,
    SuperfieldExpr,
    apply_op,
    descending_product,
    dtau_expr,
    expr_scale,
    expr_sub,
    generic_superfield,
)

__all__ = [
    "SourceSpec",
    "ehgt_violations",
    "mu",
    "kernel_orders",
    "image_adinkra",
    "Identification",
    "identify",
    "projector",
    "m_alpha",
    "Constraint",
    "ConstraintSystem",
    "emit_constraints",
    "VerificationReport",
    "verify_presentation",
    "AnnihilationCounterexample",
    "check_annihilation",
    "dimension_vector",
    "format_dimension_vector",
    "gradient_column",
    "N2_DOUBLET_ANNIHILATOR",
    "N3_TRIPLET_ANNIHILATOR",
    "N3_QUINTET_ANNIHILATOR",
]


@dataclass(frozen=True)
class SourceSpec:
    """A battery of derivative dressings: entries are (subset mask, extra d_tau order)."""

    n_colors: int
    entries: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if not self.entries:
            raise AdinkraError("a source spec needs at least one entry")
        seen = set()
        for mask, shift in self.entries:
            if not 0 <= mask < 1 << self.n_colors:
                raise AdinkraError(f"subset {mask:#b} outside color range")
            if shift < 0:
                raise AdinkraError(f"entry {subset_label(mask)} has negative derivative order")
            if mask in seen:
                raise AdinkraError(f"subset {subset_label(mask)} appears twice")
            seen.add(mask)


def ehgt_violations(spec: SourceSpec) -> list[str]:
    """Pairs of entries too close for both to stay extreme in the image."""
    out = []
    es = spec.entries
    for a in range(len(es)):
        for b in range(len(es)):
            if a == b:
                continue
            (ia, la), (ib, lb) = es[a], es[b]
            gap = hgt0(ia) - hgt0(ib) + 2 * (la - lb)
            if gap >= dist0(ia, ib):
                out.append(
                    f"entries {subset_label(ia)} and {subset_label(ib)}: height gap {gap}"
                    f" reaches distance {dist0(ia, ib)}"
                )
    return out


def mu(spec: SourceSpec, component: int) -> int:
    """Least time-derivative order at which the component survives in the image."""
    best = None
    for mask, shift in spec.entries:
        num = dist0(mask, component) - hgt0(component) + hgt0(mask)
        assert num % 2 == 0  # subset-size parity makes this even
        val = num // 2 + shift
        best = val if best is None or val < best else best
    return best


def kernel_orders(spec: SourceSpec) -> dict[int, int]:
    """mu per component: d_tau^mu(c) annihilates component c of the battery kernel."""
    return {c: mu(spec, c) for c in range(1 << spec.n_colors)}


def image_adinkra(spec: SourceSpec, kind: str = SCALAR, parity=None) -> Adinkra:
    """The Adinkra presented by the battery: heights hgt0 + 2 mu on the cube.

    Raises when the spec fails the extremality condition (see
    :func:`ehgt_violations`).  The battery entries come out as the sources,
    at heights hgt0(I_alpha) + 2 l_alpha.
    """
    bad = ehgt_violations(spec)
    if bad:
        raise AdinkraError("spec entries not mutually extreme: " + "; ".join(bad))
    from .cube import cube_topology, standard_parity

    topo = cube_topology(spec.n_colors, kind)
    heights = {c: hgt0(c) + 2 * mu(spec, c) for c in topo.vertex_ids}
    if parity is None:
        parity = standard_parity(topo)
    return Adinkra.from_maps(topo, heights, parity)


@dataclass(frozen=True)
class Identification:
    """A battery presenting a given cube Adinkra, plus how it was found."""

    spec: SourceSpec
    kind: str
    moves: tuple[int, ...]  # lowering order used for the descent


def identify(adinkra: Adinkra) -> Identification:
    """Recover a source spec presenting a cube Adinkra.

    Works on full color cubes only (quotients and other topologies are
    rejected; their components do not correspond to subsets of one
    superfield).  The Adinkra is lowered onto the all-colors vertex; each
    source vertex v becomes an entry (v, times v was lowered).  The result is
    checked against :func:`image_adinkra` on normalized heights (parity does
    not enter the identification); a mismatch is a hard error.
    """
    sig = cube_signature(adinkra.topology)
    if sig is None:
        raise AdinkraError("identification needs a full color-cube topology")
    n, convention = sig
    full = (1 << n) - 1
    moves = lowering_sequence_to_one_hooked(adinkra, full)
    counts = Counter(moves)
    entries = tuple((v, counts[v]) for v in sources(adinkra))
    spec = SourceSpec(n, entries)
    image = image_adinkra(spec, convention)
    if image.normalized().heights != adinkra.normalized().heights:
        raise AdinkraError(
            "identification failed: battery image does not reproduce the input heights"
        )
    return Identification(spec, convention, tuple(moves))


def projector(spec: SourceSpec, component: int, alpha: int) -> SuperOp:
    """The descending D word mapping entry alpha onto the given component."""
    mask, _ = spec.entries[alpha]
    k = component ^ mask
    return descending_product([c + 1 for c in range(spec.n_colors) if k >> c & 1])


def m_alpha(spec: SourceSpec, component: int, alpha: int) -> int:
    """Derivative order of the component as seen through entry alpha."""
    mask, shift = spec.entries[alpha]
    return shift + hgt0(mask & ~component)


def _battery(spec: SourceSpec, kind: str) -> tuple[SuperfieldExpr, list[SuperfieldExpr]]:
    u = generic_superfield(spec.n_colors, kind)
    fs = []
    for mask, shift in spec.entries:
        colors = [c + 1 for c in range(spec.n_colors) if mask >> c & 1]
        fs.append(dtau_expr(apply_op(descending_product(colors), u), shift))
    return u, fs


def _projected_phase(spec: SourceSpec, fs, component: int, alpha: int) -> tuple[Phase, int]:
    """Lowest component of P_(c,alpha) F_alpha: a single phased derivative of U_c."""
    low = apply_op(projector(spec, component, alpha), fs[alpha]).component(0)
    if len(low) != 1:
        raise AdinkraError(
            f"projection of entry {alpha} onto {subset_label(component)} is not a single term"
        )
    phase, sym = low[0]
    return phase, sym.derivative_order


@dataclass(frozen=True)
class Constraint:
    """P_(c,alpha) F_alpha = phase * d_tau^gap P_(c,beta) F_beta at one component."""

    component: int
    alpha: int
    beta: int
    gap: int
    phase: Phase
    redundant: bool


@dataclass(frozen=True)
class ConstraintSystem:
    spec: SourceSpec
    kind: str
    equations: tuple[Constraint, ...]


def emit_constraints(spec: SourceSpec, kind: str = SCALAR) -> ConstraintSystem:
    """The full (redundant) first-order system tying the battery together.

    For every component c and entry pair, the side with more derivatives is
    expressed through the other; the relating phase is computed by projecting
    both sides with the engine.  Equations derivable from an earlier one by a
    single left D multiplication are flagged redundant (but kept).
    """
    _, fs = _battery(spec, kind)
    m = len(spec.entries)
    equations: list[Constraint] = []
    for c in range(1 << spec.n_colors):
        for a in range(m):
            for b in range(a + 1, m):
                ma, mb = m_alpha(spec, c, a), m_alpha(spec, c, b)
                hi, lo = (a, b) if (ma, a) >= (mb, b) else (b, a)
                pa, da = _projected_phase(spec, fs, c, hi)
                pb, db = _projected_phase(spec, fs, c, lo)
                assert (da, db) == (m_alpha(spec, c, hi), m_alpha(spec, c, lo))
                equations.append(
                    Constraint(c, hi, lo, da - db, pa * pb.inverse(), False)
                )
    flagged = _flag_redundant(spec, fs, equations)
    return ConstraintSystem(spec, kind, tuple(flagged))


def _equation_sides(spec, fs, eq: Constraint) -> tuple[SuperfieldExpr, SuperfieldExpr]:
    lhs = apply_op(projector(spec, eq.component, eq.alpha), fs[eq.alpha])
    rhs = expr_scale(
        dtau_expr(apply_op(projector(spec, eq.component, eq.beta), fs[eq.beta]), eq.gap),
        eq.phase,
    )
    return lhs, rhs


def _flag_redundant(spec, fs, equations: list[Constraint]) -> list[Constraint]:
    sides = [_equation_sides(spec, fs, eq) for eq in equations]
    out: list[Constraint] = []
    for i, eq in enumerate(equations):
        redundant = False
        for j in range(i):
            prev = equations[j]
            if {prev.alpha, prev.beta} != {eq.alpha, eq.beta}:
                continue
            if dist0(prev.component, eq.component) != 1:
                continue
            k = (prev.component ^ eq.component).bit_length()
            dl = apply_op(D(k), sides[j][0])
            dr = apply_op(D(k), sides[j][1])
            # the higher-derivative entry can differ between the two
            # components, so try both side orientations
            targets = [sides[i], (sides[i][1], sides[i][0])]
            for lhs, rhs in targets:
                for lam in (Phase(t) for t in range(4)):
                    if (
                        expr_sub(dl, expr_scale(lhs, lam)).is_zero()
                        and expr_sub(dr, expr_scale(rhs, lam)).is_zero()
                    ):
                        redundant = True
                        break
                if redundant:
                    break
            if redundant:
                break
        out.append(Constraint(eq.component, eq.alpha, eq.beta, eq.gap, eq.phase, redundant))
    return out


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    checked_equations: int
    failures: tuple[str, ...]
    rederived_matches_image: bool


def verify_presentation(spec: SourceSpec, kind: str = SCALAR) -> VerificationReport:
    """Substitute the battery into every emitted constraint and re-derive heights.

    All equations must vanish identically on a generic superfield, and the
    image Adinkra recomputed from the engine's derivative orders must equal
    the formula-based one.
    """
    system = emit_constraints(spec, kind)
    _, fs = _battery(spec, kind)
    failures = []
    for eq in system.equations:
        lhs, rhs = _equation_sides(spec, fs, eq)
        if not expr_sub(lhs, rhs).is_zero():
            failures.append(
                f"component {subset_label(eq.component)}: entries {eq.alpha}/{eq.beta}"
                " do not satisfy the emitted relation"
            )
    rederived = {
        c: hgt0(c) + 2 * min(_projected_phase(spec, fs, c, a)[1] for a in range(len(spec.entries)))
        for c in range(1 << spec.n_colors)
    }
    image = image_adinkra(spec, kind)
    matches = rederived == image.heights_by_vertex()
    return VerificationReport(
        ok=not failures and matches,
        checked_equations=len(system.equations),
        failures=tuple(failures),
        rederived_matches_image=matches,
    )


@dataclass(frozen=True)
class AnnihilationCounterexample:
    row: int
    kind: str
    residual: SuperfieldExpr


Matrix = tuple[tuple[SuperOp, ...], ...]


def check_annihilation(a: Matrix, b: Matrix, n_colors: int) -> AnnihilationCounterexample | None:
    """Does the operator-matrix product A.B vanish on generic superfields?

    B is applied to a vector of independent generic superfields (one per
    column, both kinds tried), then A; the first nonzero entry is returned as
    a counterexample, None means exact annihilation.
    """
    rows_a, cols_a = len(a), len(a[0])
    rows_b, cols_b = len(b), len(b[0])
    if any(len(r) != cols_a for r in a) or any(len(r) != cols_b for r in b):
        raise AdinkraError("ragged operator matrix")
    if cols_a != rows_b:
        raise AdinkraError(f"cannot multiply {rows_a}x{cols_a} by {rows_b}x{cols_b}")
    for kind in (SCALAR, SPINOR):
        vec = [generic_superfield(n_colors, kind, prefix=f"F{j + 1}_") for j in range(cols_b)]
        mid = []
        for k in range(rows_b):
            acc = apply_op(b[k][0], vec[0])
            for j in range(1, cols_b):
                acc = _expr_acc(acc, apply_op(b[k][j], vec[j]))
            mid.append(acc)
        for r in range(rows_a):
            acc = apply_op(a[r][0], mid[0])
            for k in range(1, cols_a):
                acc = _expr_acc(acc, apply_op(a[r][k], mid[k]))
            if not acc.is_zero():
                return AnnihilationCounterexample(r, kind, acc)
    return None


def _expr_acc(e1: SuperfieldExpr, e2: SuperfieldExpr) -> SuperfieldExpr:
    from .superspace import expr_add

    return expr_add(e1, e2)


def dimension_vector(adinkra: Adinkra) -> tuple[int, ...]:
    """Component counts per height of the normalized Adinkra, lowest first."""
    h = adinkra.normalized().heights
    counts = Counter(h)
    return tuple(counts.get(level, 0) for level in range(max(h) + 1))


def format_dimension_vector(dims: tuple[int, ...]) -> str:
    return "(" + "|".join(str(d) for d in dims) + ")"


def gradient_column(n_colors: int) -> Matrix:
    """The column (D_1, ..., D_n)^T as an operator matrix."""
    return tuple((D(c),) for c in range(1, n_colors + 1))


_Z = SuperOp.zero()

# Maximal-rank first-order matrix annihilating the two-color gradient column;
# it is also nilpotent (squares to zero).
N2_DOUBLET_ANNIHILATOR: Matrix = (
    (D(1), -D(2)),
    (D(2), D(1)),
)

# Maximal-rank first-order matrix annihilating the three-color gradient column.
N3_TRIPLET_ANNIHILATOR: Matrix = (
    (D(2), D(1), _Z),
    (D(3), _Z, D(1)),
    (_Z, D(3), D(2)),
    (D(1), -D(2), _Z),
    (_Z, D(2), -D(3)),
)

# Maximal-rank first-order matrix annihilating N3_TRIPLET_ANNIHILATOR.
N3_QUINTET_ANNIHILATOR: Matrix = (
    (D(1), _Z, _Z, D(2), _Z),
    (D(2), _Z, _Z, -D(1), _Z),
    (D(3), D(2), D(1), _Z, _Z),
    (_Z, D(1), _Z, D(3), D(3)),
    (_Z, -D(3), _Z, D(1), D(1)),
    (_Z, _Z, D(2), _Z, D(3)),
    (_Z, _Z, D(3), _Z, -D(2)),
)
