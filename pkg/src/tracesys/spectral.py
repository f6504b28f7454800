"""Inversion-matrix algebra, characteristic-root isolation, spectral radii.

The state-indexed alternating clique polynomial matrix is exact (integer
coefficients); its determinant is computed fraction-free; the smallest
positive root is isolated by Sturm counts and exact-sign bisection over
rationals, so that rational roots collapse to exact values and distinct
algebraic roots can always be separated or proven equal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import poly
from .errors import (
    AmbiguousBasic,
    NonConvergence,
    NoRootInUnitInterval,
    NotAccessible,
    SingularAtT,
    TraceSysError,
    TrivialSystem,
)
from .graphs import Adjacency, StateCliqueGraph
from .system import ConcurrentSystem

DEFAULT_PRECISION = Fraction(1, 10**12)


# ---------------------------------------------------------------- matrices

@dataclass(frozen=True)
class PolynomialMatrix:
    """Square matrix of exact integer polynomials, indexed by state names."""

    states: tuple[str, ...]
    entries: tuple[tuple[poly.Poly, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.states)

    def entry(self, a: str, b: str) -> poly.Poly:
        return self.entries[self.states.index(a)][self.states.index(b)]

    def evaluate(self, x) -> list[list]:
        return [[poly.evaluate(e, x) for e in row] for row in self.entries]

    def __matmul__(self, other: "PolynomialMatrix") -> "PolynomialMatrix":
        n = self.dim
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = poly.ZERO
                for k in range(n):
                    acc = poly.add(acc, poly.mul(self.entries[i][k], other.entries[k][j]))
                row.append(acc)
            rows.append(tuple(row))
        return PolynomialMatrix(self.states, tuple(rows))


def mobius_matrix(system: ConcurrentSystem) -> PolynomialMatrix:
    """Entry (a, b): alternating count of enabled cliques leading a to b."""
    n = len(system.states)
    deg = len(system.monoid.letters)
    rows = [[[0] * (deg + 1) for _ in range(n)] for _ in range(n)]
    for i, s in enumerate(system.states):
        for c in system.cliques_from(s):
            t = system.clique_target(s, c)
            j = system.state_index(t)
            rows[i][j][c.size] += (-1) ** c.size
    return PolynomialMatrix(
        system.states,
        tuple(tuple(poly.normalize(e) for e in row) for row in rows),
    )


def determinant(pm: PolynomialMatrix) -> poly.Poly:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = pm.dim
    if n == 0:
        return poly.ONE
    m = [list(row) for row in pm.entries]
    sign = 1
    prev = poly.ONE
    for k in range(n - 1):
        if poly.is_zero(m[k][k]):
            r = next((i for i in range(k + 1, n) if not poly.is_zero(m[i][k])), None)
            if r is None:
                return poly.ZERO
            m[k], m[r] = m[r], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = poly.sub(poly.mul(m[k][k], m[i][j]), poly.mul(m[i][k], m[k][j]))
                m[i][j] = poly.div_exact(num, prev)
            m[i][k] = poly.ZERO
        prev = m[k][k]
    return m[n - 1][n - 1] if sign > 0 else poly.neg(m[n - 1][n - 1])


# ---------------------------------------------------------------- root isolation

@dataclass
class CharacteristicRoot:
    """Smallest positive root of ``theta`` in (0, 1], isolated exactly.

    ``lo == hi`` means the root was hit exactly (a rational root); otherwise
    lo < root < hi with opposite signs of the square-free part at the ends.
    """

    theta: poly.Poly
    square_free: poly.Poly
    lo: Fraction
    hi: Fraction
    _chain: list | None = field(default=None, repr=False, compare=False)

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def approx(self) -> float:
        return float(self.midpoint)

    def chain(self) -> list:
        if self._chain is None:
            self._chain = poly.sturm_chain(self.square_free)
        return self._chain

    def contains(self, x: Fraction) -> bool:
        return self.lo <= x <= self.hi

    def __str__(self) -> str:
        if self.exact:
            return f"{self.lo} (exact)"
        return f"({self.lo}, {self.hi}) ~ {self.approx:.12g}"


def _isolate_smallest_unit_root(
    sf: poly.Poly, precision: Fraction
) -> tuple[Fraction, Fraction] | None:
    """Smallest root of a square-free polynomial in (0, 1], or None.

    Exact-sign bisection with Sturm counts; a dyadic rational root is hit
    exactly and returned as a collapsed interval.
    """
    chain = poly.sturm_chain(sf)
    lo, hi = Fraction(0), Fraction(1)
    if poly.count_roots(chain, lo, hi) == 0:
        return None
    # invariant: the smallest root lies in (lo, hi] and lo is not a root
    while True:
        count = poly.count_roots(chain, lo, hi)
        if count == 1:
            if poly.evaluate(sf, hi) == 0:
                return hi, hi
            if hi - lo <= precision:
                return lo, hi
        mid = (lo + hi) / 2
        if poly.count_roots(chain, lo, mid) >= 1:
            hi = mid
        else:
            lo = mid


def root_from_theta(
    theta: poly.Poly, precision: Fraction = DEFAULT_PRECISION
) -> CharacteristicRoot | None:
    """Isolate the smallest positive root of theta in (0, 1]; None if absent."""
    sf = poly.square_free_part(theta)
    iso = _isolate_smallest_unit_root(sf, precision)
    if iso is None:
        return None
    return CharacteristicRoot(theta=theta, square_free=sf, lo=iso[0], hi=iso[1])


def refine_root(root: CharacteristicRoot, width: Fraction) -> CharacteristicRoot:
    """Shrink the isolating interval below ``width`` (no-op for exact roots)."""
    if root.exact:
        return root
    lo, hi = root.lo, root.hi
    chain = root.chain()
    while hi - lo > width:
        mid = (lo + hi) / 2
        if poly.evaluate(root.square_free, mid) == 0:
            lo = hi = mid
            break
        if poly.count_roots(chain, lo, mid) == 1:
            hi = mid
        else:
            lo = mid
    return CharacteristicRoot(root.theta, root.square_free, lo, hi, _chain=chain)


def compare_roots(
    a: CharacteristicRoot, b: CharacteristicRoot, max_rounds: int = 200
) -> tuple[int, CharacteristicRoot, CharacteristicRoot]:
    """Order two isolated algebraic roots exactly.

    Returns (sign(a - b), a, b) with the intervals refined far enough to be
    disjoint, or collapsed to a proven common root (sign 0).  Equality of
    irrational roots is decided through the gcd of the square-free parts.
    """
    for _ in range(max_rounds):
        if a.exact and b.exact:
            return (a.lo > b.lo) - (a.lo < b.lo), a, b
        if a.exact:
            # b's root lies strictly inside (b.lo, b.hi)
            if a.lo <= b.lo:
                return -1, a, b
            if a.lo >= b.hi:
                return 1, a, b
            if poly.evaluate(b.square_free, a.lo) == 0:
                return 0, a, b
            b = _refine_step(b, exclude=a.lo)
            continue
        if b.exact:
            cmp, b, a = compare_roots(b, a, max_rounds)
            return -cmp, a, b
        if a.hi <= b.lo:
            return -1, a, b
        if b.hi <= a.lo:
            return 1, a, b
        common = poly.gcd(a.square_free, b.square_free)
        if poly.degree(common) >= 1:
            low = max(a.lo, b.lo)
            high = min(a.hi, b.hi)
            if low < high and poly.count_roots(poly.sturm_chain(common), low, high) >= 1:
                # a common root strictly inside both intervals is both roots
                return 0, a, b
        a = _refine_step(a)
        b = _refine_step(b)
    raise TraceSysError("root comparison did not separate after refinement")


def _refine_step(
    root: CharacteristicRoot, exclude: Fraction | None = None
) -> CharacteristicRoot:
    """One bisection step; with ``exclude``, bisect at that point if interior."""
    if root.exact:
        return root
    mid = (root.lo + root.hi) / 2
    if exclude is not None and root.lo < exclude < root.hi:
        mid = exclude
    chain = root.chain()
    if poly.evaluate(root.square_free, mid) == 0:
        return CharacteristicRoot(root.theta, root.square_free, mid, mid, _chain=chain)
    if poly.count_roots(chain, root.lo, mid) == 1:
        return CharacteristicRoot(root.theta, root.square_free, root.lo, mid, _chain=chain)
    return CharacteristicRoot(root.theta, root.square_free, mid, root.hi, _chain=chain)


def characteristic_root(
    system: ConcurrentSystem, precision: Fraction = DEFAULT_PRECISION
) -> CharacteristicRoot:
    """Common convergence radius of the growth series, as a root of det.

    Requires a non-trivial accessible system; refuses anything else rather
    than extrapolating.
    """
    cls = system.classify()
    if cls.trivial:
        raise TrivialSystem("trivial system has no characteristic root in (0, 1]")
    if not cls.accessible:
        raise NotAccessible("characteristic root requires an accessible system")
    theta = determinant(mobius_matrix(system))
    root = root_from_theta(theta, precision)
    if root is None:
        raise NoRootInUnitInterval(
            "no root in (0, 1]; hypotheses violated for this system"
        )
    return root


# ---------------------------------------------------------------- growth matrix

def growth_eval(
    system: ConcurrentSystem,
    t: Fraction | int,
    root: CharacteristicRoot | None = None,
) -> list[list[Fraction]]:
    """Growth matrix at a rational point below the root: exact inverse."""
    t = Fraction(t)
    if t < 0:
        raise TraceSysError("evaluation point must be non-negative")
    if root is None:
        root = characteristic_root(system)
    if t >= root.lo:
        raise SingularAtT(f"{t} is not below the isolating interval of the root")
    m = mobius_matrix(system).evaluate(t)
    return _invert_fraction_matrix(m)


def _invert_fraction_matrix(m: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(m)
    a = [[Fraction(m[i][j]) for j in range(n)] for i in range(n)]
    inv = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for k in range(n):
        p = next((i for i in range(k, n) if a[i][k] != 0), None)
        if p is None:
            raise SingularAtT("matrix is singular at this evaluation point")
        a[k], a[p] = a[p], a[k]
        inv[k], inv[p] = inv[p], inv[k]
        pivot = a[k][k]
        a[k] = [x / pivot for x in a[k]]
        inv[k] = [x / pivot for x in inv[k]]
        for i in range(n):
            if i != k and a[i][k] != 0:
                f = a[i][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
                inv[i] = [x - f * y for x, y in zip(inv[i], inv[k])]
    return inv


@dataclass(frozen=True)
class InversionReport:
    order: int
    ok: bool
    failures: tuple[tuple, ...]  # (n, side, origin, target, value)


def verify_inversion(system: ConcurrentSystem, order: int) -> InversionReport:
    """Convolve the matrix coefficients with execution counts up to ``order``.

    Checks, in exact big-integer arithmetic, that both one-sided products
    of the alternating clique matrix with the growth coefficients telescope
    to the identity.
    """
    from .graphs import build_adsc, count_paths_table

    pm = mobius_matrix(system)
    n = pm.dim
    max_deg = max(poly.degree(e) for row in pm.entries for e in row)
    mu = [
        [[e[k] if k < len(e) else 0 for e in row] for row in pm.entries]
        for k in range(max_deg + 1)
    ]
    adsc = build_adsc(system)
    tables = [count_paths_table(adsc, s, order) for s in system.states]
    g = [
        [
            [tables[i][m].get(t, 0) for t in system.states]
            for i in range(n)
        ]
        for m in range(order + 1)
    ]

    failures = []
    for m in range(order + 1):
        want = [[int(i == j and m == 0) for j in range(n)] for i in range(n)]
        for side in ("mu*G", "G*mu"):
            acc = [[0] * n for _ in range(n)]
            for k in range(min(m, max_deg) + 1):
                left = mu[k] if side == "mu*G" else g[m - k]
                right = g[m - k] if side == "mu*G" else mu[k]
                for i in range(n):
                    for l in range(n):
                        if left[i][l]:
                            for j in range(n):
                                acc[i][j] += left[i][l] * right[l][j]
            for i in range(n):
                for j in range(n):
                    if acc[i][j] != want[i][j]:
                        failures.append(
                            (m, side, system.states[i], system.states[j], acc[i][j])
                        )
    return InversionReport(order=order, ok=not failures, failures=tuple(failures))


# ---------------------------------------------------------------- spectral radii

def spectral_radius(succ: Adjacency, tol: float = 1e-10, max_iter: int = 100_000) -> float:
    """Largest eigenvalue modulus of the adjacency matrix.

    The radius of a digraph is the maximum over its strongly connected
    components (the adjacency is block triangular), and on a single
    component the shifted matrix (F + Id) is primitive, so power iteration
    from the all-ones vector converges geometrically.  Iterating on the
    whole graph instead can stall: a reducible matrix may be defective at
    its dominant eigenvalue.  Acyclic graphs short-circuit to 0.
    """
    from .graphs import tarjan_sccs

    best = 0.0
    for comp in tarjan_sccs(succ):
        if len(comp) == 1 and comp[0] not in succ[comp[0]]:
            continue
        remap = {v: i for i, v in enumerate(comp)}
        sub = tuple(
            tuple(remap[w] for w in succ[v] if w in remap) for v in comp
        )
        best = max(best, _power_radius(sub, tol, max_iter))
    return best


def _power_radius(succ: Adjacency, tol: float, max_iter: int) -> float:
    """Rayleigh power iteration on (F + Id) for a strongly connected graph."""
    n = len(succ)
    f = np.zeros((n, n))
    for v, out in enumerate(succ):
        for w in out:
            f[v, w] = 1.0
    x = np.ones(n) / np.sqrt(n)
    lam_prev = None
    for _ in range(max_iter):
        y = x + f @ x
        x = y / np.linalg.norm(y)
        lam = float(x @ (x + f @ x))
        if lam_prev is not None and abs(lam - lam_prev) <= tol:
            return lam - 1.0
        lam_prev = lam
    raise NonConvergence(f"power iteration did not converge in {max_iter} steps")


@dataclass(frozen=True)
class ComponentRadiiReport:
    global_radius: float
    radii: tuple[float, ...]
    basic: tuple[bool, ...]


def component_radii(
    graph: StateCliqueGraph,
    basic_rtol: float = 1e-8,
    ambiguous_rtol: float = 1e-6,
) -> ComponentRadiiReport:
    """Spectral radius of each SCC, with basic flags against the global radius.

    A component is basic when its radius matches the global one within
    ``basic_rtol`` (relative); radii landing between the two tolerances are
    surfaced as an error instead of being guessed either way.
    """
    cond = graph.condensation()
    global_rho = spectral_radius(graph.succ)
    radii = []
    for comp in cond.components:
        remap = {v: i for i, v in enumerate(comp)}
        sub = tuple(
            tuple(remap[w] for w in graph.succ[v] if w in remap) for v in comp
        )
        radii.append(spectral_radius(sub))
    basic = []
    for rho in radii:
        gap = (global_rho - rho) / global_rho if global_rho > 0 else 0.0
        if gap <= basic_rtol:
            basic.append(True)
        elif gap <= ambiguous_rtol:
            raise AmbiguousBasic(
                f"component radius {rho} within ambiguity band of {global_rho}"
            )
        else:
            basic.append(False)
    return ComponentRadiiReport(
        global_radius=global_rho, radii=tuple(radii), basic=tuple(basic)
    )


# ---------------------------------------------------------------- spectral property

@dataclass(frozen=True)
class LetterRestriction:
    letter: str
    root: CharacteristicRoot | None  # None encodes an infinite radius
    comparison: int  # sign of (restricted root - system root)

    @property
    def infinite(self) -> bool:
        return self.root is None


@dataclass(frozen=True)
class SpectralPropertyReport:
    root: CharacteristicRoot
    letters: tuple[LetterRestriction, ...]
    holds: bool
    witness: str | None  # a letter whose removal does not shrink the system


def spectral_property_report(
    system: ConcurrentSystem, precision: Fraction = DEFAULT_PRECISION
) -> SpectralPropertyReport:
    """Per-letter restricted roots and the strict-growth verdict.

    Restricted systems may lose accessibility, so their roots are taken
    directly from the determinant of the restricted matrix; absence of a
    root in (0, 1] is reported as an infinite radius, which compares above
    every finite root.
    """
    root = characteristic_root(system, precision)
    entries = []
    witness = None
    for a in system.monoid.letters:
        sub = system.restrict(a)
        sub_root = root_from_theta(determinant(mobius_matrix(sub)), precision)
        if sub_root is None:
            entries.append(LetterRestriction(a, None, 1))
            continue
        cmp, sub_root, root = compare_roots(sub_root, root)
        entries.append(LetterRestriction(a, sub_root, cmp))
        if cmp <= 0 and witness is None:
            witness = a
    return SpectralPropertyReport(
        root=root,
        letters=tuple(entries),
        holds=witness is None,
        witness=witness,
    )
