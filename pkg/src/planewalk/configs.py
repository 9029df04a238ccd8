"""Finitely described infinite configurations, finite patterns, and membership oracles.

A configuration assigns a symbol to every cell of Z^d.  We only represent
configurations with a finite description: a background symbol, a list of
axis-aligned hyperplane features, and a finite map of cell overrides.
Lookup precedence is overrides > last matching feature > background.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

Coord = tuple[int, ...]
Symbol = int


class UsageError(ValueError):
    """Bad arguments at an API boundary (dimension mismatch, malformed input)."""


def vadd(u: Coord, v: Coord) -> Coord:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Coord, v: Coord) -> Coord:
    return tuple(a - b for a, b in zip(u, v))


def vscale(n: int, v: Coord) -> Coord:
    return tuple(n * a for a in v)


def norm_inf(v: Coord) -> int:
    return max(abs(c) for c in v) if v else 0


def zero(dim: int) -> Coord:
    return (0,) * dim


def unit(dim: int, axis: int, sign: int = 1) -> Coord:
    return tuple(sign if i == axis else 0 for i in range(dim))


@dataclass(frozen=True)
class PlaneFeature:
    """The hyperplane {v : v[axis] == offset} filled with a single symbol."""

    axis: int
    offset: int
    fill: Symbol

    def contains(self, v: Coord) -> bool:
        return v[self.axis] == self.offset


@dataclass
class Pattern:
    """A symbol assignment on a finite set of cells."""

    dim: int
    cells: dict[Coord, Symbol] = field(default_factory=dict)

    def __post_init__(self):
        for v in self.cells:
            if len(v) != self.dim:
                raise UsageError(f"pattern cell {v} has wrong dimension (want {self.dim})")

    def domain(self):
        return self.cells.keys()

    def __len__(self) -> int:
        return len(self.cells)

    def translate(self, u: Coord) -> "Pattern":
        return Pattern(self.dim, {vadd(v, u): s for v, s in self.cells.items()})

    def bounding_box(self) -> tuple[Coord, Coord] | None:
        if not self.cells:
            return None
        lo = tuple(min(v[i] for v in self.cells) for i in range(self.dim))
        hi = tuple(max(v[i] for v in self.cells) for i in range(self.dim))
        return lo, hi


@dataclass
class Configuration:
    """Total map Z^d -> symbols given by background + hyperplane features + overrides."""

    dim: int
    background: Symbol = 0
    features: tuple[PlaneFeature, ...] = ()
    overrides: dict[Coord, Symbol] = field(default_factory=dict)
    alphabet_size: int = 2

    def __post_init__(self):
        self.features = tuple(self.features)
        for v in self.overrides:
            if len(v) != self.dim:
                raise UsageError(f"override cell {v} has wrong dimension (want {self.dim})")
        for f in self.features:
            if not 0 <= f.axis < self.dim:
                raise UsageError(f"feature axis {f.axis} out of range for dim {self.dim}")

    def value(self, v: Coord) -> Symbol:
        s = self.overrides.get(v)
        if s is not None:
            return s
        for f in reversed(self.features):
            if v[f.axis] == f.offset:
                return f.fill
        return self.background

    __getitem__ = value

    def support_radius(self) -> int:
        """Max-norm radius of the smallest origin-centered box holding all
        overrides and every feature offset."""
        r = 0
        for v in self.overrides:
            r = max(r, norm_inf(v))
        for f in self.features:
            r = max(r, abs(f.offset))
        return r

    def override_box(self) -> tuple[Coord, Coord] | None:
        if not self.overrides:
            return None
        lo = tuple(min(v[i] for v in self.overrides) for i in range(self.dim))
        hi = tuple(max(v[i] for v in self.overrides) for i in range(self.dim))
        return lo, hi

    def translate(self, u: Coord) -> "Configuration":
        """The shifted configuration x' with x'(v) = x(v - u)."""
        feats = tuple(PlaneFeature(f.axis, f.offset + u[f.axis], f.fill) for f in self.features)
        return Configuration(
            self.dim,
            self.background,
            feats,
            {vadd(v, u): s for v, s in self.overrides.items()},
            self.alphabet_size,
        )

    def restrict(self, lo: Coord, hi: Coord) -> Pattern:
        cells = {}
        for v in product(*(range(lo[i], hi[i] + 1) for i in range(self.dim))):
            cells[v] = self.value(v)
        return Pattern(self.dim, cells)


def occurs_at(p: Pattern, x: Configuration, v: Coord) -> bool:
    """Does p, anchored at v, match x cell by cell?"""
    if p.dim != x.dim or len(v) != x.dim:
        raise UsageError(f"dimension mismatch: pattern {p.dim}, config {x.dim}, anchor {len(v)}")
    return all(x.value(vadd(u, v)) == s for u, s in p.cells.items())


def pattern_occurs_in(p: Pattern, q: Pattern, v: Coord) -> bool:
    """Does p, anchored at v, match the finite pattern q (all cells present)?"""
    for u, s in p.cells.items():
        w = vadd(u, v)
        if w not in q.cells or q.cells[w] != s:
            return False
    return True


def count_symbol(p: Pattern, s: Symbol) -> int:
    return sum(1 for t in p.cells.values() if t == s)


def is_k_sparse(x: Configuration, k: int) -> bool:
    """At most k cells hold the symbol 1."""
    for f in x.features:
        if f.fill == 1:
            return False  # a hyperplane of 1s cannot be cancelled by finitely many overrides
    if x.background == 1:
        return False
    return sum(1 for s in x.overrides.values() if s == 1) <= k


def sunny_oracle(x: Configuration, k: int) -> bool:
    """Membership in the k-sparse ("sunny side up") subshift."""
    return is_k_sparse(x, k)


def ones_of(x: Configuration) -> list[Coord]:
    """All cells holding 1, for configurations with finite 1-support."""
    for f in x.features:
        if f.fill == 1:
            raise UsageError("configuration has a 1-filled feature; 1-support is infinite")
    if x.background == 1:
        raise UsageError("configuration has background 1; 1-support is infinite")
    return [v for v, s in x.overrides.items() if s == 1]


# --- mirror subshift oracle (two-dimensional) ---------------------------------
#
# Forbidden families, with s(x, y) the symbol at (x, y):
#   1. a 3-cell vertical segment containing two adjacent 1s and some 0;
#   2. vertical dominoes of 1s at (x, y)-(x, y+1) and (x+k, y)-(x+k, y+1), k > 1;
#   3. a vertical domino of 1s at column x with s(x-k, y) != s(x+k, y), k > 1.


def _mirror_critical_box(x: Configuration) -> tuple[list[int], list[int]]:
    xs, ys = set(), set()
    for (cx, cy) in x.overrides:
        xs.add(cx)
        ys.add(cy)
    for f in x.features:
        (xs if f.axis == 0 else ys).add(f.offset)
    xs = sorted(xs) or [0]
    ys = sorted(ys) or [0]
    return xs, ys


def _effective_fills(x: Configuration, axis: int) -> dict[int, Symbol]:
    fills: dict[int, Symbol] = {}
    for f in x.features:
        if f.axis == axis:
            fills[f.offset] = f.fill  # last wins
    return fills


def mirror_oracle(x: Configuration) -> bool:
    """Membership in the two-dimensional mirror subshift.

    Exact: checks the three forbidden families over the finitely many
    anchor classes a finitely described configuration admits.
    """
    if x.dim != 2:
        raise UsageError("mirror oracle is defined for dimension 2")
    if x.background == 1:
        return False  # family 2 occurs far from all content

    vfill = _effective_fills(x, 0)
    hfill = _effective_fills(x, 1)

    # Far-field symbolic cases.
    vcols = sorted(c for c, s in vfill.items() if s == 1)
    hrows = sorted(r for r, s in hfill.items() if s == 1)
    for c1 in vcols:
        for c2 in vcols:
            if c2 - c1 > 1:
                return False  # two posts on a clean far row, family 2
    for r1 in hrows:
        for r2 in hrows:
            if r2 == r1 + 1:
                return False  # adjacent 1-rows make posts on every column

    cxs, cys = _mirror_critical_box(x)
    x_lo, x_hi = cxs[0] - 2, cxs[-1] + 2
    y_lo, y_hi = cys[0] - 3, cys[-1] + 3
    col_cands = list(range(x_lo, x_hi + 1)) + [x_hi + 1]  # one generic column
    half_span = (x_hi - x_lo) + 2

    val = x.value

    def post(px: int, py: int) -> bool:
        return val((px, py)) == 1 and val((px, py + 1)) == 1

    for px in col_cands:
        for py in range(y_lo, y_hi + 1):
            s0, s1, s2 = val((px, py)), val((px, py + 1)), val((px, py + 2))
            pair = (s0 == 1 and s1 == 1) or (s1 == 1 and s2 == 1)
            if pair and 0 in (s0, s1, s2):
                return False  # family 1

    # Bounded posts: rows near content, any column class.
    for py in range(y_lo, y_hi + 1):
        posts_here = [px for px in col_cands if post(px, py)]
        for i, p1 in enumerate(posts_here):
            for p2 in posts_here[i + 1:]:
                if p2 - p1 > 1:
                    return False  # family 2
        for px in posts_here:
            for k in range(2, half_span + 1):
                if val((px - k, py)) != val((px + k, py)):
                    return False  # family 3

    # Far rows: posts exist only on 1-filled feature columns; their rows are
    # feature-determined, so one generic row stands for all of them.
    gy = y_hi + 2
    for c in vcols:
        if post(c, gy):
            for k in range(2, half_span + 1):
                if val((c - k, gy)) != val((c + k, gy)):
                    return False
    return True
