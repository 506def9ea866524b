"""The graded invariant ring R = Sym(V)^G.

Bases of each graded piece are computed per weight block (the diagonal
torus multigrading when the representation is assembled from irreducible
factors tensored with multiplicity spaces; a single block otherwise), as
canonical reduced-echelon column bases of the Reynolds image. Dimensions
are cross-checked against the Molien series on every full-degree
computation: two independent routes that must agree exactly.
"""

from __future__ import annotations

import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .cyclo import as_integer, decode_scalar, encode_scalar
from .errors import InternalInconsistency, InvalidInput, LimitExceeded
from .groups import FiniteGroup, Representation, regular_representation
from .limits import DEFAULT_BUDGET, Budget
from .linalg import Matrix, Span, column_echelon_basis
from .monomials import (
    act_on_monomial,
    act_on_monomial_monomial_matrix,
    compositions,
    is_monomial_matrix,
    matrix_columns_sparse,
    monomial_count,
    monomials,
    poly_add_into,
    poly_mul,
)


class Grading:
    """Multigrading by contiguous variable groups, one weight coordinate each.

    `group_sizes = ()` is the trivial grading: every monomial has weight ().
    """

    __slots__ = ("group_sizes", "offsets", "coords")

    def __init__(self, group_sizes=()):
        self.group_sizes = tuple(group_sizes)
        self.coords = len(self.group_sizes)
        offs, pos = [], 0
        for s in self.group_sizes:
            offs.append(pos)
            pos += s
        self.offsets = tuple(offs)

    @property
    def trivial(self) -> bool:
        return self.coords == 0

    def nvars(self) -> int:
        return sum(self.group_sizes)

    def weight(self, mono: tuple) -> tuple:
        if self.trivial:
            return ()
        return tuple(
            sum(mono[o : o + s])
            for o, s in zip(self.offsets, self.group_sizes)
        )

    def all_weights(self, degree: int):
        if self.trivial:
            return ((),)
        return compositions(degree, self.coords)

    def block_monomials(self, nvars: int, degree: int, w: tuple):
        """Monomials of the block, in descending lex (matches the global order)."""
        if self.trivial:
            return monomials(nvars, degree)
        if sum(w) != degree:
            return ()
        parts = [monomials(s, wc) for s, wc in zip(self.group_sizes, w)]
        out = [()]
        for p in parts:
            if not p:
                return ()
            out = [a + b for a in out for b in p]
        return tuple(out)


TRIVIAL_GRADING = Grading()


class InvElem:
    """A homogeneous invariant: sparse polynomial with its echelon pivot."""

    __slots__ = ("degree", "weight", "poly", "pivot")

    def __init__(self, degree: int, weight: tuple, poly: dict):
        self.degree = degree
        self.weight = weight
        self.poly = poly
        self.pivot = max(poly)

    def __repr__(self):
        return f"InvElem(deg={self.degree}, weight={self.weight}, terms={len(self.poly)})"


class InvariantRing:
    """Graded pieces of Sym(V)^G with per-weight-block canonical bases."""

    def __init__(
        self,
        rep: Representation,
        grading: Grading | None = None,
        budget: Budget = DEFAULT_BUDGET,
        cache=None,
        cache_prefix: dict | None = None,
    ):
        self.rep = rep
        self.nvars = rep.degree
        self.grading = grading if grading is not None else TRIVIAL_GRADING
        if not self.grading.trivial and self.grading.nvars() != self.nvars:
            raise InvalidInput("grading does not cover the representation's variables")
        self.budget = budget
        self.cache = cache
        self.cache_prefix = cache_prefix
        self._block_cache: dict = {}
        self._degree_blocks: dict = {}
        self._molien: list[int] = []
        self._monomial_fast = all(is_monomial_matrix(m) for m in rep.images)
        if self._monomial_fast:
            self._cols_single = [
                [
                    next((i, m.at(i, j)) for i in range(m.rows) if m.at(i, j))
                    for j in range(m.cols)
                ]
                for m in rep.images
            ]
        else:
            self._cols_sparse = [matrix_columns_sparse(m) for m in rep.images]

    # -- Molien series ----------------------------------------------------------

    def molien(self, max_degree: int):
        if len(self._molien) <= max_degree:
            self._molien = molien_series(self.rep, max_degree)
        return self._molien

    # -- block computation -------------------------------------------------------

    def _block_size(self, d: int, w: tuple) -> int:
        if self.grading.trivial:
            return monomial_count(self.nvars, d)
        if sum(w) != d:
            return 0
        size = 1
        for s, wc in zip(self.grading.group_sizes, w):
            size *= monomial_count(s, wc)
        return size

    def block_basis(self, d: int, w: tuple):
        key = (d, w)
        hit = self._block_cache.get(key)
        if hit is not None:
            return hit
        if self._block_size(d, w) > self.budget.monomial_limit:
            raise LimitExceeded("degree too large")
        monos = self.grading.block_monomials(self.nvars, d, w)
        if not monos:
            basis = []
        elif self._monomial_fast:
            basis = self._block_basis_monomial(d, w, monos)
        else:
            basis = self._block_basis_generic(d, w, monos)
        self._block_cache[key] = basis
        return basis

    def _block_basis_monomial(self, d, w, monos):
        """Orbit averaging: monomial images make the Reynolds image orbit-local."""
        index = {m: i for i, m in enumerate(monos)}
        seen = [False] * len(monos)
        out = []
        for i0, m0 in enumerate(monos):
            if seen[i0]:
                continue
            acc: dict = {}
            for cols in self._cols_single:
                img, c = act_on_monomial_monomial_matrix(cols, m0)
                pos = index.get(img)
                if pos is None:
                    raise InternalInconsistency("group action does not preserve weights")
                seen[pos] = True
                v = acc.get(img, 0) + c
                if v:
                    acc[img] = v
                else:
                    acc.pop(img, None)
            if acc:
                scale = acc[max(acc)]
                out.append(InvElem(d, w, {m: c / scale for m, c in acc.items()}))
        return out

    def _block_basis_generic(self, d, w, monos):
        index = {m: i for i, m in enumerate(monos)}
        n = len(monos)
        g = self.rep.group.order
        cols = []
        for m0 in monos:
            acc: dict = {}
            for sparse in self._cols_sparse:
                poly_add_into(acc, act_on_monomial(sparse, m0))
            col = [Fraction(0)] * n
            for m, c in acc.items():
                pos = index.get(m)
                if pos is None:
                    raise InternalInconsistency("group action does not preserve weights")
                col[pos] = c / g
            cols.append(col)
        reynolds_block = Matrix(n, n, [list(row) for row in zip(*cols)])
        echelon = column_echelon_basis(reynolds_block)
        out = []
        for j in range(echelon.cols):
            poly = {
                monos[i]: echelon.at(i, j) for i in range(n) if echelon.at(i, j)
            }
            out.append(InvElem(d, w, poly))
        return out

    # -- full-degree views ---------------------------------------------------------

    def _compute_degree_blocks(self, d: int):
        if monomial_count(self.nvars, d) > self.budget.monomial_limit:
            raise LimitExceeded("degree too large")
        blocks = {}
        for w in self.grading.all_weights(d):
            b = self.block_basis(d, w)
            if b:
                blocks[w] = b
        total = sum(len(b) for b in blocks.values())
        if total != self.molien(d)[d]:
            raise InternalInconsistency(
                f"Reynolds rank {total} disagrees with Molien coefficient "
                f"{self.molien(d)[d]} in degree {d}"
            )
        return blocks

    def blocks(self, d: int) -> dict:
        hit = self._degree_blocks.get(d)
        if hit is not None:
            return hit
        payload = self._cache_get(d)
        if payload is not None:
            blocks = self._deserialize_blocks(d, payload)
        else:
            blocks = self._compute_degree_blocks(d)
            self._cache_put(d, blocks)
        self._degree_blocks[d] = blocks
        return blocks

    def basis(self, d: int):
        return [el for b in self.blocks(d).values() for el in b]

    def dim(self, d: int) -> int:
        return sum(len(b) for b in self.blocks(d).values())

    def weight_dims(self, d: int) -> dict:
        return {w: len(b) for w, b in self.blocks(d).items()}

    def precompute(self, degrees, jobs: int = 1):
        degrees = [d for d in degrees if d not in self._degree_blocks]
        if not degrees:
            return
        self.molien(max(degrees))
        if jobs <= 1 or len(degrees) == 1:
            for d in degrees:
                self.blocks(d)
        else:
            with ThreadPoolExecutor(max_workers=jobs) as pool:
                list(pool.map(self.blocks, degrees))

    def coords_in_basis(self, poly: dict, d: int, w: tuple):
        """Coordinates of an invariant in the block basis (pivots are unit)."""
        basis = self.block_basis(d, w)
        coords = [poly.get(el.pivot, 0) for el in basis]
        check = dict(poly)
        for c, el in zip(coords, basis):
            if c:
                poly_add_into(check, el.poly, -c)
        if check:
            raise InternalInconsistency(
                "polynomial does not lie in the computed invariant block"
            )
        return coords

    # -- cache -----------------------------------------------------------------------

    def _cache_key(self, d: int):
        if self.cache is None or self.cache_prefix is None:
            return None
        return {
            **self.cache_prefix,
            "computation": "invariant-basis",
            "degree": d,
            "grading": list(self.grading.group_sizes),
        }

    def _cache_get(self, d: int):
        key = self._cache_key(d)
        if key is None:
            return None
        return self.cache.get(key)

    def _cache_put(self, d: int, blocks: dict):
        key = self._cache_key(d)
        if key is None:
            return
        payload = {
            "blocks": [
                {
                    "weight": list(w),
                    "polys": [
                        [[list(m), encode_scalar(c)] for m, c in sorted(el.poly.items(), reverse=True)]
                        for el in b
                    ],
                }
                for w, b in blocks.items()
            ]
        }
        self.cache.put(key, payload)

    def _deserialize_blocks(self, d: int, payload: dict) -> dict:
        blocks = {}
        for entry in payload["blocks"]:
            w = tuple(entry["weight"])
            els = []
            for poly_enc in entry["polys"]:
                poly = {tuple(m): decode_scalar(c) for m, c in poly_enc}
                els.append(InvElem(d, w, poly))
            blocks[w] = els
        return blocks


# -- Molien series --------------------------------------------------------------------


def _char_poly_det(m: Matrix):
    """Coefficients of det(I - t*M), ascending in t, via trace Newton identities."""
    n = m.rows
    traces = []
    power = m
    for _ in range(n):
        traces.append(sum((power.at(i, i) for i in range(n)), Fraction(0)))
        power = power @ m
    elem = [Fraction(1)]
    for k in range(1, n + 1):
        acc = Fraction(0)
        for j in range(1, k + 1):
            term = elem[k - j] * traces[j - 1]
            acc = acc + (term if j % 2 == 1 else -term)
        elem.append(acc * Fraction(1, k))
    return [elem[k] if k % 2 == 0 else -elem[k] for k in range(n + 1)]


def _series_inverse(q, max_degree: int):
    assert q[0] == 1
    out = [Fraction(1)]
    for d in range(1, max_degree + 1):
        acc = Fraction(0)
        for i in range(1, min(d, len(q) - 1) + 1):
            acc = acc + q[i] * out[d - i]
        out.append(-acc)
    return out


def molien_series(rep: Representation, max_degree: int):
    """dim R_d for d = 0..max_degree from the generating function.

    Independent of the Reynolds route: only traces, determinants and series
    arithmetic. Each coefficient is asserted to be a nonnegative rational
    integer, a nontrivial cancellation check over the cyclotomic field.
    """
    group = rep.group
    totals = [Fraction(0)] * (max_degree + 1)
    for k, r in enumerate(group.class_reps):
        inv = _series_inverse(_char_poly_det(rep.images[r]), max_degree)
        size = group.class_sizes[k]
        for d in range(max_degree + 1):
            totals[d] = totals[d] + size * inv[d]
    out = []
    for d, v in enumerate(totals):
        n = as_integer(v * Fraction(1, group.order))
        if n is None or n < 0:
            raise InternalInconsistency(
                f"internal arithmetic inconsistency: Molien coefficient at degree {d} "
                f"is not a nonnegative integer"
            )
        out.append(n)
    return out


# -- generators -----------------------------------------------------------------------


@dataclass(frozen=True)
class NoetherResult:
    """The group's generator-degree ceiling; exact when computed from the
    regular representation, else the group-order fallback."""

    value: int
    exact: bool


@dataclass(frozen=True)
class GeneratorSet:
    mode: str  # "minimal" | "full"
    elements: tuple
    beta_V: int | None
    beta_group: int | None

    def degrees(self):
        return [el.degree for el in self.elements]


def invariant_basis(rep: Representation, d: int, budget: Budget = DEFAULT_BUDGET) -> Matrix:
    """Basis of R_d as columns of coefficient vectors over the monomial basis."""
    ring = InvariantRing(rep, budget=budget)
    basis = ring.basis(d)
    monos = monomials(rep.degree, d)
    index = {m: i for i, m in enumerate(monos)}
    data = [[Fraction(0)] * len(basis) for _ in range(len(monos))]
    for j, el in enumerate(basis):
        for m, c in el.poly.items():
            data[index[m]][j] = c
    return Matrix(len(monos), len(basis), data)


def minimal_generators(
    ring: InvariantRing,
    stop: int,
    selection: str = "forward",
    warn_below_order: bool = True,
):
    """Greedy complement of (R+ . R+)_d inside R_d for each d <= stop.

    Returns (degrees, GeneratorSet, beta_V). `selection` picks the greedy
    scan order over basis columns; the syzygy degrees downstream must not
    depend on it, which the test suite verifies. The warning fires when the
    scan stops below the order fallback ceiling and the caller has no
    better ceiling of its own.
    """
    g = ring.rep.group.order
    if warn_below_order and stop < g:
        warnings.warn(
            f"scan ceiling {stop} is below the group order {g}; "
            "generators above it would be missed",
            stacklevel=2,
        )
    chosen = []
    for d in range(1, stop + 1):
        span = Span()
        for a in range(1, d // 2 + 1):
            for x in ring.basis(a):
                for y in ring.basis(d - a):
                    span.add(poly_mul(x.poly, y.poly))
        candidates = ring.basis(d)
        if selection == "reverse":
            candidates = list(reversed(candidates))
        elif selection != "forward":
            raise InvalidInput(f"unknown selection order {selection!r}")
        for el in candidates:
            if span.add(dict(el.poly)):
                chosen.append(el)
    chosen.sort(key=lambda el: el.degree)
    beta_v = max((el.degree for el in chosen), default=0)
    gens = GeneratorSet(
        mode="minimal", elements=tuple(chosen), beta_V=beta_v, beta_group=None
    )
    return [el.degree for el in chosen], gens, beta_v


def noether_number(
    group: FiniteGroup, exact_limit: int | None = None, budget: Budget = DEFAULT_BUDGET
) -> NoetherResult:
    """Generator-degree ceiling over all representations.

    Attained on the regular representation, so for small groups it is
    computed exactly there; otherwise the group order is a valid ceiling.
    """
    if exact_limit is None:
        exact_limit = budget.noether_exact_limit
    if group.order <= exact_limit:
        ring = InvariantRing(regular_representation(group), budget=budget)
        _, _, beta_v = minimal_generators(ring, stop=group.order)
        return NoetherResult(value=beta_v, exact=True)
    return NoetherResult(value=group.order, exact=False)


def build_E(
    ring: InvariantRing,
    mode: str,
    noether: NoetherResult,
    selection: str = "forward",
) -> GeneratorSet:
    """The generator space: all of R_1..R_beta (full) or a minimal complement."""
    beta = noether.value
    if mode == "full":
        elements = []
        for d in range(1, beta + 1):
            elements.extend(ring.basis(d))
        return GeneratorSet(
            mode="full", elements=tuple(elements), beta_V=None, beta_group=beta
        )
    if mode == "minimal":
        # beta itself certifies the scan ceiling; no warning below the order
        _, gens, beta_v = minimal_generators(
            ring, stop=beta, selection=selection, warn_below_order=False
        )
        if beta_v > beta:
            raise InternalInconsistency(
                f"minimal generator of degree {beta_v} exceeds the ceiling {beta}"
            )
        return GeneratorSet(
            mode="minimal",
            elements=gens.elements,
            beta_V=beta_v,
            beta_group=beta,
        )
    raise InvalidInput(f"unknown generator mode {mode!r}")
