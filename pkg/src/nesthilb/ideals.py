"""Homogeneous ideals stored degree by degree, graded modules, nestings.

An ideal is a list of reduced-echelon bases, one per degree up to a cutoff.
The cutoff is certified: once some I_D equals the full graded piece R_D the
ideal is known to be primary to the irrelevant maximal ideal with socle degree
D-1, and every higher graded piece is full.  Ideals that never fill up below
the cutoff ceiling are kept as explicitly truncated profiles.

Quotients and subquotients use the canonical complement of a reduced echelon
subspace: the pivot set of the smaller space is always contained in the pivot
set of the larger one, and the rows of the larger reduced basis at the extra
pivots are a canonical section of the quotient.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .linalg import FieldSpec, Mat
from .ring import HomogeneousElement, RingCtx, scatter_rows

DEFAULT_CEILING = 32


class IdealError(ValueError):
    pass


class NonHomogeneousGenerator(IdealError):
    pass


class CutoffTooSmall(IdealError):
    pass


class NotMPrimary(IdealError):
    pass


class NotNested(IdealError):
    pass


class InfeasibleHilbertFunction(IdealError):
    pass


@dataclass(frozen=True)
class HilbertFunction:
    """Degreewise dimensions of R/I, as a finite tuple.

    ``truncated`` marks profiles of ideals that were not certified m-primary;
    such a profile only covers degrees up to the construction cutoff.
    """

    entries: tuple[int, ...]
    truncated: bool = False

    @property
    def size(self) -> int:
        if self.truncated:
            raise NotMPrimary("colength of a truncated profile is undefined")
        return sum(self.entries)

    def __call__(self, d: int) -> int:
        if 0 <= d < len(self.entries):
            return self.entries[d]
        if self.truncated:
            raise CutoffTooSmall(f"profile truncated before degree {d}")
        return 0

    def __len__(self):
        return len(self.entries)

    def __str__(self):
        body = ",".join(str(e) for e in self.entries)
        return f"({body}" + (",...)" if self.truncated else ")")


class SubquotientStructure:
    """Canonical presentation of A_d / B_d for echelon subspaces B ⊆ A ⊆ R_d."""

    def __init__(self, amb_dim: int, a_rref: Mat, a_piv: list[int],
                 b_rref: Mat, b_piv: list[int]):
        bset = set(b_piv)
        if not bset.issubset(set(a_piv)):
            raise NotNested("pivot sets violate containment")
        self.amb_dim = amb_dim
        self.b_rref = b_rref
        self.b_piv = list(b_piv)
        self.c_piv = [p for p in a_piv if p not in bset]
        keep = [i for i, p in enumerate(a_piv) if p not in bset]
        self.lift = a_rref.take_rows(keep)  # (qdim x amb_dim), canonical section
        self.qdim = len(self.c_piv)

    def project_rows(self, m: Mat) -> Mat:
        """Quotient coordinates of rows of m; rows must lie in A_d."""
        if self.qdim == 0:
            return Mat.zeros(m.field, m.nrows, 0)
        head = m.take_cols(self.c_piv)
        if not self.b_piv:
            return head
        return head.sub(m.take_cols(self.b_piv).matmul(self.b_rref.take_cols(self.c_piv)))


class HomogeneousIdeal:
    """A homogeneous ideal of C[x_1..x_n] stored as one echelon basis per degree."""

    def __init__(self, ctx: RingCtx, fld: FieldSpec, bases: list[Mat],
                 pivots: list[list[int]], new_gen_counts: list[int]):
        self.ctx = ctx
        self.fld = fld
        self.bases = bases
        self.pivots = pivots
        self.new_gen_counts = new_gen_counts
        self.cutoff = len(bases) - 1
        dims = [b.nrows for b in bases]
        self.order = next((d for d, k in enumerate(dims) if k), None)
        full = [d for d in range(self.cutoff + 1) if dims[d] == ctx.dim(d)]
        self.is_m_primary = bool(full)
        notfull = [d for d in range(self.cutoff + 1) if dims[d] < ctx.dim(d)]
        self.socle_degree = max(notfull) if (self.is_m_primary and notfull) else \
            (-1 if self.is_m_primary else None)
        self._qstruct: dict[int, SubquotientStructure] = {}
        self._act: dict[tuple[int, int], Mat] = {}
        self._estruct: dict[int, tuple] = {}
        self._qact: dict[tuple[int, int], Mat] = {}

    # ------------------------------------------------------------------ sizes

    def dim_at(self, d: int) -> int:
        if d < 0:
            return 0
        if d <= self.cutoff:
            return self.bases[d].nrows
        if self.is_m_primary:
            return self.ctx.dim(d)
        raise CutoffTooSmall(f"degree {d} beyond cutoff {self.cutoff}")

    def basis_at(self, d: int) -> tuple[Mat, list[int]]:
        if d < 0:
            return Mat.zeros(self.fld, 0, 0), []
        if d <= self.cutoff:
            return self.bases[d], self.pivots[d]
        if self.is_m_primary:
            n = self.ctx.dim(d)
            return Mat.identity(self.fld, n), list(range(n))
        raise CutoffTooSmall(f"degree {d} beyond cutoff {self.cutoff}")

    def qdim(self, d: int) -> int:
        return self.ctx.dim(d) - self.dim_at(d)

    def hilbert_function(self) -> HilbertFunction:
        if self.is_m_primary:
            top = self.socle_degree
            return HilbertFunction(tuple(self.qdim(d) for d in range(top + 1)))
        return HilbertFunction(tuple(self.qdim(d) for d in range(self.cutoff + 1)),
                               truncated=True)

    def colength(self) -> int:
        return self.hilbert_function().size

    @property
    def max_gen_degree(self) -> int:
        degs = [d for d, k in enumerate(self.new_gen_counts) if k]
        if not degs:
            raise IdealError("zero ideal has no generators")
        return max(degs)

    def generator_degrees(self) -> dict[int, int]:
        return {d: k for d, k in enumerate(self.new_gen_counts) if k}

    # ------------------------------------------------------------ containment

    def contains(self, other: "HomogeneousIdeal") -> bool:
        """True iff other ⊆ self, tested degree by degree."""
        if other.ctx != self.ctx or other.fld != self.fld:
            raise IdealError("ideals live over different rings or fields")
        if other.is_m_primary and not self.is_m_primary:
            raise CutoffTooSmall("truncated ideal cannot certify containing an m-primary one")
        top = other.cutoff
        if other.is_m_primary and self.is_m_primary:
            if (other.socle_degree if other.socle_degree is not None else -1) < \
               (self.socle_degree if self.socle_degree is not None else -1):
                return False
            top = min(top, max(self.socle_degree, 0) + 1)
        for d in range(top + 1):
            try:
                mine, _ = self.basis_at(d)
            except CutoffTooSmall:
                raise CutoffTooSmall(
                    f"containment needs degree {d} beyond cutoff {self.cutoff}")
            theirs = other.bases[d] if d <= other.cutoff else None
            if theirs is None or theirs.nrows == 0:
                continue
            if not _rows_in_span(theirs, mine, self.pivots[d] if d <= self.cutoff
                                 else list(range(self.ctx.dim(d)))):
                return False
        return True

    def contains_element(self, f: HomogeneousElement) -> bool:
        if f.is_zero():
            return True
        d = f.degree
        try:
            basis, piv = self.basis_at(d)
        except CutoffTooSmall:
            raise CutoffTooSmall(f"element degree {d} beyond cutoff {self.cutoff}")
        row = Mat(self.fld, 1, self.ctx.dim(d), rows=[f.row()]) if self.fld.is_rational \
            else Mat.from_entries(self.fld, 1, self.ctx.dim(d),
                                  ((0, j, v) for j, v in f.coeffs.items()))
        return _rows_in_span(row, basis, piv)

    def equals(self, other: "HomogeneousIdeal") -> bool:
        return self.contains(other) and other.contains(self)

    # --------------------------------------------------------------- quotient

    def quotient_structure(self, d: int) -> SubquotientStructure:
        st = self._qstruct.get(d)
        if st is None:
            n = self.ctx.dim(d)
            basis, piv = self.basis_at(d)
            st = SubquotientStructure(n, Mat.identity(self.fld, n), list(range(n)),
                                      basis, piv)
            self._qstruct[d] = st
        return st

    def action(self, j: int, d: int) -> Mat:
        """Multiplication by x_j as a map I_d -> I_{d+1} in the stored bases."""
        key = (j, d)
        m = self._act.get(key)
        if m is None:
            basis, _ = self.basis_at(d)
            _, piv_next = self.basis_at(d + 1)
            m = scatter_rows(self.ctx, basis, j, d).take_cols(piv_next)
            self._act[key] = m
        return m

    def __repr__(self):
        h = self.hilbert_function()
        return f"HomogeneousIdeal(n={self.ctx.n}, {self.fld.label}, h={h})"


def _rows_in_span(rows: Mat, rref: Mat, piv: list[int]) -> bool:
    if rows.nrows == 0:
        return True
    if rref.nrows == 0:
        return rows.is_zero()
    residual = rows.sub(rows.take_cols(piv).matmul(rref))
    return residual.is_zero()


# -------------------------------------------------------------- construction


def ideal_from_generators(ctx: RingCtx, fld: FieldSpec,
                          gens: list[HomogeneousElement],
                          cutoff: int | None = None,
                          ceiling: int = DEFAULT_CEILING,
                          require_m_primary: bool = False) -> HomogeneousIdeal:
    """Span the ideal generated by homogeneous elements, degree by degree.

    With ``cutoff=None`` the construction extends until some graded piece
    fills up (certifying m-primality) or the ceiling is hit.
    """
    by_deg: dict[int, list] = {}
    for g in gens:
        if g.ctx != ctx:
            raise IdealError("generator from a different ring")
        if g.is_zero():
            continue
        by_deg.setdefault(g.degree, []).append(g)
    max_gen = max(by_deg, default=0)
    if cutoff is not None and max_gen > cutoff:
        raise CutoffTooSmall(f"generator of degree {max_gen} above cutoff {cutoff}")

    bases: list[Mat] = []
    pivots: list[list[int]] = []
    new_counts: list[int] = []
    d = 0
    hard_top = cutoff if cutoff is not None else max(ceiling, max_gen)
    while d <= hard_top:
        ndim = ctx.dim(d)
        if d == 0:
            span = Mat.zeros(fld, 0, ndim)
            rank0 = 0
        else:
            prev = bases[d - 1]
            parts = [scatter_rows(ctx, prev, j, d - 1) for j in range(ctx.n)]
            span, _ = Mat.vstack(fld, parts, ndim).rref()
            rank0 = span.nrows
        gen_rows = by_deg.get(d)
        if gen_rows:
            g = _rows_matrix(ctx, fld, gen_rows, d)
            span = Mat.vstack(fld, [span, g], ndim)
        basis, piv = span.rref()
        bases.append(basis)
        pivots.append(piv)
        new_counts.append(basis.nrows - rank0)
        if cutoff is None and basis.nrows == ndim and d >= max_gen:
            break
        d += 1

    ideal = HomogeneousIdeal(ctx, fld, bases, pivots, new_counts)
    if require_m_primary and not ideal.is_m_primary:
        raise CutoffTooSmall(
            f"ideal not certified m-primary below degree {ideal.cutoff}")
    return ideal


def _rows_matrix(ctx: RingCtx, fld: FieldSpec,
                 elements: list[HomogeneousElement], d: int) -> Mat:
    n = ctx.dim(d)
    if fld.is_rational:
        return Mat(fld, len(elements), n, rows=[g.row() for g in elements])
    entries = []
    for i, g in enumerate(elements):
        for j, v in g.coeffs.items():
            entries.append((i, j, v))
    return Mat.from_entries(fld, len(elements), n, entries)


def zero_ideal(ctx: RingCtx, fld: FieldSpec, cutoff: int) -> HomogeneousIdeal:
    bases = [Mat.zeros(fld, 0, ctx.dim(d)) for d in range(cutoff + 1)]
    return HomogeneousIdeal(ctx, fld, bases, [[] for _ in bases], [0] * (cutoff + 1))


def power_of_max_ideal(ctx: RingCtx, fld: FieldSpec, k: int) -> HomogeneousIdeal:
    """m^k, stored up to its certifying degree k."""
    if k < 0:
        raise IdealError("power must be nonnegative")
    bases, pivots, counts = [], [], []
    for d in range(k + 1):
        if d < k:
            bases.append(Mat.zeros(fld, 0, ctx.dim(d)))
            pivots.append([])
            counts.append(0)
        else:
            ndim = ctx.dim(d)
            bases.append(Mat.identity(fld, ndim))
            pivots.append(list(range(ndim)))
            counts.append(ndim if k > 0 else 1)
    return HomogeneousIdeal(ctx, fld, bases, pivots, counts)


def generic_ideal_with_hilbert_function(ctx: RingCtx, fld: FieldSpec,
                                        q: tuple[int, ...], seed: int,
                                        max_retries: int = 8) -> HomogeneousIdeal:
    """Seeded random ideal whose quotient Hilbert function is exactly q.

    Degree by degree, the span of the previous piece is extended by random
    small-integer rows until the prescribed codimension is met.  Computed
    dimensions at such a point are candidate generic values; over the
    rationals they bound the true generic behaviour from the semicontinuous
    side.
    """
    if not q or q[0] != 1:
        raise InfeasibleHilbertFunction("quotient Hilbert function must start with 1")
    if q[-1] == 0:
        raise InfeasibleHilbertFunction("trailing zero entries are not allowed")
    rng = random.Random(seed)
    for _ in range(max_retries):
        out = _try_generic(ctx, fld, q, rng)
        if out is not None:
            return out
    raise InfeasibleHilbertFunction(
        f"could not realise {q} from random degreewise choices (n={ctx.n})")


def _try_generic(ctx: RingCtx, fld: FieldSpec, q: tuple[int, ...],
                 rng: random.Random) -> HomogeneousIdeal | None:
    bases: list[Mat] = []
    pivots: list[list[int]] = []
    counts: list[int] = []
    top = len(q)  # last degree built; fills up there
    for d in range(top + 1):
        ndim = ctx.dim(d)
        target = ndim - (q[d] if d < len(q) else 0)
        if target < 0:
            return None
        if d == 0:
            span = Mat.zeros(fld, 0, ndim)
        else:
            parts = [scatter_rows(ctx, bases[d - 1], j, d - 1) for j in range(ctx.n)]
            span, _ = Mat.vstack(fld, parts, ndim).rref()
        if span.nrows > target:
            return None
        rank0 = span.nrows
        basis, piv = span, None
        attempts = 0
        while basis.nrows < target:
            missing = target - basis.nrows
            extra = Mat.from_rows(
                fld, [[rng.randint(-9, 9) for _ in range(ndim)] for _ in range(missing)])
            basis, piv = Mat.vstack(fld, [basis, extra], ndim).rref()
            attempts += 1
            if attempts > 6:
                return None
        if piv is None:
            basis, piv = basis.rref()
        bases.append(basis)
        pivots.append(piv)
        counts.append(basis.nrows - rank0)
    return HomogeneousIdeal(ctx, fld, bases, pivots, counts)


# ------------------------------------------------------------------- families


def _elem(ctx: RingCtx, fld: FieldSpec, degree: int, terms: dict) -> HomogeneousElement:
    return HomogeneousElement.from_exponents(ctx, fld, degree, terms)


def _quad(ctx, fld, a: int, b: int, c: int = 1):
    """c * x_a x_b as an exponent dict term (1-based variables)."""
    e = [0] * ctx.n
    e[a - 1] += 1
    e[b - 1] += 1
    return tuple(e), c


def family_delta_generators(ctx: RingCtx, fld: FieldSpec) -> list[HomogeneousElement]:
    """2x2 minors of the 2xn matrix with rows (x1..xn) and (xn, x1..x_{n-1})."""
    n = ctx.n
    if n < 4:
        raise IdealError("the determinantal family needs n >= 4")
    row1 = list(range(1, n + 1))
    row2 = [n] + list(range(1, n))
    gens = []
    for a in range(n):
        for b in range(a + 1, n):
            ta = _quad(ctx, fld, row1[a], row2[b])
            tb = _quad(ctx, fld, row2[a], row1[b])
            terms: dict = {}
            terms[ta[0]] = terms.get(ta[0], 0) + 1
            terms[tb[0]] = terms.get(tb[0], 0) - 1
            gens.append(_elem(ctx, fld, 2, terms))
    return gens


def family_delta(ctx: RingCtx, fld: FieldSpec, cutoff: int) -> HomogeneousIdeal:
    return ideal_from_generators(ctx, fld, family_delta_generators(ctx, fld),
                                 cutoff=cutoff)


def family_j_generators(ctx: RingCtx, fld: FieldSpec) -> list[HomogeneousElement]:
    """x_n * (x_i + x_{n-1}) for i = 1..n-2."""
    n = ctx.n
    if n < 4:
        raise IdealError("the linear-times-variable family needs n >= 4")
    gens = []
    for i in range(1, n - 1):
        terms: dict = {}
        for t, c in (_quad(ctx, fld, n, i), _quad(ctx, fld, n, n - 1)):
            terms[t] = terms.get(t, 0) + c
        gens.append(_elem(ctx, fld, 2, terms))
    return gens


def family_J(ctx: RingCtx, fld: FieldSpec, cutoff: int) -> HomogeneousIdeal:
    return ideal_from_generators(ctx, fld, family_j_generators(ctx, fld),
                                 cutoff=cutoff)


def family_I2(ctx: RingCtx, fld: FieldSpec) -> HomogeneousIdeal:
    """The compressed-quotient ideal: determinantal quadrics plus the extra ones."""
    gens = family_delta_generators(ctx, fld) + family_j_generators(ctx, fld)
    return ideal_from_generators(ctx, fld, gens, require_m_primary=True)


def family_I1(ctx: RingCtx, fld: FieldSpec, s: int) -> HomogeneousIdeal:
    """(x_1..x_s)^2 + (x_{s+1}..x_n)."""
    n = ctx.n
    if not 2 <= s <= n - 2:
        raise IdealError(f"s={s} out of range for n={n}")
    gens = []
    for a in range(1, s + 1):
        for b in range(a, s + 1):
            t, c = _quad(ctx, fld, a, b)
            gens.append(_elem(ctx, fld, 2, {t: c}))
    for c_ in range(s + 1, n + 1):
        e = [0] * n
        e[c_ - 1] = 1
        gens.append(_elem(ctx, fld, 1, {tuple(e): 1}))
    return ideal_from_generators(ctx, fld, gens, require_m_primary=True)


def family_8points(ctx: RingCtx, fld: FieldSpec) -> HomogeneousIdeal:
    """(x1,x3)^2 + (x2,x4)^2 + (x1 x4 - x2 x3), a length-8 scheme in A^4."""
    if ctx.n != 4:
        raise IdealError("the eight-point family lives in four variables")
    gens = []
    for a, b in ((1, 1), (1, 3), (3, 3), (2, 2), (2, 4), (4, 4)):
        t, c = _quad(ctx, fld, a, b)
        gens.append(_elem(ctx, fld, 2, {t: c}))
    det_terms: dict = {}
    for t, c in (_quad(ctx, fld, 1, 4), _quad(ctx, fld, 2, 3, -1)):
        det_terms[t] = det_terms.get(t, 0) + c
    gens.append(_elem(ctx, fld, 2, det_terms))
    return ideal_from_generators(ctx, fld, gens, require_m_primary=True)


def family_twisted_cubic_cone(ctx: RingCtx, fld: FieldSpec, cutoff: int) -> HomogeneousIdeal:
    """Minors of [[x1,x2,x3],[x2,x3,x4]]: a surface cone, kept as a truncation."""
    if ctx.n != 4:
        raise IdealError("the twisted-cubic cone lives in four variables")
    gens = []
    for (a1, b1), (a2, b2) in (((1, 3), (2, 2)), ((1, 4), (2, 3)), ((2, 4), (3, 3))):
        terms: dict = {}
        t1, _ = _quad(ctx, fld, a1, b1)
        t2, _ = _quad(ctx, fld, a2, b2)
        terms[t1] = terms.get(t1, 0) + 1
        terms[t2] = terms.get(t2, 0) - 1
        gens.append(_elem(ctx, fld, 2, terms))
    return ideal_from_generators(ctx, fld, gens, cutoff=cutoff)


# ------------------------------------------------------------ graded modules


@dataclass
class FiniteGradedModule:
    """Finite-length graded module: per-degree dimensions plus variable actions.

    ``actions[k][j]`` maps degree lo+k to lo+k+1 in row convention (a row
    vector v maps to v @ actions[k][j]).
    """

    ctx: RingCtx
    fld: FieldSpec
    lo: int
    hi: int
    dims: list[int]
    actions: list[list[Mat]]
    labels: list[list[str]] | None = None

    def dim(self, d: int) -> int:
        if self.lo <= d <= self.hi:
            return self.dims[d - self.lo]
        return 0

    def action(self, j: int, d: int) -> Mat:
        if self.lo <= d < self.hi:
            return self.actions[d - self.lo][j]
        return Mat.zeros(self.fld, self.dim(d), self.dim(d + 1))

    def total_dim(self) -> int:
        return sum(self.dims)

    def commutation_residuals(self) -> list[Mat]:
        """x_i then x_j minus x_j then x_i, for all pairs and degrees."""
        out = []
        for d in range(self.lo, self.hi - 1):
            for i in range(self.ctx.n):
                for j in range(i + 1, self.ctx.n):
                    a = self.action(i, d).matmul(self.action(j, d + 1))
                    b = self.action(j, d).matmul(self.action(i, d + 1))
                    out.append(a.sub(b))
        return out

    def check_commuting(self) -> bool:
        return all(r.is_zero() for r in self.commutation_residuals())


def subquotient_module(a: HomogeneousIdeal, b: HomogeneousIdeal,
                       hi: int | None = None) -> FiniteGradedModule:
    """The module A/B for nested ideals B ⊆ A, with induced variable actions."""
    if a.ctx != b.ctx or a.fld != b.fld:
        raise IdealError("subquotient needs one ring and one field")
    if hi is None:
        if not b.is_m_primary:
            raise CutoffTooSmall("unbounded subquotient: pass an explicit top degree")
        hi = b.socle_degree if b.socle_degree is not None else -1
    if not a.contains(b):
        raise NotNested("second ideal is not contained in the first")
    ctx, fld = a.ctx, a.fld
    structs = {}
    for d in range(hi + 1):
        ba, pa = a.basis_at(d)
        bb, pb = b.basis_at(d)
        try:
            structs[d] = SubquotientStructure(ctx.dim(d), ba, pa, bb, pb)
        except NotNested:
            raise NotNested(f"containment fails in degree {d}")
        if not _rows_in_span(bb, ba, pa):
            raise NotNested(f"containment fails in degree {d}")
    lo_candidates = [d for d in range(hi + 1) if structs[d].qdim]
    lo = min(lo_candidates, default=0)
    dims = [structs[d].qdim for d in range(lo, hi + 1)]
    actions = []
    for d in range(lo, hi):
        row_mats = []
        for j in range(ctx.n):
            lifted = scatter_rows(ctx, structs[d].lift, j, d)
            row_mats.append(structs[d + 1].project_rows(lifted))
        actions.append(row_mats)
    monos = {d: a.ctx.monomials(d) for d in range(lo, hi + 1)}
    labels = [[ctx.mono_str(monos[d][p]) for p in structs[d].c_piv]
              for d in range(lo, hi + 1)]
    return FiniteGradedModule(ctx, fld, lo, hi, dims, actions, labels)


def quotient_module(i: HomogeneousIdeal, hi: int | None = None) -> FiniteGradedModule:
    """R/I as a finite graded module (I must be m-primary unless hi is given)."""
    if hi is None:
        if not i.is_m_primary:
            raise NotMPrimary("quotient of a truncated ideal needs an explicit top degree")
        hi = i.socle_degree if i.socle_degree is not None else -1
    return subquotient_module(_ring_as_ideal(i.ctx, i.fld, max(hi, 0)), i, hi=hi)


def _ring_as_ideal(ctx: RingCtx, fld: FieldSpec, cutoff: int) -> HomogeneousIdeal:
    bases = [Mat.identity(fld, ctx.dim(d)) for d in range(cutoff + 1)]
    pivots = [list(range(ctx.dim(d))) for d in range(cutoff + 1)]
    counts = [1] + [0] * cutoff
    return HomogeneousIdeal(ctx, fld, bases, pivots, counts)


# --------------------------------------------------------------------- nesting


class Nesting:
    """A chain I^(1) ⊇ I^(2) ⊇ ... ⊇ I^(r) of m-primary homogeneous ideals."""

    def __init__(self, ideals: list[HomogeneousIdeal], check: bool = True):
        if not ideals:
            raise NotNested("empty nesting")
        self.ideals = list(ideals)
        self.ctx = ideals[0].ctx
        self.fld = ideals[0].fld
        for i in self.ideals:
            if i.ctx != self.ctx or i.fld != self.fld:
                raise NotNested("mixed rings or fields in nesting")
            if not i.is_m_primary:
                raise NotMPrimary("nestings require certified m-primary ideals")
        if check:
            for a, b in zip(self.ideals, self.ideals[1:]):
                if not a.contains(b):
                    raise NotNested("chain is not descending")
        self.hilbert_functions = [i.hilbert_function() for i in self.ideals]
        self.colengths = [h.size for h in self.hilbert_functions]
        for a, b in zip(self.colengths, self.colengths[1:]):
            if a > b:
                raise NotNested("colengths must be non-decreasing")

    @property
    def r(self) -> int:
        return len(self.ideals)

    def __repr__(self):
        hs = " > ".join(str(h) for h in self.hilbert_functions)
        return f"Nesting[{hs}]"
