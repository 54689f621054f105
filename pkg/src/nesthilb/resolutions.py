"""Minimal generators, graded syzygies and minimal free resolutions.

Everything is certified degreewise linear algebra: a finite-colength quotient
R/I with top nonzero degree s has regularity s, so the i-th syzygies of the
ideal live in degrees at most s+i+1 and scanning kernels up to that bound
loses nothing.  No Groebner bases anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ideals import HomogeneousIdeal, NotMPrimary
from .linalg import Mat
from .ring import HomogeneousElement, RingCtx, scatter_rows


class NotTwoStep(ValueError):
    pass


class ResolutionError(RuntimeError):
    pass


def minimal_generators(ideal: HomogeneousIdeal) -> list[tuple[int, HomogeneousElement]]:
    """Canonical minimal generators: per degree, the reduced-basis rows spanning
    a complement of R_1 * I_{d-1} inside I_d."""
    if not ideal.is_m_primary:
        raise NotMPrimary("minimal generators need a certified m-primary ideal")
    ctx, fld = ideal.ctx, ideal.fld
    out = []
    top = (ideal.socle_degree if ideal.socle_degree is not None else -1) + 1
    for d in range(top + 1):
        basis, piv = ideal.basis_at(d)
        if basis.nrows == 0:
            continue
        if d == 0:
            prev_piv: list[int] = []
        else:
            prev, _ = ideal.basis_at(d - 1)
            span, prev_piv = Mat.vstack(
                fld, [scatter_rows(ctx, prev, j, d - 1) for j in range(ctx.n)],
                ctx.dim(d)).rref()
        prevset = set(prev_piv)
        for i, p in enumerate(piv):
            if p not in prevset:
                row = basis.take_rows([i])
                coeffs = _row_to_coeffs(row)
                out.append((d, HomogeneousElement(ctx, fld, d, coeffs)))
    return out


def _row_to_coeffs(row: Mat) -> dict[int, object]:
    if row.field.is_rational:
        return dict(row.rows[0])
    return {int(j): int(v) for j, v in enumerate(row.arr[0]) if v}


@dataclass
class BettiTable:
    """Graded Betti numbers beta_{i,j} of an m-primary ideal."""

    n: int
    socle_degree: int
    quotient_hilbert: tuple[int, ...]
    betti: dict[tuple[int, int], int]

    def projective_dimension(self) -> int:
        return max((i for (i, _), b in self.betti.items() if b), default=0)

    def column(self, i: int) -> dict[int, int]:
        return {j: b for (ii, j), b in self.betti.items() if ii == i and b}

    def quotient_betti(self) -> dict[tuple[int, int], int]:
        out = {(0, 0): 1}
        for (i, j), b in self.betti.items():
            out[(i + 1, j)] = b
        return out

    def euler_polynomial(self) -> dict[int, int]:
        """Coefficients of sum (-1)^i beta_{i,j}(R/I) t^j."""
        out: dict[int, int] = {}
        for (i, j), b in self.quotient_betti().items():
            out[j] = out.get(j, 0) + (-1) ** i * b
        return {j: c for j, c in out.items() if c}

    def euler_identity_holds(self) -> bool:
        """K-polynomial check: the alternating Betti sum equals HS_{R/I}(t)(1-t)^n."""
        from math import comb

        rhs: dict[int, int] = {}
        for d, h in enumerate(self.quotient_hilbert):
            for k in range(self.n + 1):
                c = h * (-1) ** k * comb(self.n, k)
                rhs[d + k] = rhs.get(d + k, 0) + c
        rhs = {j: c for j, c in rhs.items() if c}
        return rhs == self.euler_polynomial()

    def staircase(self) -> str:
        cols = sorted({i for (i, _), b in self.betti.items() if b})
        if not cols:
            return "0"
        rows = sorted({j - i for (i, j), b in self.betti.items() if b})
        width = max(len(str(b)) for b in self.betti.values()) + 2
        head = "       " + "".join(f"{i:>{width}}" for i in cols)
        totals = {i: sum(b for (ii, _), b in self.betti.items() if ii == i) for i in cols}
        lines = [head,
                 "total: " + "".join(f"{totals[i]:>{width}}" for i in cols)]
        for r in rows:
            cells = []
            for i in cols:
                b = self.betti.get((i, r + i), 0)
                cells.append(f"{b if b else '.':>{width}}")
            lines.append(f"{r}:     " + "".join(cells))
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {"schema": 1,
                "betti": {f"{i},{j}": b for (i, j), b in sorted(self.betti.items()) if b},
                "projective_dimension": self.projective_dimension()}


@dataclass
class _FreeGens:
    """Generators of a graded submodule of a free module F = (+) R(-shift_l)."""

    shifts: list[int]  # of the ambient free module
    degrees: list[int]
    comps: list[list[dict[int, object]]]  # per generator, one sparse row per summand


def _free_dim(ctx: RingCtx, shifts: list[int], c: int) -> int:
    return sum(ctx.dim(c - s) for s in shifts)


def _free_offsets(ctx: RingCtx, shifts: list[int], c: int) -> list[int]:
    offs, acc = [], 0
    for s in shifts:
        offs.append(acc)
        acc += ctx.dim(c - s)
    return offs


def _mono_mult_row(ctx: RingCtx, row: dict[int, object], a: int,
                   m: tuple[int, ...]) -> dict[int, object]:
    """Multiply a sparse row over R_a monomials by the monomial m."""
    b = sum(m)
    src = ctx.monomials(a)
    tgt = ctx._index_for(a + b)
    return {tgt[tuple(x + y for x, y in zip(src[i], m))]: v for i, v in row.items()}


def _presentation_matrix(ctx: RingCtx, fld, gens: _FreeGens, c: int) -> Mat:
    """Degree-c matrix of (+) R(-deg_l) -> F sending the l-th unit to gens[l]."""
    src_dim = _free_dim(ctx, gens.degrees, c)
    tgt_dim = _free_dim(ctx, gens.shifts, c)
    src_offs = _free_offsets(ctx, gens.degrees, c)
    tgt_offs = _free_offsets(ctx, gens.shifts, c)
    entries = []
    for l, dg in enumerate(gens.degrees):
        md = c - dg
        if md < 0:
            continue
        for mi, m in enumerate(ctx.monomials(md)):
            src_idx = src_offs[l] + mi
            for t, comp in enumerate(gens.comps[l]):
                if not comp:
                    continue
                shifted = _mono_mult_row(ctx, comp, dg - gens.shifts[t], m)
                for j, v in shifted.items():
                    entries.append((src_idx, tgt_offs[t] + j, v))
    return Mat.from_entries(fld, src_dim, tgt_dim, entries)


def _free_scatter(ctx: RingCtx, rows: Mat, shifts: list[int], c: int, j: int) -> Mat:
    """Multiply rows (coordinates in F_c) by x_j, landing in F_{c+1}."""
    fld = rows.field
    pieces = []
    off = 0
    for s in shifts:
        w = ctx.dim(c - s)
        block = rows.take_cols(list(range(off, off + w)))
        pieces.append(scatter_rows(ctx, block, j, c - s))
        off += w
    return Mat.hstack(fld, pieces)


def _syzygy_step(ctx: RingCtx, fld, gens: _FreeGens, top: int
                 ) -> tuple[dict[int, int], _FreeGens]:
    """Kernel of the presentation of gens, presented by its own minimal generators."""
    counts: dict[int, int] = {}
    new_degrees: list[int] = []
    new_comps: list[list[dict[int, object]]] = []
    lo = min(gens.degrees) + 1
    prev_kernel: Mat | None = None
    for c in range(lo, top + 1):
        phi = _presentation_matrix(ctx, fld, gens, c)
        kernel = phi.transpose().kernel_basis()
        if prev_kernel is not None and prev_kernel.nrows:
            span = Mat.vstack(
                fld, [_free_scatter(ctx, prev_kernel, gens.degrees, c - 1, j)
                      for j in range(ctx.n)],
                _free_dim(ctx, gens.degrees, c))
            _, span_piv = span.rref()
        else:
            span_piv = []
        _, kpiv = kernel.rref()
        prevset = set(span_piv)
        fresh = [i for i, p in enumerate(kpiv) if p not in prevset]
        if fresh:
            counts[c] = len(fresh)
            offs = _free_offsets(ctx, gens.degrees, c)
            for i in fresh:
                row = kernel.take_rows([i])
                comp_rows: list[dict[int, object]] = []
                flat = _row_to_coeffs(row)
                for l, dg in enumerate(gens.degrees):
                    w = ctx.dim(c - dg)
                    comp_rows.append({k - offs[l]: v for k, v in flat.items()
                                      if offs[l] <= k < offs[l] + w})
                new_degrees.append(c)
                new_comps.append(comp_rows)
        prev_kernel = kernel
    return counts, _FreeGens(list(gens.degrees), new_degrees, new_comps)


def first_syzygies(ideal: HomogeneousIdeal) -> _FreeGens:
    """Minimal generators of the syzygy module of the canonical generators."""
    gens0 = _ideal_gens_as_free(ideal)
    s = ideal.socle_degree
    _, syz = _syzygy_step(ideal.ctx, ideal.fld, gens0, s + 2)
    return syz


def _ideal_gens_as_free(ideal: HomogeneousIdeal) -> _FreeGens:
    mf = minimal_generators(ideal)
    return _FreeGens([0], [d for d, _ in mf], [[g.coeffs] for _, g in mf])


def betti_table(ideal: HomogeneousIdeal) -> BettiTable:
    """Graded Betti numbers of the ideal via iterated syzygy steps."""
    if not ideal.is_m_primary:
        raise NotMPrimary("resolutions need a certified m-primary ideal")
    ctx, fld = ideal.ctx, ideal.fld
    s = ideal.socle_degree
    betti: dict[tuple[int, int], int] = {}
    gens = _ideal_gens_as_free(ideal)
    for d, k in _degree_multiset(gens.degrees).items():
        betti[(0, d)] = k
    step = 1
    while gens.degrees:
        if step > ctx.n:
            raise ResolutionError("resolution did not terminate at the depth bound")
        counts, gens = _syzygy_step(ctx, fld, gens, s + step + 1)
        for c, k in counts.items():
            betti[(step, c)] = k
        step += 1
    return BettiTable(ctx.n, s, tuple(ideal.hilbert_function().entries), betti)


def _degree_multiset(degrees: list[int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for d in degrees:
        out[d] = out.get(d, 0) + 1
    return out


def has_linear_syzygies(ideal: HomogeneousIdeal) -> bool:
    """Two-step predicate: h_I(k+1) - n*h_I(k) < 0 for the order k.

    Raises NotTwoStep unless m^{k+2} ⊆ I ⊆ m^k with I not inside m^{k+1}.
    """
    k = two_step_order(ideal)
    n = ideal.ctx.n
    return ideal.dim_at(k + 1) - n * ideal.dim_at(k) < 0


def two_step_order(ideal: HomogeneousIdeal) -> int:
    if not ideal.is_m_primary:
        raise NotMPrimary("two-step test needs a certified m-primary ideal")
    k = ideal.order
    if k is None or k == 0:
        raise NotTwoStep("ideal has no order (zero or unit ideal)")
    socle = ideal.socle_degree
    if socle is None or socle > k + 1:
        raise NotTwoStep(f"m^{k + 2} is not inside the ideal (socle degree {socle})")
    return k
