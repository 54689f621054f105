"""Graded tangent spaces to nested Hilbert schemes at homogeneous nestings.

A weight-e tangent vector at a nesting (I^(1) ⊇ ... ⊇ I^(r)) is a tuple of
module homomorphisms I^(i) -> R/I^(i) of degree e, compatible along the chain.
Everything is solved degreewise: the unknown blocks L_d: I_d -> (R/I)_{d+e}
are parametrised degree by degree (values on fresh minimal generators are the
only new unknowns once multiplication relations are eliminated), and the
leftover compatibility conditions form one exact linear system whose kernel
dimension is the graded tangent dimension.

Tangent vectors are represented by their degreewise blocks, never by
generator images; the generator/syzygy route exists separately as a test
oracle (``hom_dim_via_syzygies``).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field

from .ideals import (FiniteGradedModule, HomogeneousIdeal, Nesting, NotMPrimary,
                     power_of_max_ideal, subquotient_module, zero_ideal)
from .linalg import FieldSpec, Mat, left_mul_vecrows, right_mul_vecrows
from .ring import RingCtx, diff_matrix, scatter_rows


class TangentError(RuntimeError):
    pass


class NotStrictlySandwiched(ValueError):
    pass


# ----------------------------------------------------------------- carriers


class IdealSource:
    """Degreewise carrier of a (truncated) ideal with variable actions."""

    def __init__(self, ideal: HomogeneousIdeal):
        self.ideal = ideal
        self.ctx = ideal.ctx
        self.fld = ideal.fld
        self.lo = ideal.order if ideal.order is not None else 0

    def dim(self, d: int) -> int:
        return self.ideal.dim_at(d)

    def act(self, j: int, d: int) -> Mat:
        return self.ideal.action(j, d)

    def e_struct(self, d: int) -> tuple[Mat, list[int], Mat]:
        st = self.ideal._estruct.get(d)
        if st is None:
            e = Mat.vstack(self.fld, [self.act(j, d) for j in range(self.ctx.n)],
                           self.dim(d + 1))
            st = e.rref_with_transform()
            self.ideal._estruct[d] = st
        return st

    def gen_top(self) -> int:
        return self.ideal.max_gen_degree


class ModuleSource:
    """Carrier interface over a finite graded module."""

    def __init__(self, mod: FiniteGradedModule):
        self.mod = mod
        self.ctx = mod.ctx
        self.fld = mod.fld
        self.lo = next((d for d in range(mod.lo, mod.hi + 1) if mod.dim(d)), mod.lo)
        self._estruct: dict[int, tuple[Mat, list[int], Mat]] = {}

    def dim(self, d: int) -> int:
        return self.mod.dim(d)

    def act(self, j: int, d: int) -> Mat:
        return self.mod.action(j, d)

    def e_struct(self, d: int):
        st = self._estruct.get(d)
        if st is None:
            e = Mat.vstack(self.fld, [self.act(j, d) for j in range(self.ctx.n)],
                           self.dim(d + 1))
            st = e.rref_with_transform()
            self._estruct[d] = st
        return st

    def gen_top(self) -> int:
        top = self.lo
        for d in range(self.lo, self.mod.hi):
            if self.dim(d + 1):
                _, piv, _ = self.e_struct(d)
                if self.dim(d + 1) > len(piv):
                    top = d + 1
        return top


class QuotientTarget:
    """R/I degreewise, with induced variable actions."""

    def __init__(self, ideal: HomogeneousIdeal):
        self.ideal = ideal
        self.ctx = ideal.ctx
        self.fld = ideal.fld
        if not ideal.is_m_primary:
            raise NotMPrimary("tangent targets need certified m-primary ideals")
        self.top = ideal.socle_degree if ideal.socle_degree is not None else -1

    def dim(self, c: int) -> int:
        if c < 0 or c > self.top:
            return 0
        return self.ideal.qdim(c)

    def act(self, j: int, c: int) -> Mat:
        key = (j, c)
        m = self.ideal._qact.get(key)
        if m is None:
            if self.dim(c) == 0 or self.dim(c + 1) == 0:
                m = Mat.zeros(self.fld, self.dim(c), self.dim(c + 1))
            else:
                st, st1 = self.ideal.quotient_structure(c), self.ideal.quotient_structure(c + 1)
                m = st1.project_rows(scatter_rows(self.ctx, st.lift, j, c))
            self.ideal._qact[key] = m
        return m


class ModuleTarget:
    def __init__(self, mod: FiniteGradedModule):
        self.mod = mod
        self.ctx = mod.ctx
        self.fld = mod.fld
        self.top = max((d for d in range(mod.lo, mod.hi + 1) if mod.dim(d)),
                       default=mod.lo - 1)

    def dim(self, c: int) -> int:
        return self.mod.dim(c)

    def act(self, j: int, c: int) -> Mat:
        return self.mod.action(j, c)


# ------------------------------------------------------------ chain solving


@dataclass
class _ChainTable:
    blocks: dict[int, tuple[Mat, int, int]] = dataclass_field(default_factory=dict)
    # d -> (P, s_d, t_d): rows of P are global parameters, columns vec(L_d)


@dataclass
class HomSolution:
    fld: FieldSpec
    e: int
    dim: int
    nparams: int
    tables: list[_ChainTable]
    cons: Mat
    _kernel: Mat | None = None

    def kernel(self) -> Mat:
        if self._kernel is None:
            if self.cons.nrows == 0:
                self._kernel = Mat.identity(self.fld, self.nparams)
            else:
                self._kernel = self.cons.kernel_basis()
        return self._kernel

    def basis_blocks(self) -> list[list[dict[int, Mat]]]:
        """Per basis tangent vector, per chain, the degree -> block map."""
        ker = self.kernel()
        out = []
        for k in range(ker.nrows):
            vec = ker.take_rows([k])
            per_chain = []
            for table in self.tables:
                blocks = {}
                for d, (p, s, t) in sorted(table.blocks.items()):
                    flat = vec.take_cols(list(range(p.nrows))).matmul(p)
                    blocks[d] = _unflatten(flat, s, t)
                per_chain.append(blocks)
            out.append(per_chain)
        return out


def _unflatten(flat: Mat, s: int, t: int) -> Mat:
    fld = flat.field
    if fld.is_rational:
        rows = [{} for _ in range(s)]
        for j, v in flat.rows[0].items():
            rows[j // t][j % t] = v
        return Mat(fld, s, t, rows=rows)
    return Mat(fld, s, t, arr=flat.arr.reshape(s, t).copy())


def _process_chain(src, tgt, e: int, q0: int) -> tuple[_ChainTable, list[Mat], int]:
    """Parametrise all blocks of one Hom chain; returns (table, constraint blocks, q)."""
    fld = src.fld
    n = src.ctx.n
    table = _ChainTable()
    cons: list[Mat] = []
    o = src.lo
    d_top = tgt.top - e
    q = q0
    if d_top < o:
        return table, cons, q
    s0, t0 = src.dim(o), tgt.dim(o + e)
    vec = s0 * t0
    p = Mat.vstack(fld, [Mat.zeros(fld, q, vec), Mat.identity(fld, vec)], vec)
    q += vec
    table.blocks[o] = (p, s0, t0)
    for d in range(o, d_top):
        p, s_d, t_cur = table.blocks[d]
        s_next, t_next = src.dim(d + 1), tgt.dim(d + 1 + e)
        nsd = n * s_d
        red, piv, tr = src.e_struct(d)
        rho = len(piv)
        # required values on products: G = vstack_j (L_d @ B_j)
        if t_cur and t_next and s_d:
            parts = [right_mul_vecrows(p, s_d, t_cur, tgt.act(j, d + e))
                     for j in range(n)]
            p_g = Mat.hstack(fld, parts)
            p_tg = left_mul_vecrows(p_g, nsd, t_next, tr)
        else:
            p_tg = Mat.zeros(fld, q, nsd * t_next)
        if t_next and nsd > rho:
            idx = [a * t_next + c for a in range(rho, nsd) for c in range(t_next)]
            block = p_tg.take_cols(idx).transpose()
            if block.nrows:
                cons.append(block)
        # assemble the next block: pivot rows carry solved values, the rest are
        # fresh parameters (values on new minimal generators)
        vec_next = s_next * t_next
        pairs = []
        for i in range(rho):
            for c in range(t_next):
                pairs.append((i * t_next + c, piv[i] * t_next + c))
        old_part = p_tg.remap_cols(vec_next, pairs)
        pivset = set(piv)
        free_rows = [u for u in range(s_next) if u not in pivset]
        entries = []
        for k, u in enumerate(free_rows):
            for c in range(t_next):
                r = k * t_next + c
                entries.append((r, u * t_next + c, 1))
                for i in range(rho):
                    val = _mat_entry(red, i, u)
                    if val is not None:
                        entries.append((r, piv[i] * t_next + c, -val if fld.is_rational
                                        else (-val) % fld.p))
        new_part = Mat.from_entries(fld, len(free_rows) * t_next, vec_next, entries)
        p_next = Mat.vstack(fld, [old_part, new_part], vec_next)
        q += len(free_rows) * t_next
        table.blocks[d + 1] = (p_next, s_next, t_next)
    return table, cons, q


def _mat_entry(m: Mat, i: int, j: int):
    if m.field.is_rational:
        return m.rows[i].get(j)
    v = int(m.arr[i, j])
    return v if v else None


def _inclusion_coords(lower: HomogeneousIdeal, upper: HomogeneousIdeal, d: int) -> Mat:
    """Coordinates of the basis of (lower)_d inside the basis of (upper)_d."""
    b, _ = lower.basis_at(d)
    _, piv = upper.basis_at(d)
    return b.take_cols(piv)


def _lift_project(lower: HomogeneousIdeal, upper: HomogeneousIdeal, c: int) -> Mat:
    """The induced map (R/lower)_c -> (R/upper)_c for lower ⊆ upper."""
    st_low = lower.quotient_structure(c)
    st_up = upper.quotient_structure(c)
    return st_up.project_rows(st_low.lift)


def _solve(chains, links, e: int, want_basis: bool = False) -> HomSolution:
    """chains: list of (source, target); links: list of (upper_ideal, lower_ideal,
    upper_chain_index, lower_chain_index) nesting compatibilities."""
    fld = chains[0][0].fld
    tables: list[_ChainTable] = []
    cons_blocks: list[Mat] = []
    q = 0
    for src, tgt in chains:
        table, cons, q = _process_chain(src, tgt, e, q)
        tables.append(table)
        cons_blocks.extend(cons)
    for upper, lower, iu, il in links:
        tu, tl = tables[iu], tables[il]
        top_u = (upper.socle_degree if upper.socle_degree is not None else -1) - e
        lo_l = lower.order if lower.order is not None else 0
        for d in range(lo_l, top_u + 1):
            s_low = lower.dim_at(d)
            t_up = upper.qdim(d + e) if d + e >= 0 else 0
            if s_low == 0 or t_up == 0:
                continue
            incl = _inclusion_coords(lower, upper, d)
            pu = tu.blocks.get(d)
            if pu is not None:
                term_u = left_mul_vecrows(pu[0], pu[1], pu[2], incl)
            else:
                term_u = Mat.zeros(fld, 0, s_low * t_up)
            pl = tl.blocks.get(d)
            if pl is not None and pl[2]:
                lp = _lift_project(lower, upper, d + e)
                term_l = right_mul_vecrows(pl[0], pl[1], pl[2], lp)
            else:
                term_l = Mat.zeros(fld, 0, s_low * t_up)
            h = max(term_u.nrows, term_l.nrows)
            block = _pad_rows(term_l, h).sub(_pad_rows(term_u, h)).transpose()
            if block.nrows:
                cons_blocks.append(block)
    padded = [_pad_cols(b, q) for b in cons_blocks if b.nrows]
    cons = Mat.vstack(fld, padded, q) if padded else Mat.zeros(fld, 0, q)
    dim = q - cons.rank() if cons.nrows else q
    sol = HomSolution(fld, e, dim, q, tables, cons)
    if want_basis:
        sol.kernel()
    return sol


def _pad_rows(m: Mat, nrows: int) -> Mat:
    if m.nrows == nrows:
        return m
    return Mat.vstack(m.field, [m, Mat.zeros(m.field, nrows - m.nrows, m.ncols)], m.ncols)


def _pad_cols(m: Mat, ncols: int) -> Mat:
    if m.ncols == ncols:
        return m
    return Mat.hstack(m.field, [m, Mat.zeros(m.field, m.nrows, ncols - m.ncols)])


# ------------------------------------------------------------- graded homs


@dataclass
class GradedHom:
    """A basis of degree-e module homomorphisms, stored blockwise."""

    e: int
    dim: int
    block_dims: dict[int, tuple[int, int]]
    basis: list[dict[int, Mat]] | None = None

    def __len__(self):
        return self.dim


def graded_hom(source: FiniteGradedModule, target: FiniteGradedModule,
               e: int, want_basis: bool = True) -> GradedHom:
    """Hom_R(source, target)_e via the degreewise solver."""
    src = ModuleSource(source)
    tgt = ModuleTarget(target)
    sol = _solve([(src, tgt)], [], e, want_basis=want_basis)
    dims = {d: (s, t) for d, (_, s, t) in sol.tables[0].blocks.items()} if sol.tables else {}
    basis = None
    if want_basis:
        basis = [bb[0] for bb in sol.basis_blocks()]
    return GradedHom(e, sol.dim, dims, basis)


def graded_hom_dims(source: FiniteGradedModule, target: FiniteGradedModule
                    ) -> dict[int, int]:
    """All nonzero degrees of Hom_R(source, target), certified by windowing."""
    src = ModuleSource(source)
    tgt = ModuleTarget(target)
    lo_t = next((d for d in range(target.lo, target.hi + 1) if target.dim(d)),
                target.lo)
    e_min = lo_t - src.gen_top()
    e_max = tgt.top - src.lo
    out = {}
    for e in range(e_min, e_max + 1):
        d = _solve([(src, tgt)], [], e).dim
        if d:
            out[e] = d
    return out


def tangent_graded(ideal: HomogeneousIdeal, e: int, want_basis: bool = False) -> GradedHom:
    """Hom_R(I, R/I)_e, the weight-e tangent space at a single fat point."""
    if not ideal.is_m_primary:
        raise NotMPrimary("tangent computation needs a certified m-primary ideal")
    sol = _solve([(IdealSource(ideal), QuotientTarget(ideal))], [], e,
                 want_basis=want_basis)
    dims = {d: (s, t) for d, (_, s, t) in sol.tables[0].blocks.items()}
    basis = [bb[0] for bb in sol.basis_blocks()] if want_basis else None
    return GradedHom(e, sol.dim, dims, basis)


def nested_tangent_graded(nest: Nesting, e: int, want_basis: bool = False) -> HomSolution:
    chains = [(IdealSource(i), QuotientTarget(i)) for i in nest.ideals]
    links = [(nest.ideals[i], nest.ideals[i + 1], i, i + 1)
             for i in range(nest.r - 1)]
    return _solve(chains, links, e, want_basis=want_basis)


# ------------------------------------------------------------------- theta


def theta_blocks(nest: Nesting) -> list[list[dict[int, Mat]]]:
    """For each variable, the degree -1 tangent tuple induced by d/dx_j."""
    ctx, fld = nest.ctx, nest.fld
    out = []
    for j in range(ctx.n):
        per_chain = []
        for ideal in nest.ideals:
            qt = QuotientTarget(ideal)
            blocks = {}
            o = ideal.order or 0
            top = (ideal.socle_degree if ideal.socle_degree is not None else -1) + 1
            for d in range(o, top + 1):
                t = qt.dim(d - 1)
                s = ideal.dim_at(d)
                if t == 0 or s == 0:
                    blocks[d] = Mat.zeros(fld, s, t)
                    continue
                basis, _ = ideal.basis_at(d)
                deriv = basis.matmul(diff_matrix(ctx, fld, j, d))
                blocks[d] = ideal.quotient_structure(d - 1).project_rows(deriv)
            per_chain.append(blocks)
        out.append(per_chain)
    return out


def check_tangent_blocks(nest: Nesting, e: int,
                         per_chain: list[dict[int, Mat]]) -> bool:
    """Full constraint residual check (module-hom plus nesting), exact."""
    ctx, fld = nest.ctx, nest.fld
    for ideal, blocks in zip(nest.ideals, per_chain):
        qt = QuotientTarget(ideal)
        o = ideal.order or 0
        top = qt.top - e
        for d in range(o, top + 1):
            cur = blocks.get(d, Mat.zeros(fld, ideal.dim_at(d), qt.dim(d + e)))
            nxt = blocks.get(d + 1, Mat.zeros(fld, ideal.dim_at(d + 1),
                                              qt.dim(d + 1 + e)))
            for j in range(ctx.n):
                lhs = ideal.action(j, d).matmul(nxt)
                rhs = cur.matmul(qt.act(j, d + e))
                if not lhs.sub(rhs).is_zero():
                    return False
    for i in range(nest.r - 1):
        upper, lower = nest.ideals[i], nest.ideals[i + 1]
        bu, bl = per_chain[i], per_chain[i + 1]
        top_u = (upper.socle_degree if upper.socle_degree is not None else -1) - e
        for d in range((lower.order or 0), top_u + 1):
            s_low = lower.dim_at(d)
            t_up = upper.qdim(d + e)
            if s_low == 0 or t_up == 0:
                continue
            incl = _inclusion_coords(lower, upper, d)
            term_u = incl.matmul(bu.get(d, Mat.zeros(fld, upper.dim_at(d), t_up)))
            low_block = bl.get(d)
            if low_block is None or low_block.ncols == 0:
                term_l = Mat.zeros(fld, s_low, t_up)
            else:
                term_l = low_block.matmul(_lift_project(lower, upper, d + e))
            if not term_u.sub(term_l).is_zero():
                return False
    return True


def theta_rank(nest: Nesting, validate: bool = True) -> int:
    """Rank of the span of the n derivative directions in degree -1."""
    vecs = theta_blocks(nest)
    rows = []
    for per_chain in vecs:
        if validate and not check_tangent_blocks(nest, -1, per_chain):
            raise TangentError("theta image violates the tangent constraints")
        flat: list = []
        for blocks in per_chain:
            for d in sorted(blocks):
                flat.extend(_flatten_block(blocks[d]))
        rows.append(flat)
    if not rows or not rows[0]:
        return 0
    return Mat.from_rows(nest.fld, rows).rank()


def _flatten_block(m: Mat) -> list:
    if m.field.is_rational:
        return [m.rows[i].get(j, 0) for i in range(m.nrows) for j in range(m.ncols)]
    return [int(v) for v in m.arr.reshape(-1)]


# ------------------------------------------------------------- TNT reports


TNT_CERTIFIED = "certified"
TNT_FAILED_RATIONAL = "failed_over_rational"
TNT_FAILED_PRIME = "failed_over_prime_needs_rational_confirm"


@dataclass
class TangentReport:
    field_label: str
    hilbert_functions: list[str]
    e_min: int
    e_max: int
    degrees: dict[int, int]
    theta_rank: int
    tnt: str

    @property
    def t_neg(self) -> int:
        return sum(v for e, v in self.degrees.items() if e < 0)

    @property
    def t_nonneg(self) -> int:
        return sum(v for e, v in self.degrees.items() if e >= 0)

    @property
    def t_total(self) -> int:
        return self.t_neg + self.t_nonneg

    def t_at(self, e: int) -> int:
        return self.degrees.get(e, 0)

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "nesting": self.hilbert_functions,
            "degrees": {str(e): self.degrees[e] for e in sorted(self.degrees)},
            "t_neg": self.t_neg,
            "t_nonneg": self.t_nonneg,
            "t_total": self.t_total,
            "theta_rank": self.theta_rank,
            "tnt": self.tnt,
            "field": self.field_label,
        }


def tangent_window(nest: Nesting) -> tuple[int, int]:
    e_min = -max(i.max_gen_degree for i in nest.ideals)
    e_max = max((i.socle_degree if i.socle_degree is not None else -1) -
                (i.order or 0) for i in nest.ideals)
    return e_min, max(e_max, -1)


def tnt_check(nest: Nesting, e_range: tuple[int, int] | None = None) -> TangentReport:
    """Degreewise tangent dimensions plus the trivial-negative-tangents verdict.

    Over a prime field a positive verdict certifies the rational one: kernel
    dimensions of integer systems can only shrink under lifting while the
    theta rank can only grow, so `zero above, full rank at -1` transfers.
    A negative prime-field verdict is only a strong hint.
    """
    e_min, e_max = e_range if e_range is not None else tangent_window(nest)
    degrees = {}
    for e in range(e_min, e_max + 1):
        degrees[e] = nested_tangent_graded(nest, e).dim
    rk = theta_rank(nest)
    below = sum(v for e, v in degrees.items() if e <= -2)
    positive = below == 0 and rk == degrees.get(-1, 0)
    if positive:
        verdict = TNT_CERTIFIED
    else:
        verdict = TNT_FAILED_RATIONAL if nest.fld.is_rational else TNT_FAILED_PRIME
    return TangentReport(
        field_label=nest.fld.label,
        hilbert_functions=[str(h) for h in nest.hilbert_functions],
        e_min=e_min, e_max=e_max, degrees=degrees, theta_rank=rk, tnt=verdict)


# ------------------------------------------------------------- sandwiching


def sandwich_insert(nest: Nesting, j: int, k: int) -> Nesting:
    """Insert m^k after the j-th ideal (j = 0 prepends), checking strictness."""
    if not 0 <= j <= nest.r:
        raise NotStrictlySandwiched(f"position {j} out of range")
    mk = power_of_max_ideal(nest.ctx, nest.fld, k)
    if j >= 1:
        upper = nest.ideals[j - 1]
        if not (upper.contains(mk) and not upper.equals(mk)):
            raise NotStrictlySandwiched(f"ideal {j} does not strictly contain m^{k}")
    if j < nest.r:
        lower = nest.ideals[j]
        if not (mk.contains(lower) and not mk.equals(lower)):
            raise NotStrictlySandwiched(f"m^{k} does not strictly contain ideal {j + 1}")
    ideals = nest.ideals[:j] + [mk] + nest.ideals[j:]
    return Nesting(ideals, check=False)


@dataclass
class SandwichReport:
    j: int
    k: int
    hypotheses_met: bool
    base: TangentReport
    enlarged: TangentReport
    hom_dims: dict[int, int]
    hom_total: int
    identity_discrepancy: int
    jump_minus1: int
    jump_formula_k_km1: int
    jump_formula_km1_km1: int
    t_nonneg_unchanged: bool

    def matching_convention(self) -> str:
        if self.jump_minus1 == self.jump_formula_k_km1:
            return "q(k)*i(k-1)"
        if self.jump_minus1 == self.jump_formula_km1_km1:
            return "q(k-1)*i(k-1)"
        return "neither"

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "position": self.j,
            "power": self.k,
            "hypotheses_met": self.hypotheses_met,
            "base": self.base.to_json(),
            "enlarged": self.enlarged.to_json(),
            "hom_dims": {str(e): v for e, v in sorted(self.hom_dims.items())},
            "hom_total": self.hom_total,
            "identity_discrepancy": self.identity_discrepancy,
            "jump_minus1": self.jump_minus1,
            "jump_formula_k_km1": self.jump_formula_k_km1,
            "jump_formula_km1_km1": self.jump_formula_km1_km1,
            "jump_convention": self.matching_convention(),
            "t_nonneg_unchanged": self.t_nonneg_unchanged,
        }


def sandwich_hom_term(nest: Nesting, j: int, k: int) -> dict[int, int]:
    """Degreewise dimensions of Hom_R(m^k / I^(j+1), I^(j) / m^k)."""
    ctx, fld = nest.ctx, nest.fld
    mk = power_of_max_ideal(ctx, fld, k)
    if j >= 1:
        upper = nest.ideals[j - 1]
        target = subquotient_module(upper, mk)
        o_target = upper.order or 0
    else:
        from .ideals import _ring_as_ideal

        target = subquotient_module(_ring_as_ideal(ctx, fld, k - 1), mk)
        o_target = 0
    if j < nest.r:
        lower = nest.ideals[j]
        hi = 2 * k - 1 - o_target + 1
        source = subquotient_module(mk, lower, hi=max(hi, k))
    else:
        hi = 2 * k - 1 - o_target + 1
        source = subquotient_module(mk, zero_ideal(ctx, fld, max(hi, k)), hi=max(hi, k))
    return graded_hom_dims(source, target)


def sandwich_identity_check(nest: Nesting, j: int, k: int) -> SandwichReport:
    """Both sides of the negative-tangent sandwich identity, computed independently."""
    enlarged_nest = sandwich_insert(nest, j, k)
    base = tnt_check(nest)
    enlarged = tnt_check(enlarged_nest)
    hom_dims = sandwich_hom_term(nest, j, k)
    hom_total = sum(v for e, v in hom_dims.items() if e < 0)
    lemma_rhs = base.t_neg + hom_total
    identity_discrepancy = enlarged.t_neg - lemma_rhs
    jump = enlarged.t_at(-1) - base.t_at(-1)
    upper_q = nest.ideals[j - 1].hilbert_function() if j >= 1 else None
    if j < nest.r:
        q_low = nest.ideals[j].hilbert_function()
        q_k, q_km1 = q_low(k), q_low(k - 1)
    else:
        q_k, q_km1 = nest.ctx.dim(k), nest.ctx.dim(k - 1)
    i_km1 = (nest.ctx.dim(k - 1) - upper_q(k - 1)) if upper_q is not None \
        else nest.ctx.dim(k - 1)
    hypotheses = (base.tnt == TNT_CERTIFIED and
                  base.t_neg == base.t_at(-1))
    return SandwichReport(
        j=j, k=k, hypotheses_met=hypotheses, base=base, enlarged=enlarged,
        hom_dims=hom_dims, hom_total=hom_total,
        identity_discrepancy=identity_discrepancy, jump_minus1=jump,
        jump_formula_k_km1=q_k * i_km1, jump_formula_km1_km1=q_km1 * i_km1,
        t_nonneg_unchanged=enlarged.t_nonneg == base.t_nonneg)


# ------------------------------------------------------- generator oracle


def hom_dim_via_syzygies(ideal: HomogeneousIdeal, e: int) -> int:
    """Independent oracle for dim Hom_R(I, R/I)_e: prescribe generator images,
    impose the minimal first syzygies, count solutions."""
    from .resolutions import first_syzygies, minimal_generators

    ctx, fld = ideal.ctx, ideal.fld
    gens = minimal_generators(ideal)
    qt = QuotientTarget(ideal)
    offsets, total = [], 0
    for d, _ in gens:
        offsets.append(total)
        total += qt.dim(d + e)
    syz = first_syzygies(ideal)
    rows_blocks: list[Mat] = []
    width = 0
    cols_meta: list[tuple[int, int]] = []
    entries: list[tuple[int, int, object]] = []
    for sy_deg, comps in zip(syz.degrees, syz.comps):
        t_out = qt.dim(sy_deg + e)
        if t_out == 0:
            continue
        for l, (gd, _) in enumerate(gens):
            t_in = qt.dim(gd + e)
            if t_in == 0 or not comps[l]:
                continue
            # multiplication by the syzygy coefficient, pushed to the quotient
            coeff_deg = sy_deg - gd
            lift = ideal.quotient_structure(gd + e).lift
            prod = _sparse_poly_mult(ctx, fld, lift, gd + e, comps[l], coeff_deg)
            block = ideal.quotient_structure(sy_deg + e).project_rows(prod)
            for rr in range(t_in):
                vals = block.rows[rr].items() if fld.is_rational else \
                    ((cc, int(v)) for cc, v in enumerate(block.arr[rr]) if v)
                for cc, v in vals:
                    entries.append((offsets[l] + rr, width + cc, v))
        width += t_out
        cols_meta.append((sy_deg, t_out))
    cons = Mat.from_entries(fld, total, width, entries)
    return total - cons.rank()


def _sparse_poly_mult(ctx: RingCtx, fld, rows: Mat, a: int,
                      poly: dict[int, object], b: int) -> Mat:
    """Multiply each row (coordinates in R_a) by a sparse polynomial in R_b."""
    out = Mat.zeros(fld, rows.nrows, ctx.dim(a + b))
    monos_b = ctx.monomials(b)
    monos_a = ctx.monomials(a)
    tgt = ctx._index_for(a + b)
    if fld.is_rational:
        for i, r in enumerate(rows.rows):
            acc = out.rows[i]
            for mj, c in poly.items():
                mb = monos_b[mj]
                for ja, v in r.items():
                    key = tgt[tuple(x + y for x, y in zip(monos_a[ja], mb))]
                    t = acc.get(key, 0) + v * c
                    if t == 0:
                        acc.pop(key, None)
                    else:
                        acc[key] = t
    else:
        p = fld.p
        for mj, c in poly.items():
            mb = monos_b[mj]
            idx = [tgt[tuple(x + y for x, y in zip(m, mb))] for m in monos_a]
            out.arr[:, idx] = (out.arr[:, idx] + int(c) * rows.arr) % p
    return out
