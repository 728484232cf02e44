"""Polarized superalgebras and polarized super triple systems from pairs.

An isotopic pair (V1, V2) yields a Z2-graded Lie superalgebra
g = g0 + (g1+ + g1-) with g1+ = V1, g1- = V2 carrying the twisted
parity (bit flipped), and g0 the closure, under the graded operator
commutator, of the maps

    D(x, u) = ( y |-> [x, y]_u  on V1,
                v |-> sigma(x, u, v) [u, v]_x  on V2 ).

The Koszul factor sigma is not printed in the source construction; it
is parametrized here and pinned by requiring the full super-Jacobi
check to pass on pairs with odd elements (see PINNED_SIGMA, selected by
scan_sigma_conventions and frozen in tests).

A super-Jordan pair yields a polarized super Lie triple system on
V = V1 + V2 via the same machinery: the pair is parity-flipped into an
isotopic pair, and the triple product is the double bracket
[[a, b], c] of the associated superalgebra.  The ambient parities of
the triple system equal the input super-Jordan parities, which are
exactly the twisted parities of the flipped isotopic pair.  The
implemented (graded) triple-system axiom set is:

    (i)   [a b c] = -(-1)^(p(a)p(b)) [b a c]
    (ii)  (-1)^(p(a)p(c)) [a b c] + (-1)^(p(b)p(a)) [b c a]
          + (-1)^(p(c)p(b)) [c a b] = 0
    (iii) [a b [c d e]] = [[a b c] d e]
          + (-1)^((p(a)+p(b))p(c)) [c [a b d] e]
          + (-1)^((p(a)+p(b))(p(c)+p(d))) [c d [a b e]]

checked exhaustively on basis tuples.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .exactlin import IncrementalSpan, Matrix
from .pairs import (
    ISOTOPIC,
    SUPER_JORDAN,
    AxiomReport,
    Failure,
    PairStructure,
    VerifyReport,
    check_super_jordan,
    verify,
)
from .supercore import SuperSpace

FAILURE_CAP = 25


class PreconditionError(ValueError):
    """The input pair does not satisfy the construction's precondition."""


@dataclass(frozen=True)
class SigmaConvention:
    """sigma(x, u, v) = eps * (-1)^(quadratic+linear form in parities)."""

    eps: int = 1
    l_xu: int = 0
    l_xv: int = 0
    l_uv: int = 0
    m_x: int = 0
    m_u: int = 0
    m_v: int = 0

    def value(self, px: int, pu: int, pv: int) -> int:
        e = (
            self.l_xu * px * pu
            + self.l_xv * px * pv
            + self.l_uv * pu * pv
            + self.m_x * px
            + self.m_u * pu
            + self.m_v * pv
        )
        return self.eps * (-1 if e % 2 else 1)

    @property
    def ident(self) -> str:
        bits = [] if self.eps == 1 else ["-1"]
        for flag, name in (
            (self.l_xu, "p(x)p(u)"),
            (self.l_xv, "p(x)p(v)"),
            (self.l_uv, "p(u)p(v)"),
            (self.m_x, "p(x)"),
            (self.m_u, "p(u)"),
            (self.m_v, "p(v)"),
        ):
            if flag:
                bits.append(f"(-1)^{name}")
        return "*".join(bits) if bits else "+1"


def all_sigma_conventions():
    for eps in (1, -1):
        for flags in itertools.product((0, 1), repeat=6):
            yield SigmaConvention(eps, *flags)


# Pinned by scan_sigma_conventions on gl(2,0) and gl(1,1): the unique
# passing convention.  sigma(x,u,v) = (-1)^(p(x)p(u)+p(x)+p(u)), i.e.
# -(-1)^(p^(x)p^(u)) in the twisted (hat) parities; independent of p(v).
PINNED_SIGMA = SigmaConvention(eps=1, l_xu=1, m_x=1, m_u=1)


@dataclass
class PolarizedSuperalgebra:
    """g0 + g1+ + g1- with full bracket table on a chosen basis.

    Basis order: g0 elements, then V1 (= g1+), then V2 (= g1-).
    ``parities`` are the superalgebra parities (g1 elements carry the
    pair parity flipped); ``grading`` marks "0", "+", "-" per index.
    """

    pair: PairStructure
    labels: tuple
    parities: tuple
    grading: tuple
    table: dict  # (i, j) -> {k: Fraction}
    g0_ops: list  # (P: Matrix on V1, Q: Matrix on V2) per g0 basis element
    g0_recipes: list  # ("gen", i, j) or ("comm", a, b)
    sigma: SigmaConvention

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def g0_dim(self) -> int:
        return len(self.g0_ops)

    def bracket_basis(self, i: int, j: int) -> dict:
        return self.table.get((i, j), {})

    def to_json(self) -> dict:
        from .exactlin import scalar_to_str

        return {
            "labels": list(self.labels),
            "parities": list(self.parities),
            "grading": list(self.grading),
            "sigma": self.sigma.ident,
            "brackets": [
                {
                    "i": i,
                    "j": j,
                    "out": [
                        {"idx": k, "c": scalar_to_str(c)}
                        for k, c in sorted(self.table[(i, j)].items())
                    ],
                }
                for (i, j) in sorted(self.table)
            ],
        }


def _d_operator(pair: PairStructure, i: int, j: int, sigma: SigmaConvention):
    """D(x_i, u_j) as a pair of matrices (action on V1, action on V2)."""
    d1, d2 = pair.v1.dim, pair.v2.dim
    px, pu = pair.v1.parities[i], pair.v2.parities[j]
    P = [[Fraction(0)] * d1 for _ in range(d1)]
    for k in range(d1):
        for o, c in pair.m1.get((j, i, k), {}).items():
            P[o][k] = c
    Q = [[Fraction(0)] * d2 for _ in range(d2)]
    for k in range(d2):
        s = sigma.value(px, pu, pair.v2.parities[k])
        for o, c in pair.m2.get((i, j, k), {}).items():
            Q[o][k] = s * c
    return Matrix.from_rows(P), Matrix.from_rows(Q)


def _flatten_op(op) -> dict:
    P, Q = op
    flat = {}
    base = 0
    for M in (P, Q):
        n = M.rows
        for r in range(n):
            for c in range(n):
                v = M[r, c]
                if v:
                    flat[base + r * n + c] = v
        base += n * n
    return flat


def superalgebra_from_pair(
    pair: PairStructure,
    sigma: Optional[SigmaConvention] = None,
    verified: bool = False,
) -> PolarizedSuperalgebra:
    """Theorem-2B construction: the polarized Z2-graded superalgebra of
    an isotopic pair.  ``verified=True`` skips the (possibly expensive)
    precondition run of the full verify suite."""
    if pair.kind != ISOTOPIC:
        raise PreconditionError("superalgebra_from_pair needs an isotopic pair")
    if not verified and not verify(pair).passed:
        raise PreconditionError("pair fails its verify suite")
    sigma = sigma or PINNED_SIGMA
    d1, d2 = pair.v1.dim, pair.v2.dim

    spans = {0: IncrementalSpan(track_combos=True), 1: IncrementalSpan(track_combos=True)}
    ops: list = []
    parities: list = []
    recipes: list = []
    kept_by_parity: dict = {0: [], 1: []}
    gen_index: dict = {}

    def adjoin(op, parity, recipe) -> Optional[int]:
        flat = _flatten_op(op)
        if not flat:
            return None
        if spans[parity].contains(flat):
            return None
        spans[parity].insert(flat)
        ops.append(op)
        parities.append(parity)
        recipes.append(recipe)
        kept_by_parity[parity].append(len(ops) - 1)
        return len(ops) - 1

    for i in range(d1):
        for j in range(d2):
            op = _d_operator(pair, i, j, sigma)
            parity = (pair.v1.parities[i] + pair.v2.parities[j]) % 2
            gen_index[(i, j)] = (op, parity)
            adjoin(op, parity, ("gen", i, j))

    # closure under the graded operator commutator; the span inside
    # End(V1) + End(V2) is finite so this terminates
    processed: set = set()
    changed = True
    while changed:
        changed = False
        size = len(ops)
        for a in range(size):
            for b in range(a, size):
                if (a, b) in processed:
                    continue
                processed.add((a, b))
                Pa, Qa = ops[a]
                Pb, Qb = ops[b]
                s = -1 if parities[a] * parities[b] % 2 else 1
                comm = (
                    Pa @ Pb - (Pb @ Pa).scale(s),
                    Qa @ Qb - (Qb @ Qa).scale(s),
                )
                idx = adjoin(comm, (parities[a] + parities[b]) % 2, ("comm", a, b))
                if idx is not None:
                    changed = True

    n0 = len(ops)
    labels = (
        tuple(f"D{k}" for k in range(n0))
        + tuple(f"{l}+" for l in pair.v1.labels)
        + tuple(f"{l}-" for l in pair.v2.labels)
    )
    hat = (
        tuple(parities)
        + tuple((p + 1) % 2 for p in pair.v1.parities)
        + tuple((p + 1) % 2 for p in pair.v2.parities)
    )
    grading = ("0",) * n0 + ("+",) * d1 + ("-",) * d2

    def g0_coords(op, parity) -> dict:
        flat = _flatten_op(op)
        if not flat:
            return {}
        combo = spans[parity].solve(flat)
        if combo is None:
            raise RuntimeError("g0 closure violated")
        return {kept_by_parity[parity][k]: c for k, c in combo.items() if c}

    table: dict = {}

    def put(i, j, comps: dict):
        comps = {k: Fraction(c) for k, c in comps.items() if c}
        if comps:
            table[(i, j)] = comps
            s = -1 if hat[i] * hat[j] % 2 else 1
            table[(j, i)] = {k: -s * c for k, c in comps.items()}

    for a in range(n0):
        Pa, Qa = ops[a]
        for b in range(a, n0):
            Pb, Qb = ops[b]
            s = -1 if parities[a] * parities[b] % 2 else 1
            comm = (Pa @ Pb - (Pb @ Pa).scale(s), Qa @ Qb - (Qb @ Qa).scale(s))
            put(a, b, g0_coords(comm, (parities[a] + parities[b]) % 2))
        for k in range(d1):
            col = Pa.col(k)
            put(a, n0 + k, {n0 + o: c for o, c in enumerate(col) if c})
        for k in range(d2):
            col = Qa.col(k)
            put(a, n0 + d1 + k, {n0 + d1 + o: c for o, c in enumerate(col) if c})
    for i in range(d1):
        for j in range(d2):
            op, parity = gen_index[(i, j)]
            put(n0 + i, n0 + d1 + j, g0_coords(op, parity))

    return PolarizedSuperalgebra(
        pair, labels, hat, grading, table, ops, recipes, sigma
    )


def check_superalgebra(a: PolarizedSuperalgebra, cap: int = FAILURE_CAP) -> VerifyReport:
    """Graded antisymmetry, polarization, submodule property, and the
    exhaustive super-Jacobi identity on all basis triples."""
    N = a.dim
    hat = a.parities
    reports = []

    failures, count = [], 0
    for i, j in itertools.product(range(N), repeat=2):
        s = -1 if hat[i] * hat[j] % 2 else 1
        lhs = a.bracket_basis(i, j)
        rhs = a.bracket_basis(j, i)
        keys = set(lhs) | set(rhs)
        res = {k: lhs.get(k, 0) + s * rhs.get(k, 0) for k in keys}
        res = {k: v for k, v in res.items() if v}
        if res:
            count += 1
            if len(failures) < cap:
                failures.append(Failure({"i": i, "j": j}, res))
    reports.append(AxiomReport("superalgebra.antisymmetry", 0, N * N, count, failures))

    failures, count = [], 0
    plus = [i for i in range(N) if a.grading[i] == "+"]
    minus = [i for i in range(N) if a.grading[i] == "-"]
    for block in (plus, minus):
        for i, j in itertools.product(block, repeat=2):
            res = a.bracket_basis(i, j)
            if res:
                count += 1
                if len(failures) < cap:
                    failures.append(Failure({"i": i, "j": j}, dict(res)))
    reports.append(
        AxiomReport(
            "superalgebra.polarization",
            0,
            len(plus) ** 2 + len(minus) ** 2,
            count,
            failures,
        )
    )

    failures, count = [], 0
    zero = [i for i in range(N) if a.grading[i] == "0"]
    for i in zero:
        for j in plus + minus:
            out = a.bracket_basis(i, j)
            bad = {k: c for k, c in out.items() if a.grading[k] != a.grading[j]}
            if bad:
                count += 1
                if len(failures) < cap:
                    failures.append(Failure({"i": i, "j": j}, bad))
    reports.append(
        AxiomReport(
            "superalgebra.submodule", 0, len(zero) * (len(plus) + len(minus)), count, failures
        )
    )

    def ad(i, vec: dict) -> dict:
        out: dict = {}
        for j, c in vec.items():
            for k, d in a.bracket_basis(i, j).items():
                v = out.get(k, 0) + c * d
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)
        return out

    # [a,[b,c]] = [[a,b],c] + (-1)^(p(a)p(b)) [b,[a,c]]
    failures, count = [], 0
    for i, j, k in itertools.product(range(N), repeat=3):
        lhs = ad(i, a.bracket_basis(j, k))
        first: dict = {}
        for m, c in a.bracket_basis(i, j).items():
            for o, d in a.bracket_basis(m, k).items():
                v = first.get(o, 0) + c * d
                if v:
                    first[o] = v
                else:
                    first.pop(o, None)
        s = -1 if hat[i] * hat[j] % 2 else 1
        second = ad(j, a.bracket_basis(i, k))
        res = dict(lhs)
        for src, sgn in ((first, 1), (second, s)):
            for o, c in src.items():
                v = res.get(o, 0) - sgn * c
                if v:
                    res[o] = v
                else:
                    res.pop(o, None)
        if res:
            count += 1
            if len(failures) < cap:
                failures.append(Failure({"i": i, "j": j, "k": k}, res))
    reports.append(AxiomReport("superalgebra.super_jacobi", 0, N**3, count, failures))
    return VerifyReport("superalgebra", reports)


def g0_equivariance_report(a: PolarizedSuperalgebra, cap: int = FAILURE_CAP) -> AxiomReport:
    """Generators D act as bracket derivations:
    D [x,y]_u = [Dx, y]_u + (-1)^(pD px)[x, y]_{Du}
              + (-1)^(pD (px+pu))[x, Dy]_u  (hat parities)."""
    pair = a.pair
    d1, d2 = pair.v1.dim, pair.v2.dim
    hat1 = [(p + 1) % 2 for p in pair.v1.parities]
    hat2 = [(p + 1) % 2 for p in pair.v2.parities]
    gens = [
        (idx, rec) for idx, rec in enumerate(a.g0_recipes) if rec[0] == "gen"
    ]
    unit1 = [tuple(Fraction(int(i == k)) for i in range(d1)) for k in range(d1)]
    unit2 = [tuple(Fraction(int(i == k)) for i in range(d2)) for k in range(d2)]
    failures, count = [], 0
    total = len(gens) * d2 * d1 * d1
    for gidx, rec in gens:
        P, Q = a.g0_ops[gidx]
        pD = a.parities[gidx]
        for u, x, y in itertools.product(range(d2), range(d1), range(d1)):
            lhs = P.apply(pair.bracket(1, unit2[u], unit1[x], unit1[y]))
            t1 = pair.bracket(1, unit2[u], P.apply(unit1[x]), unit1[y])
            s2 = -1 if (pD * hat1[x]) % 2 else 1
            t2 = pair.bracket(1, Q.apply(unit2[u]), unit1[x], unit1[y])
            s3 = -1 if (pD * (hat1[x] + hat2[u])) % 2 else 1
            t3 = pair.bracket(1, unit2[u], unit1[x], P.apply(unit1[y]))
            res = {
                o: lhs[o] - t1[o] - s2 * t2[o] - s3 * t3[o] for o in range(d1)
            }
            res = {o: v for o, v in res.items() if v}
            if res:
                count += 1
                if len(failures) < cap:
                    failures.append(Failure({"D": gidx, "U": u, "X": x, "Y": y}, res))
    return AxiomReport("g0_equivariance", 0, total, count, failures)


def scan_sigma_conventions(pairs: Sequence[PairStructure]) -> list:
    """All sigma conventions for which every given pair's superalgebra
    passes check_superalgebra; used once to pin PINNED_SIGMA."""
    passing = []
    for sigma in all_sigma_conventions():
        ok = True
        for pair in pairs:
            alg = superalgebra_from_pair(pair, sigma=sigma, verified=True)
            if not check_superalgebra(alg).passed:
                ok = False
                break
        if ok:
            passing.append(sigma)
    return passing


# ---------------------------------------------------------------------------
# polarized super triple systems (Theorem 2A)


@dataclass
class PolarizedLTS:
    """Triple system on V = V1 + V2 with the documented graded axioms."""

    space: SuperSpace
    split: int  # first `split` coordinates form the V1 summand
    tensor: dict  # (i, j, k) -> {out: Fraction}

    @property
    def dim(self) -> int:
        return self.space.dim

    def product_basis(self, i: int, j: int, k: int) -> dict:
        return self.tensor.get((i, j, k), {})

    def summand(self, idx: int) -> int:
        return 1 if idx < self.split else 2


def lts_from_pair(pair: PairStructure, verified: bool = False) -> PolarizedLTS:
    """Theorem-2A construction.  The super-Jordan pair is parity-flipped
    into an isotopic pair and the triple product is the double bracket
    [[a, b], c] in its polarized superalgebra; the ambient parities are
    the input pair's own parities (= the twisted parities of the flip)."""
    if pair.kind != SUPER_JORDAN:
        raise PreconditionError("lts_from_pair needs a superJordan pair")
    if not verified and not all(r.passed for r in check_super_jordan(pair)):
        raise PreconditionError("pair fails check_super_jordan")
    flip = pair.parity_flip()
    alg = superalgebra_from_pair(flip, verified=True)
    n0 = alg.g0_dim
    d1, d2 = pair.v1.dim, pair.v2.dim
    N = d1 + d2
    tensor: dict = {}
    for i, j, k in itertools.product(range(N), repeat=3):
        ai, aj, ak = n0 + i, n0 + j, n0 + k
        out: dict = {}
        for m, c in alg.bracket_basis(ai, aj).items():
            for o, d in alg.bracket_basis(m, ak).items():
                v = out.get(o, 0) + c * d
                if v:
                    out[o] = v
                else:
                    out.pop(o, None)
        out = {o - n0: c for o, c in out.items()}
        if any(o < 0 or o >= N for o in out):
            raise RuntimeError("triple product escaped g1")
        if out:
            tensor[(i, j, k)] = out
    labels = tuple(f"{l}+" for l in pair.v1.labels) + tuple(
        f"{l}-" for l in pair.v2.labels
    )
    space = SuperSpace.make(labels, list(pair.v1.parities) + list(pair.v2.parities))
    return PolarizedLTS(space, d1, tensor)


def check_lts_axioms(l: PolarizedLTS, cap: int = FAILURE_CAP) -> VerifyReport:
    """Polarization plus the documented graded triple-system axioms."""
    N = l.dim
    p = l.space.parities
    T = l.product_basis
    reports = []

    failures, count = [], 0
    for i, j, k in itertools.product(range(N), repeat=3):
        if l.summand(i) == l.summand(j) == l.summand(k):
            res = T(i, j, k)
            if res:
                count += 1
                if len(failures) < cap:
                    failures.append(Failure({"a": i, "b": j, "c": k}, dict(res)))
    reports.append(AxiomReport("lts.polarization", 0, N**3, count, failures))

    failures, count = [], 0
    for i, j, k in itertools.product(range(N), repeat=3):
        s = -1 if p[i] * p[j] % 2 else 1
        lhs = T(i, j, k)
        rhs = T(j, i, k)
        keys = set(lhs) | set(rhs)
        res = {o: lhs.get(o, 0) + s * rhs.get(o, 0) for o in keys}
        res = {o: v for o, v in res.items() if v}
        if res:
            count += 1
            if len(failures) < cap:
                failures.append(Failure({"a": i, "b": j, "c": k}, res))
    reports.append(AxiomReport("lts.antisymmetry", 0, N**3, count, failures))

    failures, count = [], 0
    for i, j, k in itertools.product(range(N), repeat=3):
        res: dict = {}
        for (a, b, c) in ((i, j, k), (j, k, i), (k, i, j)):
            s = -1 if p[a] * p[c] % 2 else 1
            for o, v in T(a, b, c).items():
                w = res.get(o, 0) + s * v
                if w:
                    res[o] = w
                else:
                    res.pop(o, None)
        if res:
            count += 1
            if len(failures) < cap:
                failures.append(Failure({"a": i, "b": j, "c": k}, res))
    reports.append(AxiomReport("lts.cyclic", 0, N**3, count, failures))

    def T_vec(i, j, vec: dict) -> dict:
        out: dict = {}
        for k, c in vec.items():
            for o, d in T(i, j, k).items():
                v = out.get(o, 0) + c * d
                if v:
                    out[o] = v
                else:
                    out.pop(o, None)
        return out

    def T_mid(i, vec: dict, e) -> dict:
        out: dict = {}
        for k, c in vec.items():
            for o, d in T(i, k, e).items():
                v = out.get(o, 0) + c * d
                if v:
                    out[o] = v
                else:
                    out.pop(o, None)
        return out

    def T_left(vec: dict, d, e) -> dict:
        out: dict = {}
        for k, c in vec.items():
            for o, w in T(k, d, e).items():
                v = out.get(o, 0) + c * w
                if v:
                    out[o] = v
                else:
                    out.pop(o, None)
        return out

    failures, count = [], 0
    total = N**5
    for a, b, c, d, e in itertools.product(range(N), repeat=5):
        lhs = T_vec(a, b, T(c, d, e))
        t1 = T_left(T(a, b, c), d, e)
        s2 = -1 if ((p[a] + p[b]) * p[c]) % 2 else 1
        t2 = T_mid(c, T(a, b, d), e)
        s3 = -1 if ((p[a] + p[b]) * (p[c] + p[d])) % 2 else 1
        t3 = T_vec(c, d, T(a, b, e))
        res = dict(lhs)
        for src, s in ((t1, 1), (t2, s2), (t3, s3)):
            for o, v in src.items():
                w = res.get(o, 0) - s * v
                if w:
                    res[o] = w
                else:
                    res.pop(o, None)
        if res:
            count += 1
            if len(failures) < cap:
                failures.append(
                    Failure({"a": a, "b": b, "c": c, "d": d, "e": e}, res)
                )
    reports.append(AxiomReport("lts.derivation", 0, total, count, failures))
    return VerifyReport("lts", reports)
