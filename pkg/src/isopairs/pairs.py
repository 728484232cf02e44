"""Structure-constant pairs and exhaustive axiom checking.

A pair is two graded spaces V1, V2 with trilinear structure tensors

    m1 : V2 x V1 x V1 -> V1   (keys (u, x, y), sparse output vectors)
    m2 : V1 x V2 x V2 -> V2   (keys (x, u, v))

All defining identities are multilinear, so checking them on homogeneous
basis tuples is exhaustive.  The checkers evaluate the adopted identity
templates from :mod:`isopairs.supercore` on every basis tuple, in both
orientations (letters X, Y, Z on the V1 side and U, V on the V2 side,
then mirrored), and report exact residual vectors.

Two evaluation backends produce identical reports: a vectorized integer
path (tensors are scaled by the lcm of their denominators; int64 is
exact within a checked magnitude bound) and a sparse rational fallback.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Sequence

import numpy as np

from .exactlin import scalar_from_str, scalar_to_str
from .supercore import (
    CATALOG,
    LETTERS,
    Bracket,
    Identity,
    Letter,
    SuperSpace,
    eval_sign_pairs,
)

ISOTOPIC = "isotopic"
SUPER_JORDAN = "superJordan"
KINDS = (ISOTOPIC, SUPER_JORDAN)

FAILURE_CAP = 25

TensorMap = dict  # (i, j, k) -> {out_index: Fraction}


class SpaceMismatch(ValueError):
    """Raised when vectors or sides do not match the pair's spaces."""


def _canon_tensor(t: TensorMap) -> TensorMap:
    out = {}
    for key, comps in t.items():
        kept = {int(i): Fraction(c) for i, c in comps.items() if c != 0}
        if kept:
            out[tuple(int(k) for k in key)] = kept
    return out


@dataclass
class PairStructure:
    """An isotopic or super-Jordan pair given by structure constants."""

    v1: SuperSpace
    v2: SuperSpace
    kind: str
    m1: TensorMap
    m2: TensorMap
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown pair kind {self.kind!r}")
        self.m1 = _canon_tensor(self.m1)
        self.m2 = _canon_tensor(self.m2)
        d1, d2 = self.v1.dim, self.v2.dim
        for (u, x, y), comps in self.m1.items():
            if not (u < d2 and x < d1 and y < d1 and all(o < d1 for o in comps)):
                raise SpaceMismatch("m1 index out of range")
        for (x, u, v), comps in self.m2.items():
            if not (x < d1 and u < d2 and v < d2 and all(o < d2 for o in comps)):
                raise SpaceMismatch("m2 index out of range")

    # -- basic operations ---------------------------------------------------

    def space(self, side: int) -> SuperSpace:
        if side == 1:
            return self.v1
        if side == 2:
            return self.v2
        raise SpaceMismatch(f"side must be 1 or 2, got {side}")

    def bracket(
        self,
        side: int,
        iso: Sequence[Fraction],
        a: Sequence[Fraction],
        b: Sequence[Fraction],
    ) -> tuple[Fraction, ...]:
        """[a, b]_iso with a, b on ``side`` and iso on the other side."""
        own, other = self.space(side), self.space(3 - side)
        if len(iso) != other.dim or len(a) != own.dim or len(b) != own.dim:
            raise SpaceMismatch("vector length does not match the pair's spaces")
        tensor = self.m1 if side == 1 else self.m2
        out = [Fraction(0)] * own.dim
        for (i, l, r), comps in tensor.items():
            c = iso[i] * a[l] * b[r]
            if c:
                for o, s in comps.items():
                    out[o] += c * s
        return tuple(out)

    def parity_flip(self) -> "PairStructure":
        """Same constants, all parities toggled, kind toggled."""
        return PairStructure(
            self.v1.flipped(),
            self.v2.flipped(),
            SUPER_JORDAN if self.kind == ISOTOPIC else ISOTOPIC,
            self.m1,
            self.m2,
        )

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        def tensor_json(t, names):
            rows = []
            for key in sorted(t):
                comps = t[key]
                row = dict(zip(names, key))
                row["out"] = [
                    {"idx": o, "c": scalar_to_str(comps[o])} for o in sorted(comps)
                ]
                rows.append(row)
            return rows

        return {
            "v1": self.v1.to_json(),
            "v2": self.v2.to_json(),
            "kind": self.kind,
            "m1": tensor_json(self.m1, ("u", "x", "y")),
            "m2": tensor_json(self.m2, ("x", "u", "v")),
        }

    @staticmethod
    def from_json(obj: dict) -> "PairStructure":
        def tensor(rows, names):
            return {
                tuple(row[n] for n in names): {
                    e["idx"]: scalar_from_str(e["c"]) for e in row["out"]
                }
                for row in rows
            }

        return PairStructure(
            SuperSpace.from_json(obj["v1"]),
            SuperSpace.from_json(obj["v2"]),
            obj["kind"],
            tensor(obj["m1"], ("u", "x", "y")),
            tensor(obj["m2"], ("x", "u", "v")),
        )

    # -- scaled integer tensors for the vectorized backend -------------------

    def _scaled_dense(self):
        if "dense" not in self._cache:
            denoms = [
                c.denominator
                for t in (self.m1, self.m2)
                for comps in t.values()
                for c in comps.values()
            ]
            scale = reduce(math.lcm, denoms, 1)
            d1, d2 = self.v1.dim, self.v2.dim
            M1 = np.zeros((d2, d1, d1, d1), dtype=np.int64)
            M2 = np.zeros((d1, d2, d2, d2), dtype=np.int64)
            for (u, x, y), comps in self.m1.items():
                for o, c in comps.items():
                    M1[u, x, y, o] = int(c * scale)
            for (x, u, v), comps in self.m2.items():
                for o, c in comps.items():
                    M2[x, u, v, o] = int(c * scale)
            self._cache["dense"] = (M1, M2, scale)
        return self._cache["dense"]


# ---------------------------------------------------------------------------
# reports


@dataclass
class Failure:
    where: dict  # letter -> basis index (or tensor key for evenness)
    residual: dict  # component index -> Fraction

    def to_json(self) -> dict:
        return {
            "tuple": dict(self.where),
            "residual": [
                {"idx": i, "c": scalar_to_str(self.residual[i])}
                for i in sorted(self.residual)
            ],
        }

    @staticmethod
    def from_json(obj: dict) -> "Failure":
        return Failure(
            dict(obj["tuple"]),
            {e["idx"]: scalar_from_str(e["c"]) for e in obj["residual"]},
        )


@dataclass
class AxiomReport:
    """Per-identity, per-basis-tuple verdicts with exact residuals."""

    identity: str
    orientation: int
    total: int
    failure_count: int
    failures: list
    adopted_form: str = "printed"

    @property
    def passed(self) -> bool:
        return self.failure_count == 0

    def to_json(self) -> dict:
        return {
            "identity": self.identity,
            "orientation": self.orientation,
            "total": self.total,
            "failure_count": self.failure_count,
            "failures": [f.to_json() for f in self.failures],
            "adopted_form": self.adopted_form,
            "passed": self.passed,
        }

    @staticmethod
    def from_json(obj: dict) -> "AxiomReport":
        return AxiomReport(
            obj["identity"],
            obj["orientation"],
            obj["total"],
            obj["failure_count"],
            [Failure.from_json(f) for f in obj["failures"]],
            obj["adopted_form"],
        )


@dataclass
class VerifyReport:
    kind: str
    reports: list

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports)

    def failing(self) -> list:
        return [r for r in self.reports if not r.passed]

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "passed": self.passed,
            "reports": [r.to_json() for r in self.reports],
        }

    @staticmethod
    def from_json(obj: dict) -> "VerifyReport":
        return VerifyReport(obj["kind"], [AxiomReport.from_json(r) for r in obj["reports"]])


def _adopted_form_id(ident: Identity) -> str:
    return "printed" if ident.correction is None else f"corrected: {ident.correction}"


# ---------------------------------------------------------------------------
# template evaluation over structure constants

_AXIS = {"X": "x", "Y": "y", "Z": "z", "U": "u", "V": "v"}
_INTERNAL_AXES = "abcdefg"


def _orient(sides: dict, orientation: int) -> dict:
    if orientation == 1:
        return dict(sides)
    return {l: 3 - s for l, s in sides.items()}


def _value_side(expr, sides: dict) -> int:
    while isinstance(expr, Bracket):
        expr = expr.left
    if not isinstance(expr, Letter):
        raise TypeError("pair checking needs bracket/letter expressions")
    return sides[expr.name]


def _term_degree(expr) -> int:
    if isinstance(expr, Letter):
        return 0
    if not isinstance(expr, Bracket):
        raise TypeError("pair checking needs bracket/letter expressions")
    return 1 + _term_degree(expr.left) + _term_degree(expr.right) + _term_degree(expr.iso)


def _einsum_plan(expr, sides: dict):
    """Compile a bracket tree into einsum operands over the m-tensors.

    Returns (subscripts, tensor_names, root_axis); each bracket node
    becomes one operand M[iso, left, right, out].
    """
    subs: list[str] = []
    ops: list[str] = []
    pool = iter(_INTERNAL_AXES)

    def walk(e) -> str:
        if isinstance(e, Letter):
            return _AXIS[e.name]
        li = walk(e.left)
        ri = walk(e.right)
        ii = walk(e.iso)
        out = next(pool)
        side = _value_side(e.left, sides)
        subs.append(ii + li + ri + out)
        ops.append("m1" if side == 1 else "m2")
        return out

    root = walk(expr)
    return subs, ops, root


def _parity_bits(pair: PairStructure, side: int) -> np.ndarray:
    return np.array(pair.space(side).parities, dtype=np.int64)


def _sign_block(pair, term, sides, rest_letters, x_letter, x_index):
    """Sign table (+-1 int64 array over the free-letter axes) for one term
    with the blocked letter fixed."""
    dims = [pair.space(sides[l]).dim for l in rest_letters]
    E = np.zeros(dims, dtype=np.int64)
    axis_of = {l: i for i, l in enumerate(rest_letters)}

    def bits(letter):
        b = _parity_bits(pair, sides[letter])
        if letter == x_letter:
            return int(b[x_index])
        shape = [1] * len(rest_letters)
        shape[axis_of[letter]] = len(b)
        return b.reshape(shape)

    for pq in term.sign_pairs:
        p, q = tuple(pq)
        E = E + bits(p) * bits(q)
    return 1 - 2 * (E & 1)


def _int_coeffs(ident: Identity):
    terms = ident.residual_terms()
    cs = reduce(math.lcm, (t.coeff.denominator for t in terms), 1)
    return terms, cs, [int(t.coeff * cs) for t in terms]


def _eval_identity_fast(pair, ident, orientation, cap, x_range=None):
    sides = _orient(ident.sides, orientation)
    letters = tuple(sorted(sides, key=LETTERS.index))
    assert letters[0] == "X"
    dims = {l: pair.space(sides[l]).dim for l in letters}
    nx = dims["X"] if x_range is None else x_range[1] - x_range[0]
    total = nx * math.prod(dims[l] for l in letters[1:])
    terms, coeff_scale, coeffs = _int_coeffs(ident)
    degrees = {_term_degree(t.expr) for t in terms}
    assert len(degrees) == 1, "identity terms must have uniform bracket degree"
    degree = degrees.pop()
    out_side = _value_side(terms[0].expr, sides)
    M1, M2, scale = pair._scaled_dense()
    arrays = {"m1": M1, "m2": M2}
    denom = Fraction(coeff_scale * scale**degree)

    # overflow guard: max |entry| of a term block is bounded by
    # max|M|^degree times the contracted volume
    maxm = max(int(abs(M1).max(initial=0)), int(abs(M2).max(initial=0)), 1)
    bound = sum(abs(c) for c in coeffs) * maxm**degree * max(
        pair.v1.dim, pair.v2.dim, 1
    ) ** (2 * degree)
    if bound >= 2**62:
        return _eval_identity_exact(pair, ident, orientation, cap, x_range)

    rest = letters[1:]
    out_axes = "".join(_AXIS[l] for l in rest)
    plans = [_einsum_plan(t.expr, sides) for t in terms]
    failures: list[Failure] = []
    count = 0
    xs = range(dims["X"]) if x_range is None else range(*x_range)
    for xi in xs:
        R = None
        memo: dict = {}
        for t, c, (subs, ops, root) in zip(terms, coeffs, plans):
            key = (t.expr, root)
            if key not in memo:
                operands = []
                new_subs = []
                for s, name in zip(subs, ops):
                    arr = arrays[name]
                    if "x" in s:
                        pos = s.index("x")
                        idx = [slice(None)] * 4
                        idx[pos] = xi
                        arr = arr[tuple(idx)]
                        s = s.replace("x", "")
                    operands.append(arr)
                    new_subs.append(s)
                expr = ",".join(new_subs) + "->" + out_axes + root
                memo[key] = np.einsum(expr, *operands, optimize=True)
            block = memo[key]
            S = _sign_block(pair, t, sides, rest, "X", xi)
            contrib = (c * S)[..., None] * block
            R = contrib if R is None else R + contrib
        mask = np.any(R != 0, axis=-1)
        if not mask.any():
            continue
        idxs = np.argwhere(mask)
        count += len(idxs)
        for idx in idxs:
            if len(failures) >= cap:
                break
            where = {"X": xi, **{l: int(i) for l, i in zip(rest, idx)}}
            vecr = R[tuple(idx)]
            residual = {
                int(o): Fraction(int(vecr[o])) / denom
                for o in np.nonzero(vecr)[0]
            }
            failures.append(Failure(where, residual))
    return AxiomReport(
        ident.name, orientation, total, count, failures, _adopted_form_id(ident)
    )


def _eval_expr_sparse(expr, env: dict, pair: PairStructure, sides: dict):
    """Evaluate a bracket tree to a sparse vector; env maps letters to
    sparse coordinate dicts on their side."""
    if isinstance(expr, Letter):
        return env[expr.name]
    L = _eval_expr_sparse(expr.left, env, pair, sides)
    R = _eval_expr_sparse(expr.right, env, pair, sides)
    I = _eval_expr_sparse(expr.iso, env, pair, sides)
    tensor = pair.m1 if _value_side(expr.left, sides) == 1 else pair.m2
    out: dict = {}
    for i, ci in I.items():
        for l, cl in L.items():
            cil = ci * cl
            for r, cr in R.items():
                comps = tensor.get((i, l, r))
                if comps:
                    c = cil * cr
                    for o, s in comps.items():
                        v = out.get(o, 0) + c * s
                        if v:
                            out[o] = v
                        elif o in out:
                            del out[o]
    return out


def residual_on_vectors(
    pair: PairStructure, ident: Identity, orientation: int, vectors: dict, parities: dict
) -> dict:
    """Exact identity residual on arbitrary homogeneous vectors.

    ``vectors`` maps letters to coordinate sequences on their side and
    ``parities`` to the parity bit of each (homogeneous) vector.
    """
    sides = _orient(ident.sides, orientation)
    env = {
        l: {i: Fraction(c) for i, c in enumerate(v) if c} for l, v in vectors.items()
    }
    residual: dict = {}
    for t in ident.residual_terms():
        c = t.coeff * eval_sign_pairs(t.sign_pairs, parities)
        for o, s in _eval_expr_sparse(t.expr, env, pair, sides).items():
            v = residual.get(o, 0) + c * s
            if v:
                residual[o] = v
            elif o in residual:
                del residual[o]
    return residual


def _eval_identity_exact(pair, ident, orientation, cap, x_range=None):
    sides = _orient(ident.sides, orientation)
    letters = tuple(sorted(sides, key=LETTERS.index))
    dims = {l: pair.space(sides[l]).dim for l in letters}
    nx = dims["X"] if x_range is None else x_range[1] - x_range[0]
    total = nx * math.prod(dims[l] for l in letters[1:])
    terms = ident.residual_terms()
    failures: list[Failure] = []
    count = 0
    xs = range(dims["X"]) if x_range is None else range(*x_range)
    rest = letters[1:]
    for xi in xs:
        for combo in itertools.product(*(range(dims[l]) for l in rest)):
            assignment = {"X": xi, **dict(zip(rest, combo))}
            parities = {
                l: pair.space(sides[l]).parities[i] for l, i in assignment.items()
            }
            env = {l: {i: Fraction(1)} for l, i in assignment.items()}
            residual: dict = {}
            for t in terms:
                c = t.coeff * eval_sign_pairs(t.sign_pairs, parities)
                for o, s in _eval_expr_sparse(t.expr, env, pair, sides).items():
                    v = residual.get(o, 0) + c * s
                    if v:
                        residual[o] = v
                    elif o in residual:
                        del residual[o]
            if residual:
                count += 1
                if len(failures) < cap:
                    failures.append(Failure(dict(assignment), residual))
    return AxiomReport(
        ident.name, orientation, total, count, failures, _adopted_form_id(ident)
    )


def _eval_identity(pair, ident, orientation, cap=FAILURE_CAP, jobs=1, exact=False):
    if any(
        pair.space(s).dim == 0 for s in _orient(ident.sides, orientation).values()
    ):
        return AxiomReport(ident.name, orientation, 0, 0, [], _adopted_form_id(ident))
    if jobs and jobs > 1:
        return _eval_identity_parallel(pair, ident, orientation, cap, jobs, exact)
    fn = _eval_identity_exact if exact else _eval_identity_fast
    return fn(pair, ident, orientation, cap)


def _parallel_worker(args):
    pair_json, name, orientation, cap, exact, lo, hi = args
    pair = PairStructure.from_json(pair_json)
    ident = CATALOG[name]
    fn = _eval_identity_exact if exact else _eval_identity_fast
    return fn(pair, ident, orientation, cap, x_range=(lo, hi)).to_json()


def _eval_identity_parallel(pair, ident, orientation, cap, jobs, exact):
    from concurrent.futures import ProcessPoolExecutor

    sides = _orient(ident.sides, orientation)
    dx = pair.space(sides["X"]).dim
    jobs = min(jobs, dx) or 1
    bounds = [(i * dx // jobs, (i + 1) * dx // jobs) for i in range(jobs)]
    pj = pair.to_json()
    tasks = [(pj, ident.name, orientation, cap, exact, lo, hi) for lo, hi in bounds]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        parts = [AxiomReport.from_json(r) for r in pool.map(_parallel_worker, tasks)]
    failures = [f for p in parts for f in p.failures][:cap]
    return AxiomReport(
        ident.name,
        orientation,
        sum(p.total for p in parts),
        sum(p.failure_count for p in parts),
        failures,
        _adopted_form_id(ident),
    )


# ---------------------------------------------------------------------------
# checkers


def check_evenness(pair: PairStructure, cap: int = FAILURE_CAP) -> list:
    """Parity of every nonzero component must equal the sum of the input
    parities; one report per tensor."""
    reports = []
    specs = [
        ("evenness[m1]", pair.m1, (pair.v2, pair.v1, pair.v1), pair.v1, ("u", "x", "y")),
        ("evenness[m2]", pair.m2, (pair.v1, pair.v2, pair.v2), pair.v2, ("x", "u", "v")),
    ]
    for name, tensor, in_spaces, out_space, names in specs:
        total = math.prod(s.dim for s in in_spaces)
        failures = []
        count = 0
        for key in sorted(tensor):
            expected = sum(s.parities[i] for s, i in zip(in_spaces, key)) % 2
            bad = {
                o: c
                for o, c in tensor[key].items()
                if out_space.parities[o] != expected
            }
            if bad:
                count += 1
                if len(failures) < cap:
                    failures.append(Failure(dict(zip(names, key)), bad))
        reports.append(AxiomReport(name, 0, total, count, failures, "printed"))
    return reports


def _kind_symmetry(pair: PairStructure) -> Identity:
    return CATALOG[
        "antisymmetry.isotopic" if pair.kind == ISOTOPIC else "symmetry.superJordan"
    ]


def check_symmetry(pair: PairStructure, cap: int = FAILURE_CAP, jobs: int = 1) -> list:
    """Graded (anti)symmetry of both tensors, per the pair's kind."""
    ident = _kind_symmetry(pair)
    return [
        _eval_identity(pair, ident, orientation, cap, jobs)
        for orientation in (1, 2)
    ]


def check_jacobi_analog(
    pair: PairStructure, cap: int = FAILURE_CAP, jobs: int = 1
) -> list:
    if pair.kind != ISOTOPIC:
        raise ValueError("jacobi analog applies to isotopic pairs")
    ident = CATALOG["jacobi_analog"]
    return [_eval_identity(pair, ident, o, cap, jobs) for o in (1, 2)]


def check_compatibility(
    pair: PairStructure, cap: int = FAILURE_CAP, jobs: int = 1
) -> list:
    if pair.kind != ISOTOPIC:
        raise ValueError("compatibility applies to isotopic pairs")
    ident = CATALOG["compatibility"]
    return [_eval_identity(pair, ident, o, cap, jobs) for o in (1, 2)]


def check_super_jordan(
    pair: PairStructure, cap: int = FAILURE_CAP, jobs: int = 1
) -> list:
    if pair.kind != SUPER_JORDAN:
        raise ValueError("the super-Jordan identity applies to superJordan pairs")
    ident = CATALOG["super_jordan"]
    return [_eval_identity(pair, ident, o, cap, jobs) for o in (1, 2)]


def verify(pair: PairStructure, cap: int = FAILURE_CAP, jobs: int = 1) -> VerifyReport:
    """Evenness, graded (anti)symmetry, and the kind-appropriate identity
    suite, both orientations, aggregated."""
    reports = check_evenness(pair, cap)
    reports += check_symmetry(pair, cap, jobs)
    if pair.kind == ISOTOPIC:
        reports += check_jacobi_analog(pair, cap, jobs)
        reports += check_compatibility(pair, cap, jobs)
    else:
        reports += check_super_jordan(pair, cap, jobs)
    return VerifyReport(pair.kind, reports)
