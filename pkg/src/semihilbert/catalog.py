"""Machine-checkable catalog of A-numerical radius identities and bounds.

Each case maps an operand bundle to one or more comparisons ("parts"). An
inequality part ``lhs <= rhs`` is *certified* when it holds after widening
both sides by their propagated error half-widths; an equality part passes
when ``|lhs - rhs| <= EQ_RTOL * max(1, |rhs|)``.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np

from . import structure as st
from .block import BlockOperator, block_sharp_check, lift_weight
from .errors import InvalidConfig, SkippedHypothesis, WeightMismatch
from .linalg import sym2x2_nonneg_norm
from .radii import a_numerical_radius, a_spectral_radius, op_seminorm, theta_sup_product

EQ_RTOL = 1e-7
CERT_RTOL = 1e-10
NEAR_TIGHT = 1e-3
ALPHAS = (0.0, 0.25, 0.5, 1.0)
POWER_SWEEP = tuple((k, n) for k in (1, 2, 3) for n in (1, 2))
SUM_CAP = 2.0


class Q:
    """A value with an absolute error half-width, propagated conservatively."""

    __slots__ = ("v", "e")

    def __init__(self, v, e=0.0):
        self.v = float(v)
        self.e = float(e)

    @staticmethod
    def of(x) -> "Q":
        return x if isinstance(x, Q) else Q(x)

    @classmethod
    def radius(cls, r) -> "Q":
        return cls(r.value, r.error_halfwidth)

    def __add__(self, o):
        o = Q.of(o)
        return Q(self.v + o.v, self.e + o.e)

    __radd__ = __add__

    def __sub__(self, o):
        o = Q.of(o)
        return Q(self.v - o.v, self.e + o.e)

    def __rsub__(self, o):
        return Q.of(o) - self

    def __mul__(self, o):
        o = Q.of(o)
        return Q(self.v * o.v, abs(self.v) * o.e + abs(o.v) * self.e + self.e * o.e)

    __rmul__ = __mul__

    def __truediv__(self, c: float):
        return Q(self.v / c, self.e / abs(c))

    def __pow__(self, p: int):
        a = abs(self.v)
        return Q(self.v**p, (a + self.e) ** p - a**p)

    def sqrt(self) -> "Q":
        v = max(self.v, 0.0)
        hi = math.sqrt(v + self.e) - math.sqrt(v)
        lo = math.sqrt(v) - math.sqrt(max(v - self.e, 0.0))
        return Q(math.sqrt(v), max(hi, lo))

    def __repr__(self):
        return f"Q({self.v!r} +- {self.e:.2e})"


def qmax(*qs: Q) -> Q:
    return Q(max(q.v for q in qs), max(q.e for q in qs))


@dataclass
class Operands:
    weight: st.Weight
    operators: dict = field(default_factory=dict)
    vectors: dict = field(default_factory=dict)
    digest: str = ""


@dataclass
class BoundReport:
    case: str
    label: str
    kind: str
    lhs: float
    rhs: float
    lhs_err: float
    rhs_err: float
    slack: float
    rel_slack: float
    certified: bool
    operand_digest: str = ""

    @property
    def ratio(self) -> float:
        if self.rhs == 0.0:
            return 1.0 if self.lhs == 0.0 else math.inf
        return self.lhs / self.rhs

    @property
    def residual(self) -> float:
        return abs(self.lhs - self.rhs) / max(1.0, abs(self.rhs))

    def to_dict(self) -> dict:
        return asdict(self)


def _report(case, label, kind, lhs: Q, rhs: Q, digest) -> BoundReport:
    slack = rhs.v - lhs.v
    if kind == "eq":
        ok = abs(slack) <= EQ_RTOL * max(1.0, abs(rhs.v))
    else:
        ok = lhs.v - lhs.e <= rhs.v + rhs.e + CERT_RTOL * max(1.0, abs(rhs.v))
    return BoundReport(
        case, label, kind, lhs.v, rhs.v, lhs.e, rhs.e, slack,
        slack / max(1.0, rhs.v), bool(ok), digest,
    )


class _Ctx:
    """Per-evaluation helpers bound to one weight."""

    def __init__(self, w: st.Weight):
        self.w = w
        self.I = np.eye(w.n, dtype=np.complex128)
        self._lifted = None

    @property
    def lifted(self) -> st.Weight:
        if self._lifted is None:
            self._lifted = lift_weight(self.w)
        return self._lifted

    def sh(self, M):
        return st.sharp(self.w, M)

    def nrm(self, M) -> Q:
        return Q.radius(op_seminorm(st.bind(self.w, M)))

    def om(self, M, algo="compression") -> Q:
        return Q.radius(a_numerical_radius(st.bind(self.w, M), algo))

    def rad(self, M) -> Q:
        return Q.radius(a_spectral_radius(st.bind(self.w, M)))

    def om2(self, b: BlockOperator) -> Q:
        return Q.radius(a_numerical_radius(st.bind(self.lifted, b.matrix())))

    def nrm2(self, b: BlockOperator) -> Q:
        return Q.radius(op_seminorm(st.bind(self.lifted, b.matrix())))

    def inner(self, x, y) -> complex:
        return st.semi_inner(self.w, x, y)

    def vnorm(self, x) -> float:
        return st.vec_seminorm(self.w, x)


# -- case evaluators: (ctx, ops, vecs) -> [(label, kind, lhs, rhs), ...] ----


def _c01(c, o, v):
    T = o["T"]
    n, w = c.nrm(T), c.om(T)
    return [("lower", "le", 0.5 * n, w), ("upper", "le", w, n)]


def _c02(c, o, v):
    T = o["T"]
    Ts = c.sh(T)
    n2 = c.nrm(T) ** 2
    return [
        ("sharpT.T", "eq", c.nrm(Ts @ T), n2),
        ("T.sharpT", "eq", c.nrm(T @ Ts), n2),
        ("sharpT", "eq", c.nrm(Ts) ** 2, n2),
    ]


def _c03(c, o, v):
    T = o["T"]
    n = c.nrm(T)
    return [("omega", "eq", c.om(T), n), ("spectral", "eq", c.rad(T), n)]


def _c04_terms(c, T, S):
    TS, STs = T @ S, S @ c.sh(T)
    nT, wS = c.nrm(T), c.om(S)
    return c.om(TS), nT * wS, {"+": c.om(TS + STs), "-": c.om(TS - STs)}


def _c04(c, o, v):
    lhs, base, mixed = _c04_terms(c, o["T"], o["S"])
    return [(sgn, "le", lhs, base + 0.5 * m) for sgn, m in mixed.items()]


def _c05(c, o, v):
    _, base, mixed = _c04_terms(c, o["T"], o["S"])
    out = []
    for sgn, m in mixed.items():
        out.append((sgn, "le", m, 2 * base))
        out.append(("c04-rhs" + sgn, "le", base + 0.5 * m, 2 * base))
    return out


def _c06(c, o, v):
    T, S = o["T"], o["S"]
    rhs = 0.5 * c.om(S @ T) + 0.25 * (c.nrm(T) * c.nrm(S) + c.nrm(T @ S))
    return [("bound", "le", c.om(T @ S), rhs)]


def _c07(c, o, v):
    T, S = o["T"], o["S"]
    rhs = 0.5 * c.om(S @ T) + 0.25 * c.nrm(S @ c.sh(S) + c.sh(T) @ T)
    return [("bound", "le", c.om(T @ S), rhs)]


def _c08(c, o, v):
    T, S = o["T"], o["S"]
    rhs = 0.5 * (c.om(S @ T) + c.nrm(T) * c.nrm(S))
    return [("bound", "le", c.om(T @ S), rhs)]


def _c09(c, o, v):
    T, S = o["T"], o["S"]
    rhs = c.nrm(T) * c.om(S)
    return [("TS", "le", c.om(T @ S), rhs), ("ST", "le", c.om(S @ T), rhs)]


def _c10(c, o, v):
    T = o["T"]
    nT = c.nrm(T)
    return [
        (f"alpha={a:g}", "eq", c.nrm(T - a * nT.v * c.I), (1.0 - a) * nT)
        for a in ALPHAS
    ]


def _c11(c, o, v):
    x, y, z = v["x"], v["y"], v["z"]
    lhs = abs(c.inner(x, y)) ** 2 + abs(c.inner(x, z)) ** 2
    rhs = c.vnorm(x) ** 2 * (max(c.vnorm(y) ** 2, c.vnorm(z) ** 2) + abs(c.inner(y, z)))
    return [("bound", "le", Q(lhs), Q(rhs))]


def _c12(c, o, v):
    T, S = o["T"], o["S"]
    TTs, SSs = T @ c.sh(T), S @ c.sh(S)
    inner = (
        0.5 * (c.nrm(TTs + SSs) + c.nrm(TTs - SSs))
        + c.om(S @ c.sh(T))
        + 2 * c.om(T) * c.om(S)
    )
    return [("bound", "le", c.om(T + S), inner.sqrt())]


def _c13(c, o, v):
    T1, T2, S1, S2 = o["T1"], o["T2"], o["S1"], o["S2"]
    a, b = c.nrm(S1 @ T1), c.nrm(S2 @ T2)
    g = (c.nrm(S1 @ T2) * c.nrm(S2 @ T1)).sqrt()
    val = sym2x2_nonneg_norm(a.v, b.v, g.v)
    hi = sym2x2_nonneg_norm(a.v + a.e, b.v + b.e, g.v + g.e)
    lo = sym2x2_nonneg_norm(max(a.v - a.e, 0), max(b.v - b.e, 0), max(g.v - g.e, 0))
    rhs = Q(val, max(hi - val, val - lo))
    return [("bound", "le", c.rad(T1 @ S1 + T2 @ S2), rhs)]


def _c14(c, o, v):
    T, S = o["T"], o["S"]
    wT, wS = c.om(T), c.om(S)
    sup = Q.radius(theta_sup_product(st.bind(c.w, T), st.bind(c.w, S)))
    mid = 0.5 * (wT + wS + ((wT - wS) ** 2 + 4 * sup).sqrt())
    return [("refined", "le", c.om(T + S), mid), ("chain", "le", mid, wT + wS)]


def _c15(c, o, v):
    x, y, e = v["x"], v["y"], v["e"]
    lhs = abs(c.inner(x, e) * c.inner(e, y))
    rhs = 0.5 * (abs(c.inner(x, y)) + c.vnorm(x) * c.vnorm(y))
    return [("buzano", "le", Q(lhs), Q(rhs))]


def _c16(c, o, v):
    T, S = o["T"], o["S"]
    inner = c.om(T) ** 2 + c.om(S) ** 2 + 0.5 * c.nrm(c.sh(T) @ T + S @ c.sh(S)) + c.om(S @ T)
    return [("bound", "le", c.om(T + S), inner.sqrt())]


def _c17(c, o, v):
    T = o["T"]
    Ts = c.sh(T)
    mid = 0.5 * (c.nrm(T @ Ts + Ts @ T) + 2 * c.om(T @ T)).sqrt()
    outer = (math.sqrt(2) / 2) * c.nrm(Ts @ T + T @ Ts).sqrt()
    return [("first", "le", c.om(T), mid), ("chain", "le", mid, outer)]


def _c18(c, o, v):
    T, S = o["T"], o["S"]
    mid = (c.om(T + 1j * S) ** 2 + c.om(S @ T) + c.nrm(T) * c.nrm(S)).sqrt()
    return [("first", "le", c.om(T + S), mid), ("chain", "le", mid, c.om(T) + c.om(S))]


def _sum_family(c, o):
    Ss = [o["S1"], o["S2"], o["S3"]]
    mp = np.linalg.matrix_power
    B = [c.sh(S) @ S for S in Ss]
    C = [S @ c.sh(S) for S in Ss]
    sums = {k: c.om(sum(Ss[:k])) for k in (1, 2, 3)}
    return Ss, B, C, sums, mp


def _c19(c, o, v):
    Ss, B, C, sums, mp = _sum_family(c, o)
    out = []
    for k, n in POWER_SWEEP:
        big = c.nrm(sum(mp(B[i], 2 * n) + mp(C[i], 2 * n) for i in range(k)))
        cross = sum((c.om(mp(B[i], n) @ mp(C[i], n)) for i in range(k)), Q(0.0))
        rhs = (k ** (4 * n - 1) / 4) * (big + 2 * cross)
        out.append((f"k={k},n={n}", "le", sums[k] ** (4 * n), rhs))
    return out


def _c20(c, o, v):
    S = o["S"]
    Ss = c.sh(S)
    B, C = Ss @ S, S @ Ss
    rhs = 0.25 * c.nrm(B @ B + C @ C) + 0.5 * c.om(Ss @ S @ S @ Ss)
    return [("k=1,n=1", "le", c.om(S) ** 4, rhs)]


def _c21(c, o, v):
    Ss, B, C, sums, mp = _sum_family(c, o)
    out = []
    for k, n in POWER_SWEEP:
        rhs = (k ** (2 * n - 1) / 2) * c.nrm(sum(mp(B[i], n) + mp(C[i], n) for i in range(k)))
        out.append((f"k={k},n={n}", "le", sums[k] ** (2 * n), rhs))
    return out


def _c22(c, o, v):
    Ss, B, C, sums, mp = _sum_family(c, o)
    out = []
    for k, n in POWER_SWEEP:
        tot = sum((c.om(mp(B[i], n) + 1j * mp(C[i], n)) for i in range(k)), Q(0.0))
        rhs = (k ** (2 * n - 1) / math.sqrt(2)) * tot
        out.append((f"k={k},n={n}", "le", sums[k] ** (2 * n), rhs))
    return out


def _c23(c, o, v):
    S = o["S"]
    Ss = c.sh(S)
    rhs = (1 / math.sqrt(2)) * c.om(Ss @ S + 1j * S @ Ss)
    return [("k=1,n=1", "le", c.om(S) ** 2, rhs)]


def _c24(c, o, v):
    T, S = o["T"], o["S"]
    lhs = c.om2(BlockOperator.antidiag(c.w, T, S))
    return [("half-sum", "eq", lhs, 0.5 * c.nrm(T + S))]


def _c25(c, o, v):
    T, S = o["T"], o["S"]
    wT = c.om(T)
    return [
        ("diag", "eq", c.om2(BlockOperator.diag(c.w, T, S)), qmax(wT, c.om(S))),
        ("T,T", "eq", c.om2(BlockOperator.diag(c.w, T, T)), wT),
        ("T,sharpT", "eq", c.om2(BlockOperator.diag(c.w, T, c.sh(T))), wT),
    ]


def _c26(c, o, v):
    T, S = o["T"], o["S"]
    m = qmax(c.nrm(T), c.nrm(S))
    return [
        ("antidiag", "eq", c.nrm2(BlockOperator.antidiag(c.w, T, S)), m),
        ("diag", "eq", c.nrm2(BlockOperator.diag(c.w, T, S)), m),
    ]


def _c27(c, o, v):
    b = BlockOperator(c.w, o["T"], o["S"], o["X"], o["Y"])
    return [("residual", "eq", Q(block_sharp_check(b, c.lifted)), Q(0.0))]


def _c28(c, o, v):
    T = o["T"]
    return [("cross-algorithm", "eq", c.om(T, "compression"), c.om(T, "theta_sweep"))]


def _c29(c, o, v):
    T, S = o["T"], o["S"]
    return [
        ("swap", "eq", c.rad(T @ S), c.rad(S @ T)),
        ("below-omega", "le", c.rad(T), c.om(T)),
    ]


@dataclass(frozen=True)
class CaseId:
    """One catalog entry and its operand signature."""

    id: str
    name: str
    kind: str
    operators: tuple = ()
    vectors: tuple = ()
    cap: float | None = None
    evaluator: Callable = field(default=None, repr=False, compare=False)

    @property
    def arity(self) -> dict:
        return {"operators": dict(self.operators), "vectors": dict(self.vectors)}


G, SA, PO = "general_in_BA", "a_selfadjoint", "a_positive"
FREE, UNIT = "free", "unit_a_vector"


def _case(cid, name, kind, fn, ops=(), vecs=(), cap=None):
    return CaseId(cid, name, kind, tuple(ops), tuple(vecs), cap, fn)


_CASES = [
    _case("C01", "two-sided", "le", _c01, [("T", G)]),
    _case("C02", "adjoint-products", "eq", _c02, [("T", G)]),
    _case("C03", "selfadjoint-radii", "eq", _c03, [("T", SA)]),
    _case("C04", "product-mixed", "le", _c04, [("T", G), ("S", G)]),
    _case("C05", "mixed-cap", "le", _c05, [("T", G), ("S", G)]),
    _case("C06", "swap-quarter", "le", _c06, [("T", G), ("S", G)]),
    _case("C07", "swap-gram", "le", _c07, [("T", G), ("S", G)]),
    _case("C08", "swap-half", "le", _c08, [("T", G), ("S", G)]),
    _case("C09", "positive-factor", "le", _c09, [("T", PO), ("S", G)]),
    _case("C10", "positive-shift", "eq", _c10, [("T", PO)]),
    _case("C11", "two-vector", "le", _c11, vecs=[("x", FREE), ("y", FREE), ("z", FREE)]),
    _case("C12", "sum-gram-first", "le", _c12, [("T", G), ("S", G)]),
    _case("C13", "block-spectral", "le", _c13, [("T1", G), ("T2", G), ("S1", G), ("S2", G)]),
    _case("C14", "sum-real-parts", "le", _c14, [("T", G), ("S", G)]),
    _case("C15", "buzano", "le", _c15, vecs=[("x", FREE), ("y", FREE), ("e", UNIT)]),
    _case("C16", "sum-gram-second", "le", _c16, [("T", G), ("S", G)]),
    _case("C17", "self-commutator", "le", _c17, [("T", G)]),
    _case("C18", "selfadjoint-pair", "le", _c18, [("T", SA), ("S", SA)]),
    _case("C19", "power-sum-4n", "le", _c19, [("S1", G), ("S2", G), ("S3", G)], cap=SUM_CAP),
    _case("C20", "fourth-power", "le", _c20, [("S", G)], cap=SUM_CAP),
    _case("C21", "power-sum-2n", "le", _c21, [("S1", G), ("S2", G), ("S3", G)], cap=SUM_CAP),
    _case("C22", "power-sum-imag", "le", _c22, [("S1", G), ("S2", G), ("S3", G)], cap=SUM_CAP),
    _case("C23", "square-imag", "le", _c23, [("S", G)]),
    _case("C24", "antidiag-positive", "eq", _c24, [("T", PO), ("S", PO)]),
    _case("C25", "block-diag-radius", "eq", _c25, [("T", G), ("S", G)]),
    _case("C26", "block-norms", "eq", _c26, [("T", G), ("S", G)]),
    _case("C27", "block-adjoint", "eq", _c27, [("T", G), ("S", G), ("X", G), ("Y", G)]),
    _case("C28", "real-part-sup", "eq", _c28, [("T", G)]),
    _case("C29", "spectral-swap", "le", _c29, [("T", G), ("S", G)]),
]
CASES = {c.id: c for c in _CASES}

EQUALITY_CASES = ("C02", "C03", "C10", "C24", "C25", "C26", "C27", "C28")
INEQUALITY_CASES = ("C01",) + tuple(f"C{i:02d}" for i in range(4, 10)) + tuple(
    f"C{i:02d}" for i in range(11, 24)
) + ("C29",)


def list_cases() -> list[CaseId]:
    return list(_CASES)


def get_case(case) -> CaseId:
    if isinstance(case, CaseId):
        return case
    try:
        return CASES[str(case).upper()]
    except KeyError:
        raise InvalidConfig(f"unknown case {case!r}") from None


def check_hypotheses(case: CaseId, operands: Operands) -> None:
    """Raise SkippedHypothesis unless every operand is in its declared class."""
    w = operands.weight
    for role, cls in case.operators:
        M = operands.operators.get(role)
        if M is None:
            raise SkippedHypothesis(f"{case.id}: missing operator {role}")
        if not st.in_BA(w, M).ok:
            raise SkippedHypothesis(f"{case.id}: {role} is not in B_A(H)")
        if cls in (SA, PO):
            flags = st.predicates(w, M)
            if not flags.a_selfadjoint or (cls == PO and not flags.a_positive):
                raise SkippedHypothesis(f"{case.id}: {role} is not {cls}")
    for role, cls in case.vectors:
        x = operands.vectors.get(role)
        if x is None:
            raise SkippedHypothesis(f"{case.id}: missing vector {role}")
        if cls == UNIT and abs(st.vec_seminorm(w, x) - 1.0) > 1e-10:
            raise SkippedHypothesis(f"{case.id}: {role} is not an A-unit vector")


def evaluate(case, operands: Operands) -> list[BoundReport]:
    """Evaluate every part of ``case``; one :class:`BoundReport` per part."""
    case = get_case(case)
    check_hypotheses(case, operands)
    ctx = _Ctx(operands.weight)
    parts = case.evaluator(ctx, operands.operators, operands.vectors)
    return [
        _report(case.id, label, kind, Q.of(lhs), Q.of(rhs), operands.digest)
        for label, kind, lhs, rhs in parts
    ]


# -- tightness against weaker classical bounds ------------------------------


def _base_c04(c, o):
    _, base, _ = _c04_terms(c, o["T"], o["S"])
    return 2 * base


def _base_c09(c, o):
    return 1.5 * c.nrm(o["T"]) * c.om(o["S"])


def _base_c06(c, o):
    T, S = o["T"], o["S"]
    return 0.5 * (c.om(S @ T) + c.nrm(T) * c.nrm(S))


def _base_c14(c, o):
    return c.om(o["T"]) + c.om(o["S"])


BASELINES = {
    ("C04", "classic2"): _base_c04,
    ("C09", "three_halves"): _base_c09,
    ("C06", "half_sum"): _base_c06,
    ("C14", "triangle"): _base_c14,
}


def tightness(case, baseline: str, operands: Operands) -> float:
    """Largest ratio RHS(case part) / RHS(baseline) over the case's parts.

    A value <= 1 means the case's bound is at least as sharp as the baseline
    on these operands.
    """
    case = get_case(case)
    try:
        base_fn = BASELINES[(case.id, baseline)]
    except KeyError:
        raise InvalidConfig(f"no baseline {baseline!r} for {case.id}") from None
    check_hypotheses(case, operands)
    ctx = _Ctx(operands.weight)
    parts = case.evaluator(ctx, operands.operators, operands.vectors)
    if case.id == "C14":
        parts = [p for p in parts if p[0] == "refined"]
    base = Q.of(base_fn(ctx, operands.operators)).v
    rhs = max(Q.of(p[3]).v for p in parts)
    if base == 0.0:
        return 1.0 if rhs == 0.0 else math.inf
    return rhs / base


def positive_product_family(operands: Operands, alpha: float) -> BoundReport:
    """Interpolated bound w_A(TS) <= ||T||_A ((1 - a)||S||_A + a w_A(S)).

    Diagnostic only: this family is what the proof of the positive-factor
    product bound produces before choosing ``alpha``. It is valid for
    ``alpha <= 1/2``; see :func:`evaluate` on C09/C10 for what happens beyond.
    """
    case = CASES["C09"]
    check_hypotheses(case, operands)
    c = _Ctx(operands.weight)
    T, S = operands.operators["T"], operands.operators["S"]
    rhs = c.nrm(T) * ((1.0 - alpha) * c.nrm(S) + alpha * c.om(S))
    return _report("C09", f"alpha={alpha:g}", "le", c.om(T @ S), rhs, operands.digest)


def same_weight(a: st.Weight, b: st.Weight) -> None:
    if a is not b and not np.array_equal(a.A, b.A):
        raise WeightMismatch("operands are bound to different weights")
