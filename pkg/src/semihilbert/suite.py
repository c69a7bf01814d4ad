"""Randomized suite runner, tightness comparison and extremal search.

Every trial draws its operands from its own Philox substream keyed by
``(seed, case index, dim, rank, trial)``, so results do not depend on which
cases are selected or on evaluation order.
"""
from __future__ import annotations

import csv
import io as _io
import time
from dataclasses import dataclass, field

import numpy as np

from . import catalog as cat
from . import ensembles as en
from . import structure as st
from .errors import InvalidConfig, SemiHilbertError, SkippedHypothesis
from .io import bundle_to_json
from .radii import op_seminorm

DEFAULT_DIMS = (2, 3, 4, 5, 6)
DEFAULT_TRIALS = 200
ARCHIVE_LIMIT = 25
SHARP_TOL = 1e-9
_CASE_INDEX = {c.id: i for i, c in enumerate(cat.list_cases())}


def grid_pairs(dims=DEFAULT_DIMS, ranks=None) -> list[tuple[int, int]]:
    """(dim, rank) pairs; ``ranks=None`` means every rank 1..dim."""
    pairs = []
    for d in dims:
        rs = range(1, d + 1) if ranks is None else [r for r in ranks if 1 <= r <= d]
        pairs.extend((int(d), int(r)) for r in rs)
    if not pairs:
        raise InvalidConfig("empty (dim, rank) grid")
    return pairs


def parse_range(text: str) -> list[int]:
    """'2..6' -> [2, 3, 4, 5, 6]; '1,3' -> [1, 3]; '4' -> [4]."""
    out = []
    try:
        for part in str(text).split(","):
            part = part.strip()
            if ".." in part:
                lo, hi = part.split("..")
                out.extend(range(int(lo), int(hi) + 1))
            elif part:
                out.append(int(part))
    except ValueError:
        raise InvalidConfig(f"cannot parse range {text!r}") from None
    if not out:
        raise InvalidConfig(f"empty range {text!r}")
    return out


def parse_cases(text) -> list[cat.CaseId]:
    if text is None or text == "all":
        return cat.list_cases()
    ids = [t.strip() for t in (text.split(",") if isinstance(text, str) else text)]
    cases = [cat.get_case(i) for i in ids if i]
    if not cases:
        raise InvalidConfig("empty case subset")
    return cases


def digest(seed, case_id, dim, rank, trial) -> str:
    return f"seed={seed};case={case_id};dim={dim};rank={rank};trial={trial}"


def draw_operands(case, seed: int, dim: int, rank: int, trial: int) -> cat.Operands:
    """Operands for one trial of ``case``, honoring its hypothesis classes."""
    case = cat.get_case(case)
    rng = en.substream(seed, 0, _CASE_INDEX[case.id], dim, rank, trial)
    w = en.gen_weight(dim, rank, rng)
    ops = {}
    for role, cls in case.operators:
        M = en.gen_operator_matrix(w, cls, rng)
        if case.cap is not None:
            nrm = op_seminorm(st.bind(w, M)).value
            if nrm > case.cap:
                M = M * (case.cap / nrm)
        ops[role] = M
    vecs = {}
    for role, cls in case.vectors:
        vecs[role] = en.gen_unit_a_vector(w, rng) if cls == cat.UNIT else en.gen_vector(w, rng)
    return cat.Operands(w, ops, vecs, digest(seed, case.id, dim, rank, trial))


def _bundle(ops: cat.Operands) -> dict:
    return bundle_to_json(ops.weight.A, ops.operators, ops.vectors)


@dataclass
class _PartStats:
    kind: str
    slacks: list = field(default_factory=list)
    residuals: list = field(default_factory=list)
    ratios: list = field(default_factory=list)
    violations: int = 0

    def add(self, r: cat.BoundReport):
        self.slacks.append(r.rel_slack)
        self.residuals.append(r.residual)
        self.ratios.append(r.ratio)
        self.violations += not r.certified

    def summary(self) -> dict:
        s = np.array(self.slacks)
        out = {"kind": self.kind, "trials": len(s), "violations": self.violations}
        if len(s):
            out["min_rel_slack"] = float(s.min())
            out["median_rel_slack"] = float(np.median(s))
            out["max_ratio"] = float(max(self.ratios))
            if self.kind == "eq":
                out["max_residual"] = float(max(self.residuals))
            else:
                out["near_tight"] = int(np.sum(s < cat.NEAR_TIGHT))
        return out


def run_case(case, seed: int, pairs, trials: int) -> dict:
    """Aggregate one case over every (dim, rank) pair and trial."""
    case = cat.get_case(case)
    parts: dict[str, _PartStats] = {}
    archive = []
    evaluated = skipped = violations = 0
    for dim, rank in pairs:
        for t in range(trials):
            ops = draw_operands(case, seed, dim, rank, t)
            try:
                reports = cat.evaluate(case, ops)
            except SkippedHypothesis:
                skipped += 1
                continue
            evaluated += 1
            bad = [r for r in reports if not r.certified]
            for r in reports:
                parts.setdefault(r.label, _PartStats(r.kind)).add(r)
            if bad:
                violations += 1
                if len(archive) < ARCHIVE_LIMIT:
                    archive.append({
                        "digest": ops.digest,
                        "failed": [r.to_dict() for r in bad],
                        "operands": _bundle(ops),
                    })
    summary = {k: p.summary() for k, p in parts.items()}
    ineq = [s for p in parts.values() if p.kind == "le" for s in p.slacks]
    eq = [x for p in parts.values() if p.kind == "eq" for x in p.residuals]
    out = {
        "name": case.name,
        "kind": case.kind,
        "trials": len(pairs) * trials,
        "evaluated": evaluated,
        "skipped": skipped,
        "violations": violations,
        "parts": summary,
        "archive": archive,
    }
    if ineq:
        out["min_rel_slack"] = float(min(ineq))
        out["median_rel_slack"] = float(np.median(ineq))
        out["near_tight"] = int(np.sum(np.array(ineq) < cat.NEAR_TIGHT))
    if eq:
        out["max_residual"] = float(max(eq))
    return out


def triple_sharp_experiment(seed: int, pairs, trials: int = 20) -> dict:
    """Test ((T#)#)# against T# and against T, separately for singular and
    invertible weights, and record the double-sharp residual against PTP."""
    groups = {"singular": [], "invertible": []}
    doubles = []
    for dim, rank in pairs:
        for t in range(trials):
            rng = en.substream(seed, 1, 0, dim, rank, t)
            w = en.gen_weight(dim, rank, rng)
            T = en.gen_operator_matrix(w, "general_in_BA", rng)
            s1 = st.sharp(w, T)
            s2 = st.sharp(w, s1)
            s3 = st.sharp(w, s2)
            PTP = w.proj @ T @ w.proj
            lam = w.range_eigvals
            doubles.append((
                float(np.linalg.norm(s2 - PTP) / max(1.0, np.linalg.norm(PTP))),
                float(lam.max() / lam.min()),
            ))
            groups["singular" if w.rank < dim else "invertible"].append((
                float(np.linalg.norm(s3 - s1) / max(1.0, np.linalg.norm(s1))),
                float(np.linalg.norm(s3 - T) / max(1.0, np.linalg.norm(T))),
            ))
    d = np.array(doubles)
    over = d[:, 0] > SHARP_TOL
    out = {
        "tol": SHARP_TOL,
        "double_sharp_max_residual": float(d[:, 0].max()),
        "double_sharp_over_tol": int(over.sum()),
        # condition number of A on R(A) for the worst draw; the error of a
        # double A-adjoint grows with it
        "double_sharp_worst_cond": float(d[int(d[:, 0].argmax()), 1]),
    }
    for name, rows in groups.items():
        if not rows:
            continue
        a = np.array(rows)
        out[name] = {
            "trials": len(rows),
            "equals_sharp": int(np.sum(a[:, 0] <= SHARP_TOL)),
            "equals_T": int(np.sum(a[:, 1] <= SHARP_TOL)),
            "max_residual_vs_sharp": float(a[:, 0].max()),
            "min_residual_vs_T": float(a[:, 1].min()),
        }
    groups_out = [out[k] for k in ("singular", "invertible") if k in out]
    total = sum(g["trials"] for g in groups_out)
    hits = sum(g["equals_sharp"] for g in groups_out)
    t_hits = sum(g["equals_T"] for g in groups_out)
    out["outcome"] = (
        f"triple sharp equals T-sharp in {hits}/{total} trials "
        f"and equals T in {t_hits}/{total}"
    )
    return out


def generator_soundness(seed: int, pairs, trials: int = 20) -> dict:
    """Share of generated operands passing their declared class, and share of
    plain Gaussian matrices accepted by in_BA when A is singular."""
    counts = {c: [0, 0] for c in en.OP_CLASSES}
    plain = [0, 0]
    for dim, rank in pairs:
        for t in range(trials):
            rng = en.substream(seed, 2, 0, dim, rank, t)
            w = en.gen_weight(dim, rank, rng)
            for cls in en.OP_CLASSES:
                if cls == "unit_a_vector":
                    x = en.gen_unit_a_vector(w, rng)
                    ok = abs(st.vec_seminorm(w, x) - 1.0) <= 1e-12
                else:
                    T = en.gen_operator_matrix(w, cls, rng)
                    ok = st.in_BA(w, T).ok
                    if cls != "general_in_BA":
                        p = st.predicates(w, T)
                        ok = ok and p.a_selfadjoint and (cls == "a_selfadjoint" or p.a_positive)
                counts[cls][0] += 1
                counts[cls][1] += bool(ok)
            if rank < dim:
                plain[0] += 1
                plain[1] += st.in_BA(w, en.ginibre(rng, dim)).ok
    out = {c: {"trials": n, "passed": k, "rate": k / n} for c, (n, k) in counts.items()}
    out["plain_gaussian_singular_A"] = {
        "trials": plain[0], "accepted": plain[1],
        "rate": plain[1] / plain[0] if plain[0] else 0.0,
    }
    return out


def run_suite(
    cases=None,
    dims=DEFAULT_DIMS,
    ranks=None,
    trials: int = DEFAULT_TRIALS,
    seed: int | None = None,
    extras: bool = True,
    extras_trials: int | None = None,
) -> dict:
    """Run the selected cases over the grid and return the suite report.

    The report is a plain dict; apart from ``wall_time`` it is a pure
    function of the arguments. ``extras`` adds the triple-sharp experiment
    and the generator soundness counts, each over ``extras_trials`` draws per
    grid pair (default: ``trials``).
    """
    cases = parse_cases(cases)
    if trials < 1:
        raise InvalidConfig("trials must be >= 1")
    seed = en.default_seed() if seed is None else int(seed)
    pairs = grid_pairs(dims, ranks)
    t0 = time.perf_counter()
    per_case_time = {}
    results = {}
    for case in cases:
        t1 = time.perf_counter()
        results[case.id] = run_case(case, seed, pairs, trials)
        per_case_time[case.id] = time.perf_counter() - t1
    report = {
        "config": {
            "seed": seed,
            "dims": sorted({d for d, _ in pairs}),
            "pairs": [list(p) for p in pairs],
            "trials": trials,
            "cases": [c.id for c in cases],
        },
        "cases": results,
        "violations": sum(r["violations"] for r in results.values()),
        "skipped": sum(r["skipped"] for r in results.values()),
    }
    if extras:
        extras_trials = trials if extras_trials is None else extras_trials
        report["triple_sharp"] = triple_sharp_experiment(seed, pairs, extras_trials)
        report["generator_soundness"] = generator_soundness(seed, pairs, extras_trials)
    report["wall_time"] = {"total": time.perf_counter() - t0, "per_case": per_case_time}
    return report


CSV_FIELDS = (
    "case", "part", "kind", "trials", "violations",
    "min_rel_slack", "median_rel_slack", "near_tight", "max_residual", "max_ratio",
)


def report_to_csv(report: dict) -> str:
    """One row per (case, part)."""
    buf = _io.StringIO()
    wr = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    wr.writeheader()
    for cid, res in report["cases"].items():
        for label, p in res["parts"].items():
            wr.writerow({"case": cid, "part": label, **{k: p.get(k, "") for k in CSV_FIELDS[2:]}})
    return buf.getvalue()


# -- tightness comparison ---------------------------------------------------


def compare(case, baseline: str, dims=DEFAULT_DIMS, ranks=None, trials: int = DEFAULT_TRIALS,
            seed: int | None = None, tol: float = 1e-9) -> dict:
    """Distribution of RHS(case)/RHS(baseline) over the suite's operands."""
    case = cat.get_case(case)
    seed = en.default_seed() if seed is None else int(seed)
    ratios = []
    skipped = 0
    for dim, rank in grid_pairs(dims, ranks):
        for t in range(trials):
            ops = draw_operands(case, seed, dim, rank, t)
            try:
                ratios.append(cat.tightness(case, baseline, ops))
            except SkippedHypothesis:
                skipped += 1
    r = np.array(ratios)
    return {
        "case": case.id,
        "baseline": baseline,
        "seed": seed,
        "trials": len(r),
        "skipped": skipped,
        "min": float(r.min()),
        "median": float(np.median(r)),
        "max": float(r.max()),
        "exceed": int(np.sum(r > 1 + tol)),
    }


# -- extremal search --------------------------------------------------------


@dataclass
class SearchResult:
    case: str
    label: str
    ratio: float
    iterations: int
    restarts: int
    report: dict
    witness: dict


def _split_target(target) -> tuple[cat.CaseId, str | None]:
    text = target.id if isinstance(target, cat.CaseId) else str(target)
    cid, _, label = text.partition("-")
    return cat.get_case(cid), (label or None)


def _score(case, ops, label):
    reports = cat.evaluate(case, ops)
    pool = [r for r in reports if label is None or r.label == label]
    if not pool:
        raise InvalidConfig(f"{case.id} has no part {label!r}")
    best = max(pool, key=lambda r: r.ratio)
    return best.ratio, best


def _project(w, case, ops: dict) -> dict:
    out = {}
    for role, cls in case.operators:
        out[role] = en.project_to_class(w, ops[role], cls)
    scale = max(float(np.linalg.norm(M)) for M in out.values())
    if scale > 0:
        out = {k: M / scale for k, M in out.items()}
    return out


def _vectors(w, case, vecs: dict) -> dict:
    out = {}
    for role, cls in case.vectors:
        x = vecs[role]
        if cls == cat.UNIT:
            x = w.proj @ x
            x = x / st.vec_seminorm(w, x)
        out[role] = x
    return out


def search_extremal(target, dim: int = 2, rank: int | None = None, iters: int = 5000,
                    seed: int | None = None, restart_every: int = 500) -> SearchResult:
    """Random-restart hill climb maximizing lhs/rhs of a case part.

    ``target`` is a case id such as ``"C06"`` or a case part such as
    ``"C01-upper"``. Each step perturbs every operand with a Gaussian step,
    re-projects onto the hypothesis class and rescales jointly (all catalog
    parts are jointly homogeneous). The step grows on success and shrinks on
    failure; a restart draws a fresh weight and operands.
    """
    case, label = _split_target(target)
    rank = dim if rank is None else rank
    seed = en.default_seed() if seed is None else int(seed)
    rng = en.substream(seed, 3, _CASE_INDEX[case.id], dim, rank)
    best = (-np.inf, None, None)
    it = restarts = 0
    while it < iters:
        restarts += 1
        start = draw_operands(case, int(rng.integers(2**62)), dim, rank, 0)
        w = start.weight
        ops = _project(w, case, start.operators) if case.operators else {}
        vecs = _vectors(w, case, start.vectors)
        cur = cat.Operands(w, ops, vecs, start.digest)
        try:
            score, rep = _score(case, cur, label)
        except InvalidConfig:
            raise
        except SemiHilbertError:
            it += 1
            continue
        step = 0.3
        local = 0
        while it < iters and local < restart_every and step > 1e-9:
            it += 1
            local += 1
            try:
                new_ops = _project(w, case, {
                    k: M + step * en.ginibre(rng, dim) for k, M in ops.items()
                }) if ops else {}
                new_vecs = _vectors(w, case, {
                    k: x + step * en.ginibre(rng, dim, 1)[:, 0] for k, x in vecs.items()
                })
                cand = cat.Operands(w, new_ops, new_vecs, start.digest)
                s, r = _score(case, cand, label)
            except InvalidConfig:
                raise
            except (SemiHilbertError, ZeroDivisionError, FloatingPointError):
                step *= 0.904
                continue
            if s > score:
                score, rep, ops, vecs, cur = s, r, new_ops, new_vecs, cand
                step = min(step * 1.5, 1.0)
            else:
                # one-fifth success rule: 1.5 ** -0.25
                step *= 0.904
        if score > best[0]:
            best = (score, rep, cur)
    score, rep, cur = best
    if rep is None:
        raise SkippedHypothesis(f"{case.id}: no admissible operands found")
    return SearchResult(
        case.id, rep.label, float(score), it, restarts, rep.to_dict(), _bundle(cur),
    )
