"""Dispatch table mapping check names to runs that produce IdentityReports."""

from __future__ import annotations

import time
import traceback
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional

from . import numeric
from .algebra import Poly
from .config import RunConfig
from .identities import (
    cubic_i_sides,
    cubic_ii_sides,
    diff_fay_residual,
    generate_product_identity,
    lemma22_residual,
    seventh_order_sides,
    verify_identity,
)
from .reference import MIN_SEVENTH_TERMS_TAU3, SEVENTH_TYPO_NOTE, reference
from .report import ERROR, FAIL, PASS, IdentityReport
from .tau import TauPoly, fay_residual, staircase_tau
from .waves import faddeev_takhtajan_check, lemma23_residual, sturm_liouville_residual

EXACT_CHECKS = (
    "fay", "diff-fay", "lemma22", "cubic-i", "cubic-ii", "seventh",
    "generated", "lemma23", "sturm", "ft",
)
NUMERIC_CHECKS = ("theta-fay", "theta-cubic", "theta-degenerate", "sine")
ALL_CHECKS = EXACT_CHECKS + NUMERIC_CHECKS

DEFAULT_TOLERANCE = {
    "sine": 1e-11,
    "theta-fay": 1e-9,
    "theta-cubic": 1e-8,
    "theta-degenerate": 1e-8,
}

SHOW_SIDES_MAX_TERMS = 12


@dataclass(frozen=True)
class TauSource:
    label: str
    k: Optional[int] = None
    text: Optional[str] = None

    @classmethod
    def staircase(cls, k: int) -> "TauSource":
        return cls(f"staircase-{k}", k=k)

    @classmethod
    def from_file(cls, path: str) -> "TauSource":
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            return cls(path, text=f"\x00unreadable: {exc}")
        return cls(path, text=text)

    def resolve(self) -> TauPoly:
        if self.k is not None:
            return staircase_tau(self.k)
        if self.text is None or self.text.startswith("\x00"):
            raise ValueError((self.text or "\x00no tau given")[1:])
        return TauPoly.deserialize(self.text)


def _rpc(residual: Poly, cfg: RunConfig) -> str:
    r = numeric.random_point_check(residual, seed=cfg.seed, trials=cfg.trials)
    return "probably-zero" if r.probably_zero else "nonzero"


def _exact(check, src, residual: Poly, cfg, start, params=None, sides=None, details=None):
    details = dict(details or {})
    details["random_check"] = _rpc(residual, cfg)
    rep = IdentityReport(
        check=check,
        tau=src.label,
        status=PASS if residual.is_zero() else FAIL,
        parameters=params or {},
        residual_terms=residual.term_count(),
        side_terms=[s.term_count() for s in sides] if sides else [],
        seed=cfg.seed,
        details=details,
    )
    if sides and all(s.term_count() <= SHOW_SIDES_MAX_TERMS for s in sides):
        rep.details["sides"] = [str(s) for s in sides]
    rep.elapsed_ms = (time.perf_counter() - start) * 1000.0
    return rep


def _run_fay(src, tau, cfg):
    t = time.perf_counter()
    return [_exact("fay", src, fay_residual(tau), cfg, t)]


def _run_diff_fay(src, tau, cfg):
    t = time.perf_counter()
    return [_exact("diff-fay", src, diff_fay_residual(tau), cfg, t)]


def _run_lemma22(src, tau, cfg):
    out = []
    for v in range(1, 9):
        t = time.perf_counter()
        out.append(_exact("lemma22", src, lemma22_residual(tau, v), cfg, t, {"variant": v}))
    return out


def _with_reference(rep, check, tau, sides):
    k = tau.staircase_index
    ref = reference(check, k) if k is not None else None
    if ref is not None:
        rep.details["reference_match"] = sides.lhs == ref and sides.rhs == ref
        if not rep.details["reference_match"]:
            rep.status = FAIL
    return rep


def _run_cubic_i(src, tau, cfg):
    t = time.perf_counter()
    s = cubic_i_sides(tau)
    return [_with_reference(_exact("cubic-i", src, s.residual, cfg, t, sides=(s.lhs, s.rhs)), "cubic-i", tau, s)]


def _run_cubic_ii(src, tau, cfg):
    t = time.perf_counter()
    s = cubic_ii_sides(tau)
    return [_with_reference(_exact("cubic-ii", src, s.residual, cfg, t, sides=(s.lhs, s.rhs)), "cubic-ii", tau, s)]


def _run_seventh(src, tau, cfg):
    t = time.perf_counter()
    s = seventh_order_sides(tau)
    rep = _exact("seventh", src, s.residual, cfg, t, sides=(s.lhs, s.rhs))
    rep = _with_reference(rep, "seventh", tau, s)
    if tau.staircase_index == 1:
        rep.notes.append(SEVENTH_TYPO_NOTE)
    if tau.staircase_index == 2:
        many = min(s.term_counts) > MIN_SEVENTH_TERMS_TAU3
        rep.details["more_than_250_terms"] = many
        if not many:
            rep.status = FAIL
    return [rep]


def _run_generated(src, tau, cfg):
    out = []
    k = tau.staircase_index
    for n in cfg.orders:
        if n >= 4 and (k is None or k > cfg.heavy_max_k):
            continue
        names = [f"z{i + 1}" for i in range(2 ** (n - 1))]
        rep = verify_identity(generate_product_identity(n, limit=max(cfg.orders)), tau, names,
                              tau_label=src.label)
        rep.parameters = {"n": n}
        rep.seed = cfg.seed
        out.append(rep)
    return out


def _run_lemma23(src, tau, cfg):
    out = []
    for v in ("i", "ii", "iii", "iv"):
        rep = lemma23_residual(tau, v)
        rep.tau = src.label
        rep.parameters = {"variant": v}
        rep.seed = cfg.seed
        out.append(rep)
    return out


def _run_sturm(src, tau, cfg):
    out = []
    for star in (False, True):
        t = time.perf_counter()
        out.append(_exact("sturm", src, sturm_liouville_residual(tau, 1, star), cfg, t,
                          {"wave": "psi*" if star else "psi"}))
    return out


def _run_ft(src, tau, cfg):
    rep = faddeev_takhtajan_check(tau)
    rep.tau = src.label
    rep.seed = cfg.seed
    return [rep]


def _tol(check, cfg):
    return cfg.tolerance if cfg.tolerance is not None else DEFAULT_TOLERANCE[check]


def _numeric(check, cfg, sweep, label):
    t = time.perf_counter()
    rep = sweep.report(_tol(check, cfg), cfg.seed, label=label, q=list(cfg.q),
                       convention=cfg.convention)
    rep.elapsed_ms = (time.perf_counter() - t) * 1000.0
    return [rep]


def _run_theta_fay(cfg):
    return _numeric("theta-fay", cfg, numeric.sweep_theta_fay(cfg.q, cfg.theta_points, cfg.seed, cfg.convention), "numeric")


def _run_theta_cubic(cfg):
    return _numeric("theta-cubic", cfg, numeric.sweep_theta_cubic(cfg.q, cfg.theta_points, cfg.seed, cfg.convention), "conjecture-check")


def _run_theta_degenerate(cfg):
    return _numeric("theta-degenerate", cfg, numeric.sweep_theta_degenerate(cfg.q, cfg.theta_points, cfg.seed, cfg.convention), "conjecture-check")


def _run_sine(cfg):
    rep = _numeric("sine", cfg, numeric.sweep_sine(cfg.sine_points, cfg.seed), "numeric")
    rep[0].parameters = {}
    return rep


EXACT_RUNNERS: dict[str, Callable] = {
    "fay": _run_fay,
    "diff-fay": _run_diff_fay,
    "lemma22": _run_lemma22,
    "cubic-i": _run_cubic_i,
    "cubic-ii": _run_cubic_ii,
    "seventh": _run_seventh,
    "generated": _run_generated,
    "lemma23": _run_lemma23,
    "sturm": _run_sturm,
    "ft": _run_ft,
}

NUMERIC_RUNNERS: dict[str, Callable] = {
    "theta-fay": _run_theta_fay,
    "theta-cubic": _run_theta_cubic,
    "theta-degenerate": _run_theta_degenerate,
    "sine": _run_sine,
}


def run_task(task) -> list[IdentityReport]:
    """Run one (check, tau source or None, config) task; failures become error entries."""
    check, src, cfg = task
    label = src.label if src is not None else "-"
    start = time.perf_counter()
    try:
        if check in NUMERIC_RUNNERS:
            return NUMERIC_RUNNERS[check](cfg)
        tau = src.resolve()
        return EXACT_RUNNERS[check](src, tau, cfg)
    except Exception as exc:  # reported, not raised: one bad entry must not sink the run
        return [IdentityReport(
            check=check, tau=label, status=ERROR, seed=cfg.seed,
            message=f"{type(exc).__name__}: {exc}",
            details={"traceback": traceback.format_exc(limit=3)},
            elapsed_ms=(time.perf_counter() - start) * 1000.0,
        )]


def run_tasks(tasks, jobs: int = 1) -> list[IdentityReport]:
    """Run tasks, possibly in worker processes; output order never depends on completion order."""
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run_task, tasks))
    else:
        results = [run_task(t) for t in tasks]
    reports = [r for batch in results for r in batch]
    reports.sort(key=lambda r: r.sort_key())
    return reports


def suite_tasks(cfg: RunConfig, extra: tuple[TauSource, ...] = ()):
    sources = [TauSource.staircase(k) for k in range(1, cfg.max_k + 1)] + list(extra)
    tasks = [(c, s, cfg) for c in EXACT_CHECKS for s in sources]
    tasks += [(c, None, cfg) for c in NUMERIC_CHECKS]
    return tasks
