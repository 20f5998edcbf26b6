"""Staged coloring strategy.

Stages, first success wins:

1. ``corollary-map``: a 3-edge-coloring mapped to (1,0), (1,1), (2,1).
2. ``theta-fast-path``: a 2-factor with two odd cycles and a maximum
   matching whose main component is a theta graph.
3. ``odd-incidence+correction``: maximum matchings derived from the
   odd-cycle incidence graph, repaired if some loop is 3-odd.
4. ``exhaustive-characterization``: full witness search.
5. ``oracle-only``: plain backtracking.

Every coloring is verified before it is reported.
"""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field
from typing import Any, Callable

from . import oracle
from .coloring import Certificate, EdgeColoring, Witness, construct, extract, from_3_edge_coloring, make_certificate, verify
from .correction import correct_and_color
from .errors import BudgetExhausted, ClaimViolated, MalformedStructure, NoPerfectMatching, NormalizationFailed, NotAnMPath
from .factor import TwoFactor, default_pm_limit, enumerate_perfect_matchings, two_factor
from .graph import CubicGraph
from .graph6 import to_graph6
from .odd_incidence import build_k_odd, even_matchings, iter_derived_matchings
from .structures import MainComponent, classify_main_component, f_complement, find_f_matching, iter_maximum_matchings, reduce

STAGES = (
    "corollary-map",
    "theta-fast-path",
    "odd-incidence+correction",
    "exhaustive-characterization",
    "oracle-only",
)


@dataclass
class PipelineConfig:
    pm_limit: int | None = None  # None: full enumeration up to 30 vertices
    search_nodes: int = oracle.DEFAULT_CHARACTERIZATION_NODES
    oracle_nodes: int = oracle.DEFAULT_ORACLE_NODES
    max_matchings: int = 5000  # per 2-factor, stages 2 and 3
    even_limit: int = 64  # m_even combinations per 2-factor
    stages: tuple[str, ...] = STAGES
    diagnostics: Callable[[dict[str, Any]], None] | None = None


@dataclass
class StageOutcome:
    stage: str
    outcome: str  # success | failed | budget | skipped
    seconds: float
    detail: dict[str, Any] = field(default_factory=dict)


@dataclass
class PipelineReport:
    id: str
    n: int
    verdict: str = "unknown"  # colorable | not-colorable | unknown
    stage: str | None = None
    certificate: Certificate | None = None
    stages: list[StageOutcome] = field(default_factory=list)
    budgets_hit: list[str] = field(default_factory=list)
    correction_runs: list[dict[str, Any]] = field(default_factory=list)
    certificate_path: str | None = None
    seconds: float = 0.0

    def to_dict(self, timings: bool = True) -> dict[str, Any]:
        d: dict[str, Any] = {
            "id": self.id,
            "n": self.n,
            "verdict": self.verdict,
            "stage": self.stage,
            "stages": [
                {k: v for k, v in asdict(s).items() if timings or k != "seconds"} for s in self.stages
            ],
            "budgets_hit": list(self.budgets_hit),
            "certificate_path": self.certificate_path,
            "certificate_verdicts": None if self.certificate is None else self.certificate.verdicts,
        }
        if timings:
            d["seconds"] = round(self.seconds, 6)
        return d

    def to_json(self, timings: bool = True) -> str:
        return json.dumps(self.to_dict(timings), sort_keys=True)


def candidate_factors(g: CubicGraph, pm_limit: int | None) -> list[TwoFactor]:
    """2-factors ordered by (odd cycles, cycles), ties by matching order."""
    limit = default_pm_limit(g) if pm_limit is None else pm_limit
    fs = [two_factor(g, pm) for pm in enumerate_perfect_matchings(g, limit)]
    return sorted(fs, key=lambda f: (f.odd_count, len(f.cycles)))


def _emit(cfg: PipelineConfig, rec: dict[str, Any]) -> None:
    if cfg.diagnostics is not None:
        cfg.diagnostics(rec)


def _certify(c: EdgeColoring, w: Witness | None, stage: str, **notes: Any) -> Certificate:
    if not verify(c).ok:
        raise AssertionError(f"{stage} produced an invalid coloring")
    if w is None:
        w = extract(c)
    return make_certificate(c, w, stage, **notes)


def stage_corollary(g: CubicGraph, cfg: PipelineConfig, rep: PipelineReport) -> Certificate | None:
    col = oracle.three_edge_coloring(g.n, g.edges, cfg.oracle_nodes)
    if col is None:
        return None
    return _certify(from_3_edge_coloring(g, col), None, "corollary-map")


def stage_theta(g: CubicGraph, fs: list[TwoFactor], cfg: PipelineConfig,
                rep: PipelineReport) -> Certificate | None:
    for f in fs:
        if f.odd_count != 2:
            continue
        for k, m in enumerate(iter_maximum_matchings(f)):
            if k >= cfg.max_matchings:
                rep.budgets_hit.append("theta: max matchings")
                break
            h = reduce(g, f, m)
            if classify_main_component(h) is not MainComponent.THETA:
                continue
            fm = find_f_matching(h)
            if fm is None:
                # impossible for a theta component; recorded, not trusted
                _emit(cfg, {"stage": "theta-fast-path", "event": "no-f-path", "factor": f.cycles})
                continue
            fc = f_complement(h, fm)
            if not fc.three_even:
                _emit(cfg, {"stage": "theta-fast-path", "event": "not-3-even", "factor": f.cycles})
                continue
            c = construct(g, f, m, fm, fc)
            return _certify(c, Witness(f, m, fm, fc), "theta-fast-path", odd_cycles=2,
                            cycles=len(f.cycles))
    return None


def stage_odd_incidence(g: CubicGraph, fs: list[TwoFactor], cfg: PipelineConfig,
                        rep: PipelineReport) -> Certificate | None:
    for fi, f in enumerate(fs):
        if f.odd_count == 0:
            continue
        tried = 0
        for ei, m_even in enumerate(even_matchings(f)):
            if ei >= cfg.even_limit:
                rep.budgets_hit.append("odd-incidence: m_even combinations")
                break
            k = build_k_odd(g, f, m_even)
            for d in iter_derived_matchings(g, f, m_even, k):
                tried += 1
                if tried > cfg.max_matchings:
                    break
                h = reduce(g, f, d.matching)
                fc = f_complement(h, d.f_matching)
                rec: dict[str, Any] = {
                    "stage": "odd-incidence+correction", "factor": fi, "m_even": ei,
                    "three_odd_loops": len(fc.three_odd_loops),
                }
                if fc.three_even:
                    c = construct(g, f, d.matching, d.f_matching, fc)
                    rec["result"] = "3-even"
                    _emit(cfg, rec)
                    return _certify(c, Witness(f, d.matching, d.f_matching, fc),
                                    "odd-incidence+correction", corrected=False)
                try:
                    cr = correct_and_color(g, f, d.matching, d.f_matching, fc)
                except (ClaimViolated, NormalizationFailed, NotAnMPath, MalformedStructure) as exc:
                    rec["result"] = f"aborted: {exc}"
                    rec["claims"] = {}
                    rep.correction_runs.append(rec)
                    _emit(cfg, rec)
                    continue
                rec["result"] = "colored" if cr.ok else "infeasible"
                rec["claims"] = dict(cr.claims)
                rep.correction_runs.append(rec)
                _emit(cfg, rec)
                if cr.ok:
                    assert cr.certificate is not None
                    cr.certificate.stage = "odd-incidence+correction"
                    cr.certificate.notes["corrected"] = True
                    return cr.certificate
            if tried > cfg.max_matchings:
                rep.budgets_hit.append("odd-incidence: derived matchings")
                break
    return None


def stage_characterization(g: CubicGraph, cfg: PipelineConfig, rep: PipelineReport) -> Certificate | None:
    w = oracle.characterization_search(g, cfg.search_nodes, cfg.pm_limit)
    if w is None:
        return None
    return _certify(construct(g, *w), w, "exhaustive-characterization")


def stage_oracle(g: CubicGraph, cfg: PipelineConfig, rep: PipelineReport) -> Certificate | None:
    v = oracle.brute_force_z4z2(g, max_nodes=cfg.oracle_nodes)
    if not v.colorable:
        rep.verdict = "not-colorable"
        return None
    return _certify(v.witness, None, "oracle-only")


def run_pipeline(g: CubicGraph, cfg: PipelineConfig | None = None, gid: str | None = None) -> PipelineReport:
    cfg = cfg or PipelineConfig()
    rep = PipelineReport(gid if gid is not None else to_graph6(g), g.n)
    t_all = time.perf_counter()
    try:
        fs = candidate_factors(g, cfg.pm_limit)
    except NoPerfectMatching:
        fs = []
    runners = {
        "corollary-map": lambda: stage_corollary(g, cfg, rep),
        "theta-fast-path": lambda: stage_theta(g, fs, cfg, rep),
        "odd-incidence+correction": lambda: stage_odd_incidence(g, fs, cfg, rep),
        "exhaustive-characterization": lambda: stage_characterization(g, cfg, rep),
        "oracle-only": lambda: stage_oracle(g, cfg, rep),
    }
    for name in STAGES:
        if name not in cfg.stages:
            rep.stages.append(StageOutcome(name, "skipped", 0.0))
            continue
        t0 = time.perf_counter()
        try:
            cert = runners[name]()
        except BudgetExhausted as exc:
            rep.budgets_hit.append(str(exc))
            rep.stages.append(StageOutcome(name, "budget", time.perf_counter() - t0, {"error": str(exc)}))
            continue
        dt = time.perf_counter() - t0
        if cert is None:
            rep.stages.append(StageOutcome(name, "failed", dt))
            if rep.verdict == "not-colorable":
                break
            continue
        rep.stages.append(StageOutcome(name, "success", dt))
        rep.certificate, rep.stage, rep.verdict = cert, name, "colorable"
        break
    if rep.verdict == "unknown" and "exhaustive-characterization" in cfg.stages:
        ex = [s for s in rep.stages if s.stage == "exhaustive-characterization"]
        full = cfg.pm_limit is None and default_pm_limit(g) is None
        if ex and ex[0].outcome == "failed" and full:
            rep.verdict = "not-colorable"
    rep.seconds = time.perf_counter() - t_all
    return rep
