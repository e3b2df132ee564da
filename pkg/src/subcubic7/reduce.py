"""Reducibility verification for catalog configurations.

A configuration is reducible when every proper coloring of its white
vertices extends to the black vertices in the squared, augmented graph J.
Verification first tries the configuration with dash-dotted edges; if a
non-extendable white precoloring shows up, it retries with dashed edge
subsets in deterministic order.  The returned record keeps the attempt
history so a run is auditable.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .configs import augmentation_plan, build_configuration, build_J
from .engine import ALL_EXTENDABLE, verify_all


@dataclass
class Attempt:
    dashed: tuple
    dashdot_count: int
    result: object

    def label(self):
        if self.dashed:
            return "dashed=" + ",".join(f"{u}-{v}" for u, v in self.dashed)
        return f"dashdot={self.dashdot_count}"


@dataclass
class ReductionRecord:
    name: str
    reducible: bool
    attempts: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def winning(self):
        return self.attempts[-1] if self.reducible else None

    @property
    def precolorings(self):
        return sum(a.result.precolorings for a in self.attempts)

    @property
    def nodes(self):
        return sum(a.result.nodes for a in self.attempts)

    def report(self):
        verdict = "REDUCIBLE" if self.reducible else "NOT-REDUCED"
        lines = [f"{self.name}\t{verdict}\tattempts={len(self.attempts)}"
                 f"\tprecolorings={self.precolorings}\tnodes={self.nodes}"
                 f"\tseconds={self.seconds:.2f}"]
        for a in self.attempts:
            status = "ok" if a.result.verdict == ALL_EXTENDABLE else "fail"
            line = (f"  {a.label()}\t{status}"
                    f"\tprecolorings={a.result.precolorings}"
                    f"\tnodes={a.result.nodes}")
            if a.result.counterexample is not None:
                line += "\tcex=" + ",".join(map(str, a.result.counterexample))
            lines.append(line)
        return "\n".join(lines)


def verify_configuration(spec, k=7, jobs=1, root_depth=0, use_fast=True):
    """Prove one configuration reducible; returns a ReductionRecord."""
    cfg = build_configuration(spec) if not hasattr(spec, "graph") else spec
    rec = ReductionRecord(name=cfg.spec.name(), reducible=False)
    t0 = time.monotonic()
    for variant in augmentation_plan(cfg):
        problem = build_J(variant, k=k)
        result = verify_all(problem, jobs=jobs, root_depth=root_depth,
                            use_fast=use_fast)
        rec.attempts.append(Attempt(dashed=variant.dashed,
                                    dashdot_count=len(variant.dashdot),
                                    result=result))
        if result.verdict == ALL_EXTENDABLE:
            rec.reducible = True
            break
    rec.seconds = time.monotonic() - t0
    return rec
