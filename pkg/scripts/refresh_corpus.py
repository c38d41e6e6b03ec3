#!/usr/bin/env python3
"""Regenerate the regression corpus and its baseline ceilings.

Writes the seeded hyperbola family files and corpus/baselines.json from a
fresh run of the current implementation.  Baselines are measurement
artifacts of this code base: refresh them only when an intentional change
shifts the stored ratios, and commit the result.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from mobinc.energy import energy_report
from mobinc.field import FieldContext
from mobinc.generators import derive_seed, generate_instance
from mobinc.io import load_config
from mobinc.sweep import SweepConfig, sweep

CORPUS = ROOT / "corpus"
FAMILIES = CORPUS / "families"
FAMILY_SEED = 20250811

SWEEP_CONFIGS = ("thm1_rich.cfg", "thm2_rich.cfg", "thm4_hyperbola.cfg")


def write_families() -> list[Path]:
    FAMILIES.mkdir(parents=True, exist_ok=True)
    paths = []
    for p in (7, 11, 13):
        ctx = FieldContext(p)
        grid = generate_instance(
            "hyperbola-grid", {"na": 3, "nb": 3}, derive_seed(FAMILY_SEED, p, "grid"), ctx
        ).hyperbolas
        rand = generate_instance(
            "random-hyperbolas", {"nh": 8}, derive_seed(FAMILY_SEED, p, "rand"), ctx
        ).hyperbolas
        for tag, family in (("grid", grid), ("random", rand)):
            path = FAMILIES / f"p{p}_{tag}.txt"
            lines = [f"# seeded translate family, p={p}, kind={tag}"]
            lines += [f"{h.a},{h.b},{h.eps}" for h in family]
            path.write_text("\n".join(lines) + "\n", encoding="utf-8")
            paths.append(path)
    return paths


def family_modulus(path: Path) -> int:
    return int(path.name.split("_")[0][1:])


def main() -> int:
    family_paths = write_families()

    sweep_max: dict[str, float] = {}
    for name in SWEEP_CONFIGS:
        config = SweepConfig.from_mapping(load_config(CORPUS / name))
        for row in sweep(config):
            bound = row["bound"]
            sweep_max[bound] = max(sweep_max.get(bound, 0.0), row["ratio"])

    from mobinc.io import load_hyperbolas

    energy_max = 0.0
    for path in family_paths:
        ctx = FieldContext(family_modulus(path))
        report = energy_report(load_hyperbolas(path, ctx), ctx)
        energy_max = max(energy_max, report["ratio"])

    baselines = {
        "sweep_max_ratio": dict(sorted(sweep_max.items())),
        "hyperbola_energy_max_ratio": energy_max,
    }
    out = CORPUS / "baselines.json"
    out.write_text(json.dumps(baselines, indent=2) + "\n", encoding="utf-8")
    print(json.dumps(baselines, indent=2))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
