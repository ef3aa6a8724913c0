"""Write a small set of input documents and show what ``cohiggs det``/``canon`` make of them.

    python3 scripts/sample_inputs.py --out samples/
"""
from __future__ import annotations

import argparse
import json
import random
from dataclasses import dataclass
from pathlib import Path

from cohiggs import generators as gen
from cohiggs.cli import main
from cohiggs.fields import CoHiggsK2, phi0_for_target
from cohiggs.serialize import field_to_wire, poly_to_wire, vector_to_wire


@dataclass
class SampleConfig:
    out: Path
    seed: int = 0
    run: bool = True


def documents(seed: int) -> dict:
    rng = random.Random(seed)
    q, c = gen.rand_form(rng, 2, nonzero=True), gen.rand_tm1(rng)
    docs = {
        "k0_sample.json": {"kind": "k0field", "lambda": [], "mu": [[[0, 0, 2], "1"]], "C": ["0", "0", "1"]},
        "k0_random.json": field_to_wire(gen.rand_k0(rng)),
        "k1_integrable.json": field_to_wire(gen.rand_k1_integrable(rng, shape="common")[0]),
        "k1_noncommuting.json": field_to_wire(gen.rand_k1_noncommuting(rng)),
        "k2_target.json": field_to_wire(CoHiggsK2(*phi0_for_target(q), c)),
        "kbig_random.json": field_to_wire(gen.rand_kbig(rng)),
        "pair.json": {"kind": "pair", "q": poly_to_wire(q.form.poly), "C": vector_to_wire(c.v)},
        "pair_scaled.json": {
            "kind": "pair",
            "q": poly_to_wire((q * 4).form.poly),
            "C": vector_to_wire((c / 2).v),
        },
    }
    return docs


def run(cfg: SampleConfig) -> int:
    cfg.out.mkdir(parents=True, exist_ok=True)
    for name, doc in documents(cfg.seed).items():
        path = cfg.out / name
        path.write_text(json.dumps(doc, indent=1) + "\n")
        if not cfg.run:
            continue
        cmd = "canon" if name.startswith("pair") else "det"
        print(f"$ cohiggs {cmd} --input {path}")
        code = main([cmd, "--input", str(path)])
        print(f"(exit {code})\n")
    return 0


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--out", type=Path, default=Path("samples"))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-run", action="store_true")
    a = p.parse_args()
    raise SystemExit(run(SampleConfig(a.out, a.seed, not a.no_run)))
