#!/usr/bin/env python3
"""Regenerate the synthetic fixtures under data/ (output is deterministic)."""
import argparse
import math
import random
from pathlib import Path


def rs_decoder(rng, tasks=526, edges=789, window=40):
    lines = [f"# synthetic RS-decoder-scale graph: {tasks} tasks / {edges} edges"]
    lo, hi = math.log(4510), math.log(3461112)
    for t in range(tasks):
        lines.append(f"t {t} {round(math.exp(rng.uniform(lo, hi)))}")
    pairs = set()
    for dst in range(1, tasks):
        pairs.add((rng.randrange(max(0, dst - window), dst), dst))
    while len(pairs) < edges:
        dst = rng.randrange(1, tasks)
        pairs.add((rng.randrange(max(0, dst - window), dst), dst))
    for k, (s, d) in enumerate(sorted(pairs, key=lambda p: (p[1], p[0]))):
        lines.append(f"e {k} {s} {d} {rng.randint(1, 5)}")
    return "\n".join(lines) + "\n"


def bench_circuit(rng, qubits=5, gates=50, two_qubit_share=0.4):
    singles = ["h", "x", "t", "tdg", "s", "z"]
    lines = [f"# synthetic {gates}-gate circuit on {qubits} qubits", f"q {qubits}"]
    for g in range(gates):
        if rng.random() < two_qubit_share:
            a, b = rng.sample(range(qubits), 2)
            lines.append(f"g {g} cx {a} {b}")
        else:
            lines.append(f"g {g} {rng.choice(singles)} {rng.randrange(qubits)}")
    return "\n".join(lines) + "\n"


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Path(__file__).resolve().parent.parent / "data")
    ap.add_argument("--seed", type=int, default=20211)
    args = ap.parse_args()
    (args.out / "circuits").mkdir(parents=True, exist_ok=True)
    (args.out / "rs_decoder.tcg").write_text(rs_decoder(random.Random(args.seed)))
    (args.out / "circuits" / "bench50.qc").write_text(bench_circuit(random.Random(args.seed + 1)))


if __name__ == "__main__":
    main()
