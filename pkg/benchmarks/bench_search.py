"""Compare the compiled and pure-Python search kernels.

    python benchmarks/bench_search.py [--vars 60] [--instances 20] [--seed 0]

Instances are random 3-CNF at clause/variable ratio 4.26, plus the same
instances with a pairwise theory attached so the lemma path is exercised.
Both backends must return identical results; the script exits non-zero if
they don't.
"""

from __future__ import annotations

import argparse
import random
import statistics
import sys
import time

from noaverify.search import backends, search


def random_3cnf(rng: random.Random, n: int, ratio: float = 4.26) -> list[list[int]]:
    clauses = []
    for _ in range(int(n * ratio)):
        picked = rng.sample(range(1, n + 1), 3)
        clauses.append([v if rng.random() < 0.5 else -v for v in picked])
    return clauses


def pair_theory(pairs):
    def theory(lits):
        pos = {l for l in lits if l > 0}
        for a, b in pairs:
            if a in pos and b in pos:
                return [-a, -b]
        return None
    return theory


def time_backend(name, problems, repeat):
    runs, results = [], []
    for _ in range(repeat):
        start = time.perf_counter()
        results = [search(n, cl, range(1, n + 1), tv, th, backend=name) for n, cl, tv, th in problems]
        runs.append(time.perf_counter() - start)
    return min(runs), results


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--vars", type=int, default=60)
    ap.add_argument("--instances", type=int, default=20)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    available = backends()
    if "compiled" not in available:
        print("compiled kernel not built; run `python setup.py build_ext --inplace`", file=sys.stderr)
    rng = random.Random(args.seed)
    plain = [(args.vars, random_3cnf(rng, args.vars), (), None) for _ in range(args.instances)]
    tvars = list(range(1, args.vars // 3 + 1))
    with_theory = [(n, cl, tvars, pair_theory([tuple(rng.sample(tvars, 2)) for _ in range(8)]))
                   for n, cl, _, _ in plain]

    ok = True
    for label, problems in (("plain", plain), ("theory", with_theory)):
        timings, outputs = {}, {}
        for name in sorted(available):
            timings[name], outputs[name] = time_backend(name, problems, args.repeat)
        sat = sum(r[0] for r in outputs["python"])
        agree = all(outputs[n] == outputs["python"] for n in outputs)
        ok &= agree
        line = f"{label:<7} {len(problems)} instances, {sat} SAT, backends agree: {agree}"
        for name in sorted(timings):
            line += f"  {name}={timings[name] * 1000:.1f}ms"
        if "compiled" in timings:
            line += f"  speedup={timings['python'] / timings['compiled']:.1f}x"
        print(line)
    per_case = [time_backend("python", [p], 1)[0] for p in plain[:5]]
    print(f"median python time per plain instance: {statistics.median(per_case) * 1000:.2f}ms")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
