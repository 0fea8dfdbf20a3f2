"""Pack random DNA patterns into arrays from 1K to 64K slots and time the engine.

Mirrors the array-size sweep of the hardware evaluation, in software: for
each size the array is filled to roughly ``--fill`` occupancy and a random
input is streamed through it. Reported throughput is input bytes per
second of engine time only.
"""

import argparse
import csv
import random
import sys

from scored_ap import CompileOptions, OverlayConfig, RunMode, compile_pattern, place, throughput_bench


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", type=int, nargs="+", default=[1024, 2048, 4096, 8192, 16384, 32768, 65536])
    ap.add_argument("--pattern-length", type=int, default=8)
    ap.add_argument("--dmax", type=int, default=None, help="deletion band; default full")
    ap.add_argument("--fill", type=float, default=0.95)
    ap.add_argument("--input-bytes", type=int, default=20_000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    opts = CompileOptions() if args.dmax is None else CompileOptions(d_max=args.dmax)
    data = bytes(rng.choices(b"ACGT", k=args.input_bytes))
    out = csv.writer(sys.stdout)
    out.writerow(["array_size", "patterns", "states", "utilization", "wires", "max_fanout", "symbols_per_sec"])
    for size in args.sizes:
        per = 3 * args.pattern_length + 1
        n = max(1, int(size * args.fill) // per)
        automata = [
            compile_pattern(bytes(rng.choices(b"ACGT", k=args.pattern_length)), opts=opts, pattern_id=k)
            for k in range(n)
        ]
        p = place(automata, OverlayConfig(array_size=size))
        b = throughput_bench(p, data, RunMode.STREAMING)
        s = p.stats
        out.writerow([size, n, s.states_used, f"{s.utilization:.3f}", s.total_wires,
                      s.max_fanout_observed, f"{b.symbols_per_sec:.0f}"])


if __name__ == "__main__":
    main()
