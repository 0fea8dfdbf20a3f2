"""Score the DNA example under (+2, -1, -2) in both run modes and check against the DP."""

import argparse

from scored_ap import (
    OverlayConfig,
    RunMode,
    ScoreModel,
    best_global,
    best_streaming,
    compile_pattern,
    glocal,
    max_fanout,
    new_engine,
    nw_global,
    place,
)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--pattern", default="AGC")
    ap.add_argument("inputs", nargs="*", default=["AGC", "AGATG"])
    args = ap.parse_args()

    model = ScoreModel(2, -1, -2)
    nfa = compile_pattern(args.pattern.encode(), model)
    p = place([nfa], OverlayConfig(array_size=1024))
    print(f"pattern {args.pattern}: {len(nfa)} states, max fan-out {max_fanout(nfa)}, {nfa.edge_count} wires")
    print(f"{'input':<12}{'global':>8}{'nw':>6}{'stream':>8}{'glocal':>8}")
    for s in args.inputs:
        data = s.encode()
        g = best_global(new_engine(p, RunMode.GLOBAL).run(data), len(data), nfa)
        st = best_streaming(new_engine(p, RunMode.STREAMING).run(data), nfa) if data else None
        gl = glocal(nfa.pattern, data, model) if data else None
        print(f"{s:<12}{g:>8}{nw_global(nfa.pattern, data, model):>6}{st!s:>8}{gl!s:>8}")


if __name__ == "__main__":
    main()
